// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>

#include "crnlab/chain_network.hpp"
#include "crnlab/trajectory.hpp"

using namespace crnlab;
namespace fs = std::filesystem;

namespace {

Trajectory small_path() {
  Trajectory tr({1, 0}, 0.0);
  const State a{1, 0}, b{-1, 1}, c{0, -1};
  tr.push(0.5, 0, a);  // (2,0)
  tr.push(1.0, 2, b);  // (1,1)
  tr.push(2.5, 3, c);  // (1,0)
  tr.set_t_end(4.0);
  return tr;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "crnlab-tests";
  fs::create_directories(dir);
  return dir / name;
}

void expect_same(const Trajectory& a, const Trajectory& b) {
  ASSERT_EQ(a.initial(), b.initial());
  ASSERT_EQ(a.size(), b.size());
  EXPECT_DOUBLE_EQ(a.t_start(), b.t_start());
  EXPECT_DOUBLE_EQ(a.t_end(), b.t_end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.event(i).t, b.event(i).t);
    EXPECT_EQ(a.event(i).channel, b.event(i).channel);
    const auto da = a.delta(i), db = b.delta(i);
    for (std::size_t k = 0; k < a.dim(); ++k) EXPECT_EQ(da[k], db[k]);
  }
}

}  // namespace

TEST(Trajectory, StateAtIsRightContinuous) {
  const auto tr = small_path();
  EXPECT_EQ(tr.state_at(0.0), (State{1, 0}));
  EXPECT_EQ(tr.state_at(0.49), (State{1, 0}));
  EXPECT_EQ(tr.state_at(0.5), (State{2, 0}));
  EXPECT_EQ(tr.state_at(1.7), (State{1, 1}));
  EXPECT_EQ(tr.state_at(3.9), (State{1, 0}));
  EXPECT_EQ(tr.final_state(), (State{1, 0}));
}

TEST(Trajectory, CoordAtMatchesStateAt) {
  const auto tr = small_path();
  const std::vector<double> ts{0.0, 0.5, 0.7, 1.0, 2.0, 2.5, 3.99};
  const auto c0 = tr.coord_at(0, ts), c1 = tr.coord_at(1, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_EQ(c0[i], tr.state_at(ts[i])[0]);
    EXPECT_EQ(c1[i], tr.state_at(ts[i])[1]);
  }
}

TEST(Trajectory, TimeIntegralAndSegments) {
  const auto tr = small_path();
  // x1: 1 on [0,.5), 2 on [.5,1), 1 on [1,4) -> 0.5 + 1 + 3
  EXPECT_DOUBLE_EQ(tr.time_integral(0), 4.5);
  EXPECT_DOUBLE_EQ(tr.time_integral(1), 1.5);
  double covered = 0.0;
  int pieces = 0;
  tr.for_each_segment([&](double a, double b, const State&) {
    covered += b - a;
    ++pieces;
  });
  EXPECT_DOUBLE_EQ(covered, 4.0);
  EXPECT_EQ(pieces, 4);
}

TEST(Trajectory, ValidateCatchesBadPaths) {
  EXPECT_NO_THROW(small_path().validate());

  Trajectory neg({0, 0}, 0.0);
  const State d{-1, 0};
  neg.push(1.0, 0, d);
  neg.set_t_end(2.0);
  EXPECT_THROW(neg.validate(), std::logic_error);

  Trajectory order({1, 1}, 0.0);
  const State e{1, 0};
  order.push(1.0, 0, e);
  order.push(1.0, 0, e);
  order.set_t_end(2.0);
  EXPECT_THROW(order.validate(), std::logic_error);

  Trajectory late({1, 1}, 0.0);
  late.push(3.0, 0, e);
  late.set_t_end(2.0);
  EXPECT_THROW(late.validate(), std::logic_error);
}

TEST(Trajectory, RecorderEnforcesEventCap) {
  ChainNetwork net(3, {5.0, 1.0, 1.0, 1.0, 1.0});
  RngStream rng(1, 0);
  TrajectoryRecorder rec(10);
  EXPECT_THROW(simulate_ssa(net, {0, 0, 0}, 100.0, rng, rec), std::length_error);
}

TEST(Trajectory, CsvRoundTrip) {
  ChainNetwork net(4, {3.0, 1.0, 0.5, 0.2, 0.1, 1.0});
  RngStream rng(11, 0);
  const auto tr = simulate_ssa(net, {0, 4, 0, 2}, 5.0, rng);
  ASSERT_GT(tr.size(), 10u);
  const auto p = scratch("roundtrip.csv");
  write_trajectory_csv(tr, p);
  expect_same(tr, read_csv_trajectory(p));
}

TEST(Trajectory, BinaryRoundTripViaReplay) {
  ChainNetwork net(4, {3.0, 1.0, 0.5, 0.2, 0.1, 1.0});
  RngStream rng(12, 0);
  const auto tr = simulate_ssa(net, {2, 0, 1, 0}, 5.0, rng);
  const auto p = scratch("roundtrip.bin");
  {
    BinaryTrajectorySink sink(p);
    replay(tr, sink);
  }
  expect_same(tr, read_binary_trajectory(p));
}

TEST(Trajectory, StreamingSinkMatchesRecorder) {
  ChainNetwork net(3, {2.0, 1.0, 1.0, 1.0, 1.0});
  const auto p = scratch("stream.csv");
  RngStream r1(5, 3), r2(5, 3);
  const auto tr = simulate_ssa(net, {0, 0, 0}, 10.0, r1);
  {
    CsvTrajectorySink sink(p);
    simulate_ssa(net, {0, 0, 0}, 10.0, r2, sink);
  }
  expect_same(tr, read_csv_trajectory(p));
}

TEST(Trajectory, BinaryReaderRejectsGarbage) {
  const auto p = scratch("garbage.bin");
  {
    std::ofstream f(p, std::ios::binary);
    f << "NOTATRAJECTORY";
  }
  EXPECT_ANY_THROW(read_binary_trajectory(p));
}
