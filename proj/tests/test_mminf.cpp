// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "crnlab/mm_infinity.hpp"
#include "crnlab/special_functions.hpp"

using namespace crnlab;

namespace {

// Pearson statistic of integer samples against Pois(rho), cells merged from
// the left until the expected count reaches 5, last cell is the tail.
struct PoissonChi2 {
  double stat = 0.0;
  int dof = 0;
};

PoissonChi2 poisson_chi2(const std::vector<std::int64_t>& xs, double rho) {
  const double n = static_cast<double>(xs.size());
  std::int64_t top = 0;
  for (auto x : xs) top = std::max(top, x);
  std::vector<double> obs(static_cast<std::size_t>(top) + 1, 0.0);
  for (auto x : xs) obs[static_cast<std::size_t>(x)] += 1.0;

  std::vector<double> o_cells, e_cells;
  double o = 0.0, e = 0.0, cdf = 0.0;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(top) || e > 0.0; ++k) {
    const double pk = std::exp(-rho + static_cast<double>(k) * std::log(rho) - std::lgamma(static_cast<double>(k) + 1.0));
    const double rest = 1.0 - cdf - pk;
    o += k < obs.size() ? obs[k] : 0.0;
    e += n * pk;
    cdf += pk;
    if (e >= 5.0 && n * rest >= 5.0) {
      o_cells.push_back(o);
      e_cells.push_back(e);
      o = e = 0.0;
    } else if (n * rest < 5.0) {
      // Fold the tail into the current cell.
      for (std::size_t j = k + 1; j < obs.size(); ++j) o += obs[j];
      o_cells.push_back(o);
      e_cells.push_back(e + n * std::max(rest, 0.0));
      break;
    }
  }
  PoissonChi2 r;
  for (std::size_t i = 0; i < o_cells.size(); ++i) r.stat += (o_cells[i] - e_cells[i]) * (o_cells[i] - e_cells[i]) / e_cells[i];
  r.dof = static_cast<int>(o_cells.size()) - 1;
  return r;
}

void expect_poisson(const std::vector<std::int64_t>& xs, double rho) {
  const auto c = poisson_chi2(xs, rho);
  ASSERT_GE(c.dof, 1);
  EXPECT_LT(c.stat, chi_square_upper_quantile(c.dof, 0.01)) << "rho=" << rho << " dof=" << c.dof;
}

}  // namespace

TEST(MMInf, TransientParameter) {
  const MMInfParams p{2.0, 1.0};
  EXPECT_DOUBLE_EQ(transient_poisson_param(p, 0.0), 0.0);
  EXPECT_NEAR(transient_poisson_param(p, std::numbers::ln2), 1.0, 1e-15);
  EXPECT_NEAR(transient_poisson_param(p, 60.0), 2.0, 1e-15);
  EXPECT_THROW((MMInfParams{-1.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((MMInfParams{1.0, 0.0}.validate()), std::invalid_argument);
}

TEST(MMInf, NoArrivalsGivesZeroPath) {
  RngStream rng(1, 0);
  const auto tr = simulate_mminf({0.0, 1.0}, 0, 10.0, rng);
  EXPECT_EQ(tr.size(), 0u);
  EXPECT_EQ(tr.final_state(), (State{0}));
}

TEST(MMInf, TransientLawIsPoisson) {
  const MMInfParams p{2.0, 1.0};
  std::vector<std::int64_t> at5, at_ln2;
  for (std::uint64_t r = 0; r < 10000; ++r) {
    RngStream rng(17, r);
    const auto tr = simulate_mminf(p, 0, 5.0, rng);
    at5.push_back(tr.final_state()[0]);
    at_ln2.push_back(tr.state_at(std::numbers::ln2)[0]);
  }
  expect_poisson(at5, transient_poisson_param(p, 5.0));
  expect_poisson(at_ln2, 1.0);
  double mean = 0.0;
  for (auto x : at_ln2) mean += static_cast<double>(x);
  EXPECT_NEAR(mean / 1e4, 1.0, 3.0 * std::sqrt(1.0 / 1e4));
}

TEST(MMInf, LongRunMeanIsRho) {
  const MMInfParams p{3.0, 0.5};
  RngStream rng(2, 0);
  const double T = 4000.0;
  const auto tr = simulate_mminf(p, 0, T, rng);
  // Correlation time 1/mu: roughly T mu / 2 independent blocks of variance rho.
  const double se = std::sqrt(6.0 * 2.0 / (T * 0.5));
  EXPECT_NEAR(time_average(tr, 0, 20.0), 6.0, 3.0 * se);
}

TEST(Tandem, NoArrivalsGivesZeroPath) {
  RngStream rng(1, 0);
  const auto tr = simulate_tandem({0.0, {1.0, 2.0}}, {0, 0}, 10.0, rng);
  EXPECT_EQ(tr.size(), 0u);
}

TEST(Tandem, InvariantParameters) {
  EXPECT_EQ(tandem_invariant({1.0, {1.0, 2.0, 4.0}}), (std::vector<double>{1.0, 0.5, 0.25}));
  EXPECT_EQ(tandem_invariant({0.0, {1.0, 3.0}}), (std::vector<double>{0.0, 0.0}));
  EXPECT_THROW(tandem_invariant({1.0, {}}), std::invalid_argument);
  EXPECT_THROW(tandem_invariant({1.0, {1.0, 0.0}}), std::invalid_argument);
}

TEST(Tandem, CustomersMoveDownstream) {
  RngStream rng(5, 0);
  const auto tr = simulate_tandem({1.0, {1.0, 1.0, 1.0}}, {3, 0, 0}, 20.0, rng);
  EXPECT_NO_THROW(tr.validate());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const auto d = tr.delta(i);
    const int ch = tr.event(i).channel;
    std::int64_t net = 0;
    for (auto v : d) net += v;
    if (ch == 0) EXPECT_EQ(net, 1);
    else if (ch == 3) EXPECT_EQ(net, -1);
    else EXPECT_EQ(net, 0);
  }
}

TEST(Tandem, LongRunMeans) {
  const TandemParams p{1.0, {1.0, 2.0}};
  RngStream rng(9, 0);
  const auto tr = simulate_tandem(p, {0, 0}, 20000.0, rng);
  EXPECT_NEAR(time_average(tr, 0, 10.0), 1.0, 0.05);
  EXPECT_NEAR(time_average(tr, 1, 10.0), 0.5, 0.03);
}

TEST(Tandem, StationaryMarginalsArePoisson) {
  const TandemParams p{2.0, {1.0, 0.5, 4.0}};
  const auto rho = tandem_invariant(p);
  const double burn = 10.0 / 0.5;
  std::vector<std::vector<std::int64_t>> marg(3);
  for (std::uint64_t r = 0; r < 5000; ++r) {
    RngStream rng(31, r);
    const auto x = simulate_tandem(p, {0, 0, 0}, burn, rng).final_state();
    for (std::size_t k = 0; k < 3; ++k) marg[k].push_back(x[k]);
  }
  for (std::size_t k = 0; k < 3; ++k) expect_poisson(marg[k], rho[k]);
}

TEST(Tandem, TotalLoadBoundedOnDiffusiveScale) {
  const TandemParams p{1.0, {1.0, 1.0, 1.0}};
  for (double N : {100.0, 1000.0}) {
    for (double t : {0.1, 1.0, 10.0}) {
      double acc = 0.0;
      const int reps = 200;
      for (int r = 0; r < reps; ++r) {
        RngStream rng(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(r));
        const auto x = simulate_tandem(p, {static_cast<std::int64_t>(N), 0, 0}, N * t, rng).final_state();
        acc += static_cast<double>(x[0] + x[1] + x[2]);
      }
      // Stationary total mean is 3; the initial batch clears on an O(log N) scale.
      EXPECT_LT(acc / reps, 6.0) << "N=" << N << " t=" << t;
    }
  }
}

TEST(TimeAverage, PiecewiseConstant) {
  Trajectory tr({2}, 0.0);
  const State up{1}, down{-1};
  tr.push(1.0, 0, up);
  tr.push(3.0, 1, down);
  tr.set_t_end(4.0);
  // 2 on [0,1), 3 on [1,3), 2 on [3,4)
  EXPECT_DOUBLE_EQ(time_average(tr, 0, 0.0), 10.0 / 4.0);
  EXPECT_DOUBLE_EQ(time_average(tr, 0, 2.0), 2.5);
}
