// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "crnlab/chain_network.hpp"
#include "crnlab/four_node.hpp"
#include "crnlab/ode_limits.hpp"
#include "crnlab/stats.hpp"

using namespace crnlab;

namespace {

OdeSpec fluid(std::vector<double> init, double t_end, double h) {
  OdeSpec s;
  s.kind = OdeKind::fluid_chain;
  s.kappa.assign(init.size() + 2, 1.0);
  s.init = std::move(init);
  s.t_end = t_end;
  s.h = h;
  return s;
}

double sup_error(const SampledPath& a, const SampledPath& ref) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) e = std::max(e, std::abs(a.x.back()[k] - ref.x.back()[k]));
  return e;
}

}  // namespace

TEST(TInfinity, Values) {
  EXPECT_NEAR(t_infinity({1, 1, 1, 1}, 1.0), std::sqrt(2.0 * std::numbers::pi), 1e-12);
  EXPECT_NEAR(t_infinity({1, 1, 1, 1}, 1.0), 2.506628274631, 1e-11);
  EXPECT_NEAR(t_infinity({1, 1, 1, 2}, 1.0), 2.092099240106, 1e-11);
  for (double y : {0.25, 2.0, 9.0}) EXPECT_NEAR(t_infinity({2, 0.5, 3, 0.7}, y), std::sqrt(y) * t_infinity({2, 0.5, 3, 0.7}, 1.0), 1e-12);
  EXPECT_THROW(t_infinity({1, 1, 1}, 1.0), std::invalid_argument);
  EXPECT_THROW(t_infinity({1, 0, 1, 1}, 1.0), std::invalid_argument);
  EXPECT_THROW(t_infinity({1, 1, 1, 1}, 0.0), std::invalid_argument);
}

TEST(QuadraticDecay, ClosedForm) {
  EXPECT_DOUBLE_EQ(quadratic_decay(3.0, 2.0, 0.0), 3.0);
  EXPECT_DOUBLE_EQ(quadratic_decay(3.0, 2.0, 1.0), 0.75);
  EXPECT_NEAR(quadratic_decay(1.0, 2.506628274631, 1.0), 0.361270382289, 1e-11);
  EXPECT_THROW(quadratic_decay(1.0, 2.0, 2.0), std::domain_error);
  EXPECT_THROW(quadratic_decay(1.0, 2.0, -0.1), std::domain_error);
}

TEST(QuadraticDecay, OdeMatchesClosedForm) {
  OdeSpec s;
  s.kind = OdeKind::quadratic_decay;
  s.kappa = {1, 1, 1, 1};
  s.init = {1.5};
  s.t_end = 2.5;
  s.h = 1e-3;
  const auto p = integrate(s);
  const double tinf = t_infinity(s.kappa, 1.5);
  for (std::size_t i = 0; i < p.t.size(); i += 100) EXPECT_NEAR(p.x[i][0], quadratic_decay(1.5, tinf, p.t[i]), 1e-8);
}

TEST(QuadraticDecay, UProcessMeanAtOne) {
  const double N = 1e4;
  std::vector<double> u2;
  for (std::uint64_t r = 0; r < 20; ++r) {
    RngStream rng(90, r);
    const auto u = simulate_u({1, 1, 1, 1, 1, 1}, FourNodeInit::scaled(1.0, 0.0, N, 0, 1), std::sqrt(N) * 1.0 + 1.0, rng);
    u2.push_back(static_cast<double>(u.state_at(std::sqrt(N))[1]) / N);
  }
  EXPECT_NEAR(mean_se(u2).mean, 0.361270382289, 0.05);
}

TEST(FluidChain, EmptyFirstCoordinateStaysEmpty) {
  auto s = fluid({0.0, 2.0, 0.5}, 5.0, 1e-3);
  s.kappa = {1, 1, 1, 0.7, 1};
  const auto f = ode_rhs(s);
  std::vector<double> dx(3);
  f(0.0, s.init, dx);
  EXPECT_DOUBLE_EQ(dx[0], 0.0);
  EXPECT_DOUBLE_EQ(dx[1], -0.7 * 2.0 * 0.5);
  const auto p = integrate(s);
  for (const auto& x : p.x) EXPECT_EQ(x[0], 0.0);
}

TEST(FluidChain, Rk4IsFourthOrder) {
  const std::vector<double> init{1.0, 0.5, 1.0, 0.5};
  const auto ref = integrate(fluid(init, 5.0, 0.1 / 8.0));
  const double e1 = sup_error(integrate(fluid(init, 5.0, 0.1)), ref);
  const double e2 = sup_error(integrate(fluid(init, 5.0, 0.05)), ref);
  ASSERT_GT(e2, 0.0);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_LT(e1 / e2, 20.0);
}

TEST(FluidChain, OddSumDecreases) {
  for (const std::vector<double>& init : {std::vector<double>{1, 1, 0}, std::vector<double>{0.3, 1, 2, 0.1, 1}}) {
    const auto p = integrate(fluid(init, 20.0, 1e-3));
    double prev = INFINITY;
    for (const auto& x : p.x) {
      double odd = 0.0;
      for (std::size_t i = 0; i < x.size(); i += 2) odd += x[i];
      EXPECT_LE(odd, prev + 1e-14);
      prev = odd;
      for (double v : x) EXPECT_GE(v, -1e-12);
    }
  }
}

TEST(ThreeFast, InitialSlope) {
  OdeSpec s;
  s.kind = OdeKind::three_fast;
  s.kappa = {1, 2.5, 1, 1, 1};
  s.init = {0, 0};
  const auto f = ode_rhs(s);
  std::vector<double> dx(2);
  f(0.0, s.init, dx);
  EXPECT_DOUBLE_EQ(dx[0], 2.5);
  EXPECT_DOUBLE_EQ(dx[1], 0.0);
}

TEST(OddAveraged, PositiveAndNonIncreasingTotal) {
  OdeSpec s;
  s.kind = OdeKind::odd_averaged;
  s.kappa = {0, 1, 2, 1, 0.5, 1, 1};
  s.init = {1.0, 0.6, 1.3};
  s.t_end = 5.0;
  s.h = 1e-3;
  const auto p = integrate(s);
  EXPECT_FALSE(p.floor_hit);
  EXPECT_NEAR(p.t.back(), 5.0, 1e-12);
  double prev = INFINITY;
  for (const auto& l : p.x) {
    double tot = 0.0;
    for (double v : l) {
      EXPECT_GT(v, 0.0);
      tot += v;
    }
    EXPECT_LE(tot, prev + 1e-12);
    prev = tot;
  }
}

TEST(OddAveraged, FloorStopsIntegration) {
  OdeSpec s;
  s.kind = OdeKind::odd_averaged;
  s.kappa = {0, 1, 1, 1, 1};
  s.init = {1.0, 1.0};
  s.t_end = 100.0;
  s.floor = 0.5;
  const auto p = integrate(s);
  EXPECT_TRUE(p.floor_hit);
  EXPECT_LT(p.t.back(), 100.0);
}

TEST(OdeSpec, Validation) {
  OdeSpec s = fluid({1, 1, 1}, 1.0, 1e-3);
  EXPECT_NO_THROW(s.validate());
  s.h = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = fluid({1, 1}, 1.0, 1e-3);
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = fluid({1, -1, 1}, 1.0, 1e-3);
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = fluid({1, 1, 1}, 1.0, 1e-15);
  EXPECT_THROW(s.validate(), std::invalid_argument);

  OdeSpec o;
  o.kind = OdeKind::odd_averaged;
  o.kappa = {0, 1, 1, 1, 1};
  o.init = {1.0, 0.0};
  EXPECT_THROW(o.validate(), std::invalid_argument);
  EXPECT_EQ(ode_kind_from_string("three_fast"), OdeKind::three_fast);
  EXPECT_EQ(to_string(OdeKind::odd_averaged), "odd_averaged");
  EXPECT_THROW(ode_kind_from_string("stiff"), std::invalid_argument);
}

TEST(SampledPath, Interpolation) {
  SampledPath p;
  p.t = {0.0, 1.0, 3.0};
  p.x = {{0.0}, {2.0}, {4.0}};
  EXPECT_DOUBLE_EQ(p.value_at(-1.0, 0), 0.0);
  EXPECT_DOUBLE_EQ(p.value_at(0.5, 0), 1.0);
  EXPECT_DOUBLE_EQ(p.value_at(2.0, 0), 3.0);
  EXPECT_DOUBLE_EQ(p.value_at(9.0, 0), 4.0);
}

TEST(Ell2, NoArrivalsIsOne) {
  RngStream rng(1, 0);
  const auto l = ell2_random_limit(0.0, 1.0, 1.0, 5.0, rng);
  for (double t : {0.0, 1.0, 5.0}) EXPECT_DOUBLE_EQ(l.value_at(t), 1.0);
}

TEST(Ell2, NonIncreasingFromOne) {
  RngStream rng(2, 0);
  const auto l = ell2_random_limit(2.0, 0.5, 1.0, 10.0, rng);
  const auto p = l.sample(0.01);
  EXPECT_DOUBLE_EQ(p.x.front()[0], 1.0);
  for (std::size_t i = 1; i < p.t.size(); ++i) EXPECT_LE(p.x[i][0], p.x[i - 1][0]);
  EXPECT_LT(p.x.back()[0], 1.0);
}

TEST(Ell2, MatchesScaledChain) {
  std::vector<double> lim, sim;
  for (std::uint64_t r = 0; r < 10000; ++r) {
    RngStream rng(3, r);
    lim.push_back(ell2_random_limit(1.0, 1.0, 1.0, 1.0, rng).value_at(1.0));
  }
  const double N = 1e4;
  ChainNetwork net(3, {1, 1, 1, 1, 1});
  for (std::uint64_t r = 0; r < 1000; ++r) {
    RngStream rng(4, r);
    const auto tr = simulate_ssa(net, {0, static_cast<std::int64_t>(N), 0}, 1.0, rng);
    sim.push_back(static_cast<double>(tr.final_state()[1]) / N);
  }
  const auto a = mean_se(lim), b = mean_se(sim);
  EXPECT_NEAR(a.mean, b.mean, 3.0 * std::hypot(a.se, b.se));
}
