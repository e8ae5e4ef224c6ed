// SPDX-License-Identifier: Apache-2.0
#include "crnlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "crnlab/aimd.hpp"
#include "crnlab/chain_network.hpp"
#include "crnlab/ensemble.hpp"
#include "crnlab/figures.hpp"
#include "crnlab/four_node.hpp"
#include "crnlab/gillespie.hpp"
#include "crnlab/mm_infinity.hpp"
#include "crnlab/ode_limits.hpp"

namespace crnlab {

namespace {

constexpr FourNodeKappa kUnit{1, 1, 1, 1, 1, 1};

std::uint64_t sub_seed(const VerifyOptions& o, std::uint64_t criterion, std::uint64_t part = 0) {
  return splitmix64(splitmix64(o.seed ^ (criterion << 40)) + part);
}

std::size_t scaled(const VerifyOptions& o, std::size_t full, std::size_t quick) { return o.quick ? quick : full; }

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CriterionResult make(const char* id, const char* title) {
  CriterionResult r;
  r.id = id;
  r.title = title;
  return r;
}

GofOptions fixed(double d) {
  GofOptions g;
  g.fixed_threshold = d;
  return g;
}

}  // namespace

CriterionResult verify_a1(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A1", "AIMD stationary laws (R0, R1)");
  const std::size_t n = scaled(o, 100000, 20000);
  constexpr double kBurnIn = 20.0;

  const Aimd0Params p0{1.0, 0.5, 1.0};
  const auto r0 = run_ensemble(EnsembleSpec{"A1-r0", n, sub_seed(o, 1, 0), o.threads},
                               [&](std::size_t, RngStream& rng) {
                                 const double v = simulate_r0(p0, 1.0, kBurnIn, rng).value_at(kBurnIn);
                                 return v * v;
                               });
  const Gamma0Params g0{0.5, 0.5};
  const auto rep0 = ks_one_sample(r0, [&](double x) { return gamma0_cdf(g0, x); });

  const Aimd1Params p1{1.0, 1.0};
  const auto r1 = run_ensemble(EnsembleSpec{"A1-r1", n, sub_seed(o, 1, 1), o.threads},
                               [&](std::size_t, RngStream& rng) {
                                 const double v = simulate_r1(p1, 1.0, kBurnIn, rng).value_at(kBurnIn);
                                 return v * v;
                               });
  const Gamma0Params g1{1.0, 0.5};
  const auto rep1 = ks_one_sample(r1, [&](double x) { return gamma0_cdf(g1, x); });

  res.reports = {{"r0_squared_vs_gamma0(1/2,1/2)", rep0}, {"r1_squared_vs_gamma0(1,1/2)", rep1}};
  res.pass = rep0.pass && rep1.pass;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a2(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A2", "quadratic decay of U2 and t_inf");
  constexpr double N = 1e4;
  const std::size_t replicas = 20;
  const double t_inf = t_infinity({1, 1, 1, 1}, 1.0);
  const double sq = std::sqrt(N);

  std::vector<double> grid, real;
  for (int i = 0; i <= 100; ++i) {
    grid.push_back(0.02 * i);
    real.push_back(0.02 * i * sq);
  }
  FourNodeInit init;
  init.N = N;
  init.y_N = static_cast<std::int64_t>(N);
  init.x3 = 1;
  const auto paths = run_ensemble(EnsembleSpec{"A2", replicas, sub_seed(o, 2), o.threads},
                                  [&](std::size_t, RngStream& rng) {
                                    return simulate_u(kUnit, init, real.back() + 1e-9, rng).coord_at(1, real);
                                  });
  std::vector<double> mean(grid.size(), 0.0);
  for (const auto& p : paths)
    for (std::size_t i = 0; i < grid.size(); ++i) mean[i] += static_cast<double>(p[i]) / N / replicas;

  const FitResult fit = fit_decay(grid, mean, 1.0);
  double ss = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > 0.8 * t_inf) break;
    const double r = 1.0 - grid[i] / t_inf;
    ss += (mean[i] - r * r) * (mean[i] - r * r);
    ++cnt;
  }
  const double rmse = std::sqrt(ss / static_cast<double>(cnt));
  const double rel = std::abs(fit.t_inf_hat - t_inf) / t_inf;
  res.metrics = {{"t_inf", t_inf}, {"t_inf_hat", fit.t_inf_hat}, {"relative_error", rel},
                 {"rmse_vs_limit", rmse}, {"fit_rmse", fit.rmse}};
  res.pass = rel <= 0.10 && rmse <= 0.03;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a3(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A3", "burst duration law");
  constexpr double N = 1e5;
  const double sq = std::sqrt(N);
  const std::size_t n = scaled(o, 10000, 2500);
  const auto init = FourNodeInit::scaled(1.0, 1.0, N, 0, 1);
  const ChainNetwork net(4, std::vector<double>(kUnit.begin(), kUnit.end()));

  const auto tau = run_ensemble(EnsembleSpec{"A3-x", n, sub_seed(o, 3, 0), o.threads},
                                [&](std::size_t, RngStream& rng) {
                                  State x = init.state();
                                  const auto st = simulate_ssa_observed(
                                      net, x, 1e9, rng,
                                      [](double, std::int32_t, std::span<const std::int64_t> s,
                                         std::span<const std::int64_t>) { return s[2] != 0; });
                                  if (!st.stopped) throw std::runtime_error("X3 never returned to 0");
                                  return sq * st.t_final;
                                });
  const auto ref = run_ensemble(EnsembleSpec{"A3-h", n, sub_seed(o, 3, 1), o.threads},
                                [](std::size_t, RngStream& rng) { return sample_h_yv(1.0, 1.0, 1.0, 1.0, rng); });
  const auto rep = ks_two_sample(tau, ref, fixed(0.05));
  res.reports = {{"sqrtN_tau_vs_h_yv", rep}};
  res.pass = rep.pass;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a4(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A4", "M/M/inf transient Poisson law");
  const MMInfParams p{2.0, 1.0};
  const std::size_t n = 10000;
  const auto counts = run_ensemble(EnsembleSpec{"A4", n, sub_seed(o, 4), o.threads},
                                   [&](std::size_t, RngStream& rng) {
                                     return simulate_mminf(p, 0, 1.0, rng).final_state()[0];
                                   });
  const double theta = transient_poisson_param(p, 1.0);
  constexpr std::size_t K = 15;
  std::vector<double> obs(K + 1, 0.0), probs(K + 1, 0.0);
  for (auto c : counts) obs[std::min<std::size_t>(static_cast<std::size_t>(c), K)] += 1.0;
  double pk = std::exp(-theta), acc = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    probs[k] = pk;
    acc += pk;
    pk *= theta / static_cast<double>(k + 1);
  }
  probs[K] = std::max(0.0, 1.0 - acc);
  const auto rep = chi_square(obs, probs);
  res.reports = {{"chi_square_vs_poisson", rep}};
  res.metrics = {{"poisson_parameter", theta}};
  res.pass = rep.pass;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a5(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A5", "averaged ODE for the odd coordinates");
  constexpr double N = 1e4, T = 5.0;
  const ChainNetwork net(5, {0, 1, 1, 1, 1, 1, 1});
  const State x0{static_cast<std::int64_t>(N), 0, static_cast<std::int64_t>(N), 0, static_cast<std::int64_t>(N)};
  RngStream rng(sub_seed(o, 5), 0);
  const Trajectory x = simulate_ssa(net, x0, T, rng);

  OdeSpec spec;
  spec.kind = OdeKind::odd_averaged;
  spec.kappa = {0, 1, 1, 1, 1, 1, 1};
  spec.init = {1, 1, 1};
  spec.t_end = T;
  const SampledPath ode = integrate(spec);

  std::vector<double> grid;
  for (int i = 0; i <= 5000; ++i) grid.push_back(T * i / 5000.0);
  bool pass = !ode.floor_hit;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto c = x.coord_at(2 * j, grid);
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      sup = std::max(sup, std::abs(static_cast<double>(c[i]) / N - ode.value_at(grid[i], j)));
    res.metrics.push_back({"sup_error_x" + std::to_string(2 * j + 1), sup});
    pass = pass && sup <= 0.05;
  }
  res.metrics.push_back({"events", static_cast<double>(x.size())});
  res.pass = pass;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a6(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A6", "pathwise tandem coupling");
  constexpr double N = 1e3;
  const std::size_t n = scaled(o, 1000, 250);
  const ChainNetwork net(5, {0, 1, 1, 1, 1, 1, 1});
  const State x0{static_cast<std::int64_t>(N), 0, static_cast<std::int64_t>(N), 0, static_cast<std::int64_t>(N)};
  const CouplingParams cp = coupling_defaults(x0, N);
  const auto runs = run_ensemble(EnsembleSpec{"A6", n, sub_seed(o, 6), o.threads},
                                 [&](std::size_t, RngStream& rng) {
                                   const auto r = couple_tandem(net, x0, cp.eta, cp.lambda, N, 5.0, rng);
                                   return std::make_pair(r.held, r.reached_T_N);
                                 });
  std::size_t held = 0, reached = 0;
  for (const auto& [h, t] : runs) {
    held += h ? 1 : 0;
    reached += t ? 1 : 0;
  }
  res.metrics = {{"replicas", static_cast<double>(n)},
                 {"held", static_cast<double>(held)},
                 {"reached_T_N", static_cast<double>(reached)},
                 {"eta", cp.eta},
                 {"lambda", cp.lambda}};
  res.pass = held == n;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a7(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A7", "occupation laws of Z and U under ell1");
  constexpr double N = 1e4, S0 = 0.1, S1 = 3.0;
  const double sq = std::sqrt(N);
  const std::size_t n = scaled(o, 100, 40);
  const OccupationGrid moment_grid{S0, S1, 20};
  const OccupationGrid ks_grid{S0, S1, 3};
  const State z0{0, static_cast<std::int64_t>(N), 1, static_cast<std::int64_t>(std::floor(sq))};

  const auto z = run_ensemble(EnsembleSpec{"A7-z", n, sub_seed(o, 7, 0), o.threads},
                              [&](std::size_t, RngStream& rng) {
                                const auto r = simulate_z(kUnit, z0, S1 + 0.01, rng);
                                return std::make_pair(measure_occupation(r.path, 3, sq, moment_grid),
                                                      measure_occupation(r.path, 3, sq, ks_grid));
                              });
  const auto u = run_ensemble(EnsembleSpec{"A7-u", n, sub_seed(o, 7, 1), o.threads},
                              [&](std::size_t, RngStream& rng) {
                                double prev = 0.0, kept = 0.0;
                                bool active = z0[2] >= 1;
                                const Trajectory path = run_recorded_until(
                                    UModel(kUnit), z0, 1e12, rng,
                                    [&](double t, std::int32_t, std::span<const std::int64_t> s,
                                        std::span<const std::int64_t>) {
                                      if (active) kept += t - prev;
                                      prev = t;
                                      active = s[2] >= 1;
                                      return kept <= S1 + 0.01;
                                    });
                                return measure_occupation(time_change_ell1(path).path, 3, sq, ks_grid);
                              });

  EmpiricalOccupation zm(moment_grid, sq), zk(ks_grid, sq), uk(ks_grid, sq);
  for (const auto& [a, b] : z) {
    zm.merge(a);
    zk.merge(b);
  }
  for (const auto& a : u) uk.merge(a);

  const auto bins = compare_occupation(
      zm, [](double s) { return Gamma0Params{1.0, 1.0 / (2.0 * std::exp(-s))}; }, OccupationFunctional::sqrt_moment,
      0.05);
  std::size_t good = 0;
  double worst = 0.0;
  for (const auto& b : bins) {
    if (!b.skipped && b.report.pass) ++good;
    if (!b.skipped) worst = std::max(worst, b.report.statistic);
  }
  const double frac = static_cast<double>(good) / static_cast<double>(bins.size());
  res.metrics = {{"moment_bins", static_cast<double>(bins.size())},
                 {"moment_bins_within_5pct", static_cast<double>(good)},
                 {"moment_fraction", frac},
                 {"moment_worst_relative_error", worst}};
  bool pass = frac >= 0.9;
  for (std::size_t b = 0; b < ks_grid.bins; ++b) {
    const auto rep = ks_two_sample_weighted(zk.samples(b), uk.samples(b), fixed(0.05));
    res.reports.push_back({"z_vs_u_ell1_bin" + std::to_string(b), rep});
    pass = pass && rep.pass;
  }
  res.pass = pass;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a8(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A8", "X4 under ell0 against V_y");
  constexpr double N = 1e5, L = 2.0;
  const double sq = std::sqrt(N);
  const std::size_t n = scaled(o, 10000, 2500);
  const std::vector<double> times{0.5, 1.0, 2.0};
  const auto init = FourNodeInit::scaled(1.0, 1.0, N, 0, 1);
  const ChainNetwork net(4, std::vector<double>(kUnit.begin(), kUnit.end()));

  const auto xs = run_ensemble(EnsembleSpec{"A8-x", n, sub_seed(o, 8, 0), o.threads},
                               [&](std::size_t, RngStream& rng) {
                                 double prev = 0.0, l0 = 0.0;
                                 bool idle = init.x3 == 0;
                                 const Trajectory path = run_recorded_until(
                                     ChainModel(net), init.state(), 1e12, rng,
                                     [&](double t, std::int32_t, std::span<const std::int64_t> s,
                                         std::span<const std::int64_t>) {
                                       if (idle) l0 += t - prev;
                                       prev = t;
                                       idle = s[2] == 0;
                                       return l0 <= L;
                                     });
                                 const auto c = time_change_ell0(path).path.coord_at(3, times);
                                 std::vector<double> v;
                                 for (auto k : c) v.push_back(static_cast<double>(k) / sq);
                                 return v;
                               });
  const VyKappa vk{1, 1, 1, 1};
  const auto vs = run_ensemble(EnsembleSpec{"A8-v", n, sub_seed(o, 8, 1), o.threads},
                               [&](std::size_t, RngStream& rng) {
                                 const double v0 = vy_jump(1.0, 1.0, vk, rng.exponential());
                                 return simulate_vy(1.0, vk, v0, L, rng).values_at(times);
                               });
  bool pass = true;
  for (std::size_t j = 0; j < times.size(); ++j) {
    std::vector<double> a, b;
    for (const auto& v : xs) a.push_back(v[j]);
    for (const auto& v : vs) b.push_back(v[j]);
    const auto rep = ks_two_sample(a, b, fixed(0.05));
    char name[32];
    std::snprintf(name, sizeof name, "marginal_t%.1f", times[j]);
    res.reports.push_back({name, rep});
    pass = pass && rep.pass;
  }
  res.pass = pass;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a9(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A9", "random limit of X2 for m = 3");
  constexpr double N = 1e4;
  const std::size_t nx = scaled(o, 1000, 250), nl = scaled(o, 10000, 2500);
  const ChainNetwork net(3, {1, 1, 1, 1, 1});
  const State x0{0, static_cast<std::int64_t>(N), 0};
  const auto xs = run_ensemble(EnsembleSpec{"A9-x", nx, sub_seed(o, 9, 0), o.threads},
                               [&](std::size_t, RngStream& rng) {
                                 return static_cast<double>(simulate_ssa(net, x0, 1.0, rng).final_state()[1]) / N;
                               });
  const auto ls = run_ensemble(EnsembleSpec{"A9-l", nl, sub_seed(o, 9, 1), o.threads},
                               [](std::size_t, RngStream& rng) {
                                 return ell2_random_limit(1.0, 1.0, 1.0, 1.0, rng).value_at(1.0);
                               });
  const auto a = mean_se(xs), b = mean_se(ls);
  const double band = 3.0 * std::hypot(a.se, b.se);
  const double diff = std::abs(a.mean - b.mean);
  res.metrics = {{"mean_x2_over_N", a.mean}, {"se_x2", a.se}, {"mean_ell2", b.mean},
                 {"se_ell2", b.se},          {"difference", diff}, {"band_3se", band}};
  res.pass = diff <= band;
  res.seconds = timer.seconds();
  return res;
}

CriterionResult verify_a10(const VerifyOptions& o) {
  Timer timer;
  auto res = make("A10", "figure data: sawtooth and convex decay");
  const auto dir = o.out_dir ? *o.out_dir
                             : std::filesystem::temp_directory_path() / ("crnlab-a10-" + std::to_string(o.seed));

  Fig41Options f1;
  f1.seed = sub_seed(o, 10, 0);
  const auto d1 = fig4_1(f1);
  write_fig4_1(d1, dir);
  const std::size_t saw = sawtooth_count(d1.excursions);

  FigAvOptions fa;
  fa.seed = sub_seed(o, 10, 1);
  fa.threads = o.threads;
  const auto d2 = fig_av(fa);
  write_fig_av(d2, dir);
  const auto dd = second_differences(d2.x2_mean);
  const double min_dd = dd.empty() ? 0.0 : *std::min_element(dd.begin(), dd.end());
  double max_d = -INFINITY;
  for (std::size_t i = 1; i < d2.x2_mean.size(); ++i) max_d = std::max(max_d, d2.x2_mean[i] - d2.x2_mean[i - 1]);

  bool files = true;
  for (const char* f : {"fig4-1.csv", "fig-av.csv"}) {
    std::error_code ec;
    files = files && std::filesystem::file_size(dir / f, ec) > 0 && !ec;
  }
  res.metrics = {{"excursions", static_cast<double>(d1.excursions.size())},
                 {"sawtooth_excursions", static_cast<double>(saw)},
                 {"min_second_difference", min_dd},
                 {"max_first_difference", max_d}};
  res.note = "csv written to " + dir.string();
  res.pass = files && saw >= 5 && min_dd >= -0.01 && max_d <= 0.01;
  res.seconds = timer.seconds();
  return res;
}

const std::vector<std::string>& criterion_ids() {
  static const std::vector<std::string> ids{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10"};
  return ids;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "aimd", "occupation", "decay", "coupling", "mminf", "ode"};
  return names;
}

std::vector<std::string> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<std::string>> table{
      {"aimd", {"A1", "A3", "A8"}}, {"occupation", {"A7"}}, {"decay", {"A2", "A10"}},
      {"coupling", {"A6"}},         {"mminf", {"A4"}},      {"ode", {"A5", "A9"}}};
  if (suite == "all") return criterion_ids();
  const auto it = table.find(suite);
  if (it == table.end()) throw std::invalid_argument("unknown suite '" + suite + "'");
  return it->second;
}

CriterionResult run_criterion(const std::string& id, const VerifyOptions& o) {
  using Fn = CriterionResult (*)(const VerifyOptions&);
  static const std::map<std::string, Fn> table{{"A1", verify_a1}, {"A2", verify_a2}, {"A3", verify_a3},
                                               {"A4", verify_a4}, {"A5", verify_a5}, {"A6", verify_a6},
                                               {"A7", verify_a7}, {"A8", verify_a8}, {"A9", verify_a9},
                                               {"A10", verify_a10}};
  const auto it = table.find(id);
  if (it == table.end()) throw std::invalid_argument("unknown criterion '" + id + "'");
  return it->second(o);
}

std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& o) {
  std::vector<CriterionResult> out;
  for (const auto& id : suite_criteria(suite)) out.push_back(run_criterion(id, o));
  return out;
}

}  // namespace crnlab
