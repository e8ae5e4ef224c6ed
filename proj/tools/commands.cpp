// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "crnlab/aimd.hpp"
#include "crnlab/chain_network.hpp"
#include "crnlab/ensemble.hpp"
#include "crnlab/figures.hpp"
#include "crnlab/four_node.hpp"
#include "crnlab/mm_infinity.hpp"
#include "crnlab/ode_limits.hpp"

namespace crnlab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string replica_name(const char* stem, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_r%04zu.csv", stem, i);
  return buf;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

FourNodeKappa four_kappa(const std::vector<double>& k) {
  FourNodeKappa a{};
  std::copy(k.begin(), k.end(), a.begin());
  return a;
}

void write_aimd_path(const AimdPath& p, const fs::path& path) {
  auto out = open_out(path);
  out << "t,value\n" << p.t_start() << ',' << p.v0() << '\n';
  for (const auto& j : p.jumps()) out << j.t << ',' << j.before << '\n' << j.t << ',' << j.after << '\n';
  out << p.t_end() << ',' << p.value_at(p.t_end()) << '\n';
}

// Stationary law of the squared AIMD state for the gof output.
Gamma0Params aimd_law(const ExperimentConfig& c) {
  const auto& k = c.kappa;
  switch (c.model) {
    case Model::r0: return {k[0] * k[2] / 2.0, k[1]};
    case Model::r1: return {(k[1] + 1.0) / 2.0, k[0] / 2.0};
    default: return {k[0] / (2.0 * k[3]), k[2] / (2.0 * k[1] * c.init.y)};
  }
}

struct ReplicaOut {
  std::uint64_t events = 0;
  std::optional<EmpiricalOccupation> occupation;
  std::vector<double> fit_values;
  double final_value = 0.0;
};

}  // namespace

json to_json(const GofReport& r) {
  json j{{"test", to_string(r.test)}, {"statistic", r.statistic}, {"n", r.n},
         {"threshold", r.threshold},  {"pass", r.pass}};
  if (r.p_value >= 0.0) j["p_value"] = r.p_value;
  if (r.test == GofTest::chi_square) j["dof"] = r.dof;
  return j;
}

json to_json(const CriterionResult& r) {
  json metrics = json::object();
  for (const auto& m : r.metrics) metrics[m.name] = m.value;
  json reports = json::array();
  for (const auto& [name, rep] : r.reports) {
    json j = to_json(rep);
    j["name"] = name;
    reports.push_back(j);
  }
  json j{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"seconds", r.seconds},
         {"metrics", metrics}, {"reports", reports}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

SimulateSummary cmd_simulate(const ExperimentConfig& cfg, const fs::path& out_dir) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  SimulateSummary sum;
  sum.seed = cfg.seed;
  const bool want_traj = cfg.outputs.count(Output::trajectory) > 0;

  if (cfg.model == Model::ode) {
    OdeSpec spec{cfg.ode_kind, cfg.kappa, cfg.init.values, cfg.t_end, cfg.ode_h, 1e-6, cfg.ode_stride};
    const SampledPath p = integrate(spec);
    sum.events = p.t.size();
    if (want_traj) {
      p.write_csv(out_dir / "ode.csv");
      sum.files.push_back(out_dir / "ode.csv");
    }
    sum.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sum;
  }

  const double horizon = cfg.horizon();
  const double clock = horizon / cfg.t_end;  // real time per unit of the chosen clock
  const State x0 = cfg.initial_state();
  const std::size_t grid_n = 101;
  std::vector<double> fit_t(grid_n), fit_real(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    fit_t[i] = cfg.t_end * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    fit_real[i] = std::min(fit_t[i] * clock, horizon);
  }
  const OccupationGrid occ_grid{cfg.occupation.t0, cfg.occupation.t1.value_or(cfg.t_end), cfg.occupation.bins};

  EnsembleSpec spec{to_string(cfg.model), cfg.replicas, cfg.seed, 0};
  const auto outs = run_ensemble(spec, [&](std::size_t i, RngStream& rng) {
    ReplicaOut r;
    Trajectory traj;
    switch (cfg.model) {
      case Model::chain: traj = simulate_ssa(ChainNetwork(cfg.m, cfg.kappa), x0, horizon, rng); break;
      case Model::mminf: traj = simulate_mminf({cfg.kappa[0], cfg.kappa[1]}, x0[0], horizon, rng); break;
      case Model::tandem:
        traj = simulate_tandem({cfg.kappa[0], {cfg.kappa.begin() + 1, cfg.kappa.end()}}, x0, horizon, rng);
        break;
      case Model::x4:
      case Model::u4: {
        FourNodeInit init;
        init.N = cfg.N;
        init.x1 = x0[0];
        init.y_N = x0[1];
        init.x3 = x0[2];
        init.v_N = x0[3];
        traj = cfg.model == Model::x4 ? simulate_x4(four_kappa(cfg.kappa), init, horizon, rng)
                                      : simulate_u(four_kappa(cfg.kappa), init, horizon, rng);
        break;
      }
      case Model::z4: {
        ZResult z = simulate_z(four_kappa(cfg.kappa), x0, horizon, rng);
        traj = std::move(z.path);
        if (want_traj) {
          auto out = open_out(out_dir / replica_name("hmap", i));
          out << "at,length\n";
          for (const auto& g : z.h_map.gaps()) out << g.at << ',' << g.length << '\n';
        }
        break;
      }
      case Model::r0:
      case Model::r1:
      case Model::vy: {
        const double v0 = cfg.model == Model::vy ? cfg.init.v
                          : cfg.init.values.empty() ? 0.0
                                                    : cfg.init.values[0];
        const auto& k = cfg.kappa;
        const AimdPath p = cfg.model == Model::r0   ? simulate_r0({k[0], k[1], k[2]}, v0, cfg.t_end, rng)
                           : cfg.model == Model::r1 ? simulate_r1({k[0], k[1]}, v0, cfg.t_end, rng)
                                                    : simulate_vy(cfg.init.y, {k[0], k[1], k[2], k[3]}, v0,
                                                                  cfg.t_end, rng);
        if (want_traj) write_aimd_path(p, out_dir / replica_name("path", i));
        r.events = p.jumps().size();
        r.final_value = p.value_at(cfg.t_end);
        return r;
      }
      case Model::ode: break;
    }
    r.events = traj.size();
    if (want_traj) write_trajectory_csv(traj, out_dir / replica_name("trajectory", i));
    if (cfg.outputs.count(Output::occupation)) {
      r.occupation = measure_occupation(traj, cfg.occupation.coord - 1, cfg.value_scale(), occ_grid, clock);
    }
    if (cfg.outputs.count(Output::cycles)) write_cycles_csv(extract_cycles(traj), out_dir / replica_name("cycles", i));
    if (cfg.outputs.count(Output::fit)) {
      for (auto v : traj.coord_at(1, fit_real)) r.fit_values.push_back(static_cast<double>(v) / cfg.N);
    }
    if (cfg.model == Model::mminf) r.final_value = static_cast<double>(traj.final_state()[0]);
    return r;
  });

  for (std::size_t i = 0; i < outs.size(); ++i) {
    sum.events += outs[i].events;
    if (!want_traj) continue;
    const bool aimd = cfg.model == Model::r0 || cfg.model == Model::r1 || cfg.model == Model::vy;
    sum.files.push_back(out_dir / replica_name(aimd ? "path" : "trajectory", i));
  }
  if (cfg.outputs.count(Output::cycles)) {
    for (std::size_t i = 0; i < outs.size(); ++i) sum.files.push_back(out_dir / replica_name("cycles", i));
  }
  if (cfg.outputs.count(Output::occupation)) {
    EmpiricalOccupation total(occ_grid, cfg.value_scale());
    for (const auto& o : outs) total.merge(*o.occupation);
    total.write_csv(out_dir / "occupation.csv");
    sum.files.push_back(out_dir / "occupation.csv");
  }
  if (cfg.outputs.count(Output::gof)) {
    std::vector<double> v;
    for (const auto& o : outs) v.push_back(o.final_value);
    json j;
    if (cfg.model == Model::mminf) {
      const double theta = transient_poisson_param({cfg.kappa[0], cfg.kappa[1]}, horizon);
      double kmax = 0.0;
      for (double c : v) kmax = std::max(kmax, c);
      const std::size_t K = static_cast<std::size_t>(kmax) + 1;
      std::vector<double> obs(K + 1, 0.0), probs(K + 1, 0.0);
      for (double c : v) obs[static_cast<std::size_t>(c)] += 1.0;
      double pk = std::exp(-theta), acc = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        probs[k] = pk;
        acc += pk;
        pk *= theta / static_cast<double>(k + 1);
      }
      probs[K] = std::max(0.0, 1.0 - acc);
      j["law"] = {{"family", "poisson"}, {"parameter", theta}};
      try {
        j["report"] = to_json(chi_square(obs, probs));
      } catch (const std::invalid_argument& e) {
        j["report"] = {{"test", "chi_square"}, {"skipped", true}, {"reason", e.what()}};
      }
    } else {
      const Gamma0Params law = aimd_law(cfg);
      for (double& x : v) x *= x;
      j["law"] = {{"family", "gamma0"}, {"a", law.a}, {"b", law.b}, {"of", "square of the final value"}};
      j["report"] = to_json(ks_one_sample(v, [&](double x) { return gamma0_cdf(law, x); }));
    }
    write_json(out_dir / "gof.json", j);
    sum.files.push_back(out_dir / "gof.json");
  }
  if (cfg.outputs.count(Output::fit)) {
    std::vector<double> mean(grid_n, 0.0);
    for (const auto& o : outs)
      for (std::size_t i = 0; i < grid_n; ++i) mean[i] += o.fit_values[i] / static_cast<double>(outs.size());
    const double y = static_cast<double>(x0[1]) / cfg.N;
    const FitResult f = fit_decay(fit_t, mean, y);
    json j{{"t_inf_hat", f.t_inf_hat}, {"rmse", f.rmse}, {"guess", f.guess}, {"monotone", f.monotone}, {"y", y}};
    try {
      const auto& k = cfg.kappa;
      j["t_inf_limit"] = t_infinity({k[0], k[3], k[4], k[5]}, y);
    } catch (const std::exception&) {
      j["t_inf_limit"] = nullptr;
    }
    write_json(out_dir / "fit.json", j);
    auto out = open_out(out_dir / "fit_path.csv");
    out << "t,x2_over_N\n";
    for (std::size_t i = 0; i < grid_n; ++i) out << fit_t[i] << ',' << mean[i] << '\n';
    sum.files.push_back(out_dir / "fit.json");
    sum.files.push_back(out_dir / "fit_path.csv");
  }
  sum.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sum;
}

std::vector<fs::path> cmd_limits(const LimitsConfig& cfg, const fs::path& out_dir, std::ostream& log) {
  fs::create_directories(out_dir);
  std::vector<fs::path> files;
  switch (cfg.kind) {
    case LimitsConfig::Kind::t_infinity: {
      const double t = t_infinity(cfg.kappa, cfg.y);
      log << "t_infinity = " << std::setprecision(8) << t << '\n';
      write_json(out_dir / "t_infinity.json", {{"kappa", cfg.kappa}, {"y", cfg.y}, {"t_infinity", t}});
      files.push_back(out_dir / "t_infinity.json");
      break;
    }
    case LimitsConfig::Kind::quadratic_decay: {
      const double t_inf = t_infinity(cfg.kappa, cfg.y);
      auto out = open_out(out_dir / "quadratic_decay.csv");
      out << "t,u2\n";
      const auto n = static_cast<std::size_t>(std::floor(cfg.t_max_fraction * t_inf / cfg.step + 1e-9));
      for (std::size_t i = 0; i <= n; ++i) {
        const double t = cfg.step * static_cast<double>(i);
        out << t << ',' << quadratic_decay(cfg.y, t_inf, t) << '\n';
      }
      log << "t_infinity = " << std::setprecision(8) << t_inf << ", rows = " << n + 1 << '\n';
      files.push_back(out_dir / "quadratic_decay.csv");
      break;
    }
    case LimitsConfig::Kind::ode: {
      const SampledPath p = integrate(cfg.ode);
      p.write_csv(out_dir / "ode.csv");
      log << "ode " << to_string(cfg.ode.kind) << ": " << p.t.size() << " rows"
          << (p.floor_hit ? ", stopped at the floor" : "") << '\n';
      files.push_back(out_dir / "ode.csv");
      break;
    }
    case LimitsConfig::Kind::gamma0: {
      const Gamma0Params g{cfg.a, cfg.b};
      auto out = open_out(out_dir / "gamma0.csv");
      out << "x,density,cdf\n";
      for (std::size_t i = 0; i < cfg.points; ++i) {
        const double x = cfg.x_max * static_cast<double>(i) / static_cast<double>(cfg.points - 1);
        out << x << ',' << gamma0_density(g, x) << ',' << gamma0_cdf(g, x) << '\n';
      }
      log << "gamma0(" << cfg.a << ", " << cfg.b << "): mean " << gamma0_mean(g) << ", E[sqrt X] "
          << gamma0_sqrt_moment(g) << '\n';
      files.push_back(out_dir / "gamma0.csv");
      break;
    }
  }
  return files;
}

bool cmd_verify(const std::string& suite, const VerifyOptions& opts, std::ostream& log, json* report) {
  const auto ids = suite_criteria(suite);
  json crit = json::array();
  bool all = true;
  for (const auto& id : ids) {
    const CriterionResult r = run_criterion(id, opts);
    all = all && r.pass;
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %s  %-45s %7.2fs", r.id.c_str(), r.pass ? "PASS" : "FAIL",
                  r.title.c_str(), r.seconds);
    log << line << '\n';
    crit.push_back(to_json(r));
  }
  json j{{"suite", suite}, {"seed", opts.seed}, {"quick", opts.quick}, {"pass", all}, {"criteria", crit}};
  if (opts.out_dir) {
    fs::create_directories(*opts.out_dir);
    write_json(*opts.out_dir / ("verify_" + suite + ".json"), j);
  }
  if (report) *report = std::move(j);
  return all;
}

void cmd_reproduce(const std::string& which, const ReproduceOptions& opts, const fs::path& out_dir,
                   std::ostream& log) {
  if (!(opts.N >= 1.0)) throw ConfigError("--N must be >= 1");
  if (which == "fig4-1") {
    Fig41Options o;
    o.N = opts.N;
    o.seed = opts.seed;
    const auto d = fig4_1(o);
    write_fig4_1(d, out_dir);
    log << "fig4-1: " << d.t.size() << " rows, " << d.excursions.size() << " excursions, "
        << sawtooth_count(d.excursions) << " with rise < 0.1 x decay -> " << (out_dir / "fig4-1.csv").string()
        << '\n';
  } else if (which == "fig-av") {
    FigAvOptions o;
    o.N = opts.N;
    o.seed = opts.seed;
    if (opts.quick) o.replicas = 200;
    const auto d = fig_av(o);
    write_fig_av(d, out_dir);
    const auto dd = second_differences(d.x2_mean);
    const double lo = dd.empty() ? 0.0 : *std::min_element(dd.begin(), dd.end());
    log << "fig-av: " << d.t.size() << " grid points, " << o.replicas << " replicas, min second difference "
        << lo << " -> " << (out_dir / "fig-av.csv").string() << '\n';
  } else {
    throw ConfigError("unknown figure '" + which + "' (expected fig4-1 or fig-av)");
  }
}

}  // namespace crnlab::cli
