// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "crnlab/ensemble.hpp"

namespace fs = std::filesystem;
using namespace crnlab;
using namespace crnlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"crnlab: chain reaction network simulations, scaling limits and verification"};
  app.require_subcommand(1);

  std::string config, out = "crnlab-out", suite = "all", figure;
  std::uint64_t seed = 0;
  double N = 0.0;
  bool quick = false;

  auto* sim = app.add_subcommand("simulate", "run a configured simulator and write its outputs");
  sim->add_option("--config", config, "experiment config (JSON)")->required();
  sim->add_option("--seed", seed, "override the config seed");
  sim->add_option("--N", N, "override the scaling parameter N");
  sim->add_option("--out", out, "output directory");

  auto* lim = app.add_subcommand("limits", "evaluate limit objects (t_inf, decay curves, ODEs, Gamma0 tables)");
  lim->add_option("--config", config, "limits config (JSON)")->required();
  lim->add_option("--out", out, "output directory");

  auto* ver = app.add_subcommand("verify", "run an acceptance suite; exit 0 iff every criterion passes");
  ver->add_option("--suite", suite, "all, aimd, occupation, decay, coupling, mminf or ode");
  ver->add_option("--seed", seed, "base seed");
  ver->add_option("--out", out, "directory for the JSON report and figure CSVs");
  ver->add_flag("--quick", quick, "fewer replicas, same thresholds");

  auto* rep = app.add_subcommand("reproduce", "write figure data (fig4-1, fig-av)");
  rep->add_option("figure", figure, "fig4-1 or fig-av")->required();
  rep->add_option("--N", N, "scaling parameter (default 1e4)");
  rep->add_option("--seed", seed, "seed");
  rep->add_option("--out", out, "output directory");
  rep->add_flag("--quick", quick, "fewer replicas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sim) {
      ExperimentConfig cfg = parse_experiment(load_json(config));
      if (sim->count("--seed")) cfg.seed = seed;
      if (sim->count("--N")) cfg.N = N;
      validate(cfg);
      const auto s = cmd_simulate(cfg, out);
      std::printf("simulate: model=%s replicas=%zu events=%llu wall=%.3fs seed=%llu out=%s\n",
                  to_string(cfg.model).c_str(), cfg.replicas, static_cast<unsigned long long>(s.events), s.seconds,
                  static_cast<unsigned long long>(s.seed), out.c_str());
    } else if (*lim) {
      cmd_limits(parse_limits(load_json(config)), out, std::cout);
    } else if (*ver) {
      try {
        (void)suite_criteria(suite);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n\n" << ver->help();
        return kExitUsage;
      }
      VerifyOptions o;
      if (ver->count("--seed")) o.seed = seed;
      o.quick = quick;
      o.out_dir = fs::path(out);
      const bool ok = cmd_verify(suite, o, std::cout, nullptr);
      std::cout << "verify " << suite << ": " << (ok ? "PASS" : "FAIL") << " (report: "
                << (fs::path(out) / ("verify_" + suite + ".json")).string() << ")\n";
      return ok ? kExitOk : kExitFailure;
    } else if (*rep) {
      ReproduceOptions o;
      if (rep->count("--N")) o.N = N;
      if (rep->count("--seed")) o.seed = seed;
      o.quick = quick;
      cmd_reproduce(figure, o, out, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ReplicaError& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
