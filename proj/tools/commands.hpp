// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "crnlab/verify.hpp"

namespace crnlab::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

struct SimulateSummary {
  std::uint64_t events = 0;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> files;
};

// Runs the configured simulator and writes the declared outputs into out_dir.
SimulateSummary cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

// Evaluates a limit object; returns written files. Scalar results go to `log`.
std::vector<std::filesystem::path> cmd_limits(const LimitsConfig& cfg, const std::filesystem::path& out_dir,
                                              std::ostream& log);

// Runs a verification suite, prints one line per criterion to `log` and
// writes verify_<suite>.json into opts.out_dir (when set). True iff all pass.
bool cmd_verify(const std::string& suite, const VerifyOptions& opts, std::ostream& log, nlohmann::json* report);

struct ReproduceOptions {
  double N = 1e4;
  std::uint64_t seed = 1;
  bool quick = false;
};
// which: fig4-1 or fig-av. Writes CSVs and prints the shape checks.
void cmd_reproduce(const std::string& which, const ReproduceOptions& opts, const std::filesystem::path& out_dir,
                   std::ostream& log);

nlohmann::json to_json(const GofReport& r);
nlohmann::json to_json(const CriterionResult& r);

}  // namespace crnlab::cli
