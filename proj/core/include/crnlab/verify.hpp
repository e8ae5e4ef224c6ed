// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crnlab/stats.hpp"

namespace crnlab {

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  bool quick = false;  // fewer replicas, same thresholds
  std::optional<std::filesystem::path> out_dir;
  unsigned threads = 0;
};

struct Metric {
  std::string name;
  double value = 0.0;
};

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::vector<Metric> metrics;
  std::vector<std::pair<std::string, GofReport>> reports;
  std::string note;
};

CriterionResult verify_a1(const VerifyOptions& o);   // AIMD stationary laws
CriterionResult verify_a2(const VerifyOptions& o);   // quadratic decay and t_inf
CriterionResult verify_a3(const VerifyOptions& o);   // burst duration law
CriterionResult verify_a4(const VerifyOptions& o);   // M/M/inf transient law
CriterionResult verify_a5(const VerifyOptions& o);   // averaged ODE
CriterionResult verify_a6(const VerifyOptions& o);   // tandem coupling
CriterionResult verify_a7(const VerifyOptions& o);   // occupation laws
CriterionResult verify_a8(const VerifyOptions& o);   // time-changed AIMD limit
CriterionResult verify_a9(const VerifyOptions& o);   // random limit, m = 3
CriterionResult verify_a10(const VerifyOptions& o);  // figure data shape checks

// Criterion ids ("A1".."A10") and suite names.
const std::vector<std::string>& criterion_ids();
const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown suite.
std::vector<std::string> suite_criteria(const std::string& suite);

CriterionResult run_criterion(const std::string& id, const VerifyOptions& o);
std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& o);

}  // namespace crnlab
