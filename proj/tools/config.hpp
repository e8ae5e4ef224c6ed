// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "crnlab/ode_limits.hpp"

namespace crnlab::cli {

// Schema or usage problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { chain, mminf, tandem, x4, u4, z4, r0, r1, vy, ode };
enum class Timescale { normal, sqrtN, overN, N_2_3 };
enum class Output { trajectory, occupation, cycles, gof, fit };

std::string to_string(Model m);
std::string to_string(Timescale t);
std::string to_string(Output o);

struct InitSpec {
  enum class Kind { none, counts, scaled, values };
  Kind kind = Kind::none;
  std::vector<std::int64_t> counts;
  std::vector<double> values;
  double y = 0.0;
  double v = 0.0;
  std::int64_t x1 = 0;
  std::int64_t x3 = 0;
};

struct OccupationSpec {
  std::size_t coord = 1;  // 1-based species index
  std::size_t bins = 64;
  double t0 = 0.0;
  std::optional<double> t1;  // defaults to t_end
  std::string value_scale = "sqrtN";  // one | sqrtN | N
};

struct ExperimentConfig {
  Model model = Model::chain;
  int m = 0;
  std::vector<double> kappa;
  InitSpec init;
  double t_end = 1.0;
  Timescale timescale = Timescale::normal;
  double N = 1e4;
  std::size_t replicas = 1;
  std::uint64_t seed = 1;
  std::set<Output> outputs;
  OccupationSpec occupation;
  OdeKind ode_kind = OdeKind::odd_averaged;
  double ode_h = 1e-3;
  std::size_t ode_stride = 1;

  // Real simulation horizon: t_end on the chosen clock.
  double horizon() const;
  // Initial integer state for the counting models.
  std::vector<std::int64_t> initial_state() const;
  double value_scale() const;
};

// Parses and validates; throws ConfigError with a path-like message.
ExperimentConfig parse_experiment(const nlohmann::json& j);
// Re-runs the semantic checks, e.g. after command-line overrides.
void validate(const ExperimentConfig& c);

struct LimitsConfig {
  enum class Kind { t_infinity, quadratic_decay, ode, gamma0 };
  Kind kind = Kind::t_infinity;
  std::vector<double> kappa;
  double y = 1.0;
  double step = 0.01;
  double t_max_fraction = 0.99;
  OdeSpec ode;
  double a = 1.0, b = 1.0, x_max = 10.0;
  std::size_t points = 101;
};

LimitsConfig parse_limits(const nlohmann::json& j);

nlohmann::json load_json(const std::filesystem::path& path);

// Top-level keys accepted by each config kind.
const std::set<std::string>& experiment_keys();
const std::set<std::string>& limits_keys();

}  // namespace crnlab::cli
