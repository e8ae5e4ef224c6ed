// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crnlab/rng.hpp"
#include "crnlab/trajectory.hpp"

namespace crnlab {

enum class OdeKind { fluid_chain, odd_averaged, three_fast, quadratic_decay };
std::string to_string(OdeKind k);
OdeKind ode_kind_from_string(const std::string& s);

// kappa layout per kind:
//   fluid_chain     kappa_0..kappa_{m+1}, init x_1..x_m (m >= 3)
//   odd_averaged    kappa_0..kappa_{m+1} with m = 2 init.size() - 1, init l_1, l_3, ..., l_m
//   three_fast      kappa_0..kappa_4, init (x_2, x_3)
//   quadratic_decay (k0, k3, k4, k5), init (y); u' = -(2/t_inf) sqrt(y u)
struct OdeSpec {
  OdeKind kind = OdeKind::fluid_chain;
  std::vector<double> kappa;
  std::vector<double> init;
  double t_end = 1.0;
  double h = 1e-3;
  double floor = 1e-6;            // odd_averaged halts when a coordinate drops below this
  std::size_t record_stride = 1;  // keep every k-th step (the last step is always kept)
  void validate() const;
};

struct SampledPath {
  std::vector<double> t;
  std::vector<std::vector<double>> x;
  bool floor_hit = false;

  std::size_t dim() const { return x.empty() ? 0 : x.front().size(); }
  // Linear interpolation of one coordinate; clamps outside the sampled range.
  double value_at(double time, std::size_t coord) const;
  void write_csv(const std::filesystem::path& path, const std::vector<std::string>& names = {}) const;
};

using OdeRhs = std::function<void(double t, const std::vector<double>& x, std::vector<double>& dx)>;
using OdeStop = std::function<bool(const std::vector<double>& x)>;

// Classical fixed-step RK4. Stops early (flagging floor_hit) when stop(x) holds.
SampledPath rk4(const OdeRhs& f, std::vector<double> x0, double t_end, double h, std::size_t stride = 1,
                const OdeStop& stop = nullptr);

// Right-hand side of the chosen system.
OdeRhs ode_rhs(const OdeSpec& spec);

SampledPath integrate(const OdeSpec& spec);

// sqrt(y) sqrt(2 k4) / (k5 sqrt(k3)) * Gamma(k0/(2 k5)) / Gamma(k0/(2 k5) + 1/2)
// for kappa = (k0, k3, k4, k5).
double t_infinity(const std::vector<double>& kappa, double y);
// y (1 - t/t_inf)^2 for 0 <= t < t_inf.
double quadratic_decay(double y, double t_inf, double t);

// One realization of exp(-k3 int_0^t L(s) ds) with L an M/M/inf queue of
// arrival rate k0 and service rate k4.
class Ell2Limit {
 public:
  Ell2Limit(Trajectory queue, double k3);
  double value_at(double t) const;
  SampledPath sample(double dt) const;
  const Trajectory& queue() const { return queue_; }

 private:
  Trajectory queue_;
  double k3_;
  std::vector<double> cum_;         // integral of L up to each event
  std::vector<std::int64_t> len_;  // L just after each event
};

Ell2Limit ell2_random_limit(double k0, double k3, double k4, double t_end, RngStream& rng,
                            std::int64_t L0 = 0);

}  // namespace crnlab
