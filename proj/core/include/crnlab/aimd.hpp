// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "crnlab/rng.hpp"

namespace crnlab {

// Gamma law with shape a and rate b: density b/Gamma(a) (bx)^(a-1) e^(-bx).
struct Gamma0Params {
  double a = 1.0;
  double b = 1.0;
  void validate() const;
};

double gamma0_density(const Gamma0Params& p, double x);
double gamma0_cdf(const Gamma0Params& p, double x);
double gamma0_quantile(const Gamma0Params& p, double q);
double gamma0_sample(const Gamma0Params& p, RngStream& rng);
double gamma0_mean(const Gamma0Params& p);
// E[exp(-xi X)] = (b / (b + xi))^a.
double gamma0_laplace(const Gamma0Params& p, double xi);
// E[sqrt(X)] = Gamma(a + 1/2) / (sqrt(b) Gamma(a)).
double gamma0_sqrt_moment(const Gamma0Params& p);

struct Aimd1Params {
  double alpha = 1.0;
  double beta = 1.0;
  void validate() const;
};

struct Aimd0Params {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  void validate() const;
};

// Rates (k0, k3, k4, k5) of the four-node network that drive V_y.
struct VyKappa {
  double k0 = 1.0;
  double k3 = 1.0;
  double k4 = 1.0;
  double k5 = 1.0;
  void validate() const;
};

// Real-valued piecewise-deterministic path: the flow between jumps is
// linear with slope +1 (R1) or exponential decay at rate 1/gamma (R0, V_y).
class AimdPath {
 public:
  enum class Flow { linear, decay };
  struct Jump {
    double t;
    double before;
    double after;
  };

  AimdPath(Flow flow, double rate, double v0, double t0);

  double value_at(double t) const;
  // Values at sorted query times.
  std::vector<double> values_at(const std::vector<double>& sorted_times) const;
  const std::vector<Jump>& jumps() const { return jumps_; }
  double v0() const { return v0_; }
  double t_start() const { return t0_; }
  double t_end() const { return t_end_; }
  Flow flow() const { return flow_; }

  double flow_from(double v, double dt) const;
  void add_jump(double t, double before, double after);
  void set_t_end(double t) { t_end_ = t; }

 private:
  Flow flow_;
  double rate_;
  double v0_;
  double t0_;
  double t_end_;
  std::vector<Jump> jumps_;
};

// Inter-jump time of R1 from value v given E ~ Exp(1): -v + sqrt(v^2 + 2E/alpha).
double r1_inter_jump(double v, double alpha, double e);
// One embedded step U^(1/beta) sqrt(v^2 + 2E/alpha) for given (U, E).
double r1_embedded_step(double v, const Aimd1Params& p, double u, double e);
double r1_embedded_step(double v, const Aimd1Params& p, RngStream& rng);

AimdPath simulate_r1(const Aimd1Params& p, double v0, double t_end, RngStream& rng);
AimdPath simulate_r0(const Aimd0Params& p, double v0, double t_end, RngStream& rng);

// R0 parameters equivalent to V_y: alpha = k0, gamma = 1/k5, beta = k4/(2 k3 y).
Aimd0Params vy_as_r0(double y, const VyKappa& k);
// Jump map of V_y: sqrt(x^2 + 2 (k3/k4) y E).
double vy_jump(double x, double y, const VyKappa& k, double e);
AimdPath simulate_vy(double y, const VyKappa& k, double v0, double t_end, RngStream& rng);

// (sqrt(v^2 + 2 (k3/k4) y E) - v) / (k3 y) for given E, and its sampler.
double h_yv(double y, double v, double k3, double k4, double e);
double sample_h_yv(double y, double v, double k3, double k4, RngStream& rng);

}  // namespace crnlab
