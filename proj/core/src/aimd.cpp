// SPDX-License-Identifier: Apache-2.0
#include "crnlab/aimd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "crnlab/special_functions.hpp"

namespace crnlab {

namespace {

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void Gamma0Params::validate() const {
  if (!positive(a) || !positive(b)) throw std::invalid_argument("Gamma0Params: a and b must be positive");
}

void Aimd1Params::validate() const {
  if (!positive(alpha) || !positive(beta)) throw std::invalid_argument("Aimd1Params: alpha and beta must be positive");
}

void Aimd0Params::validate() const {
  if (!(alpha >= 0.0) || !positive(beta) || !positive(gamma)) {
    throw std::invalid_argument("Aimd0Params: alpha must be >= 0, beta and gamma positive");
  }
}

void VyKappa::validate() const {
  if (!(k0 >= 0.0) || !positive(k3) || !positive(k4) || !positive(k5)) {
    throw std::invalid_argument("VyKappa: k0 must be >= 0, k3, k4, k5 positive");
  }
}

double gamma0_density(const Gamma0Params& p, double x) {
  p.validate();
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (p.a < 1.0) return INFINITY;
    return p.a == 1.0 ? p.b : 0.0;
  }
  const double bx = p.b * x;
  return std::exp(std::log(p.b) + (p.a - 1.0) * std::log(bx) - bx - log_gamma(p.a));
}

double gamma0_cdf(const Gamma0Params& p, double x) {
  p.validate();
  return x <= 0.0 ? 0.0 : gamma_p(p.a, p.b * x);
}

double gamma0_quantile(const Gamma0Params& p, double q) {
  p.validate();
  return gamma_p_inv(p.a, q) / p.b;
}

double gamma0_sample(const Gamma0Params& p, RngStream& rng) {
  p.validate();
  std::gamma_distribution<double> g(p.a, 1.0 / p.b);
  return g(rng);
}

double gamma0_mean(const Gamma0Params& p) {
  p.validate();
  return p.a / p.b;
}

double gamma0_laplace(const Gamma0Params& p, double xi) {
  p.validate();
  return std::pow(p.b / (p.b + xi), p.a);
}

double gamma0_sqrt_moment(const Gamma0Params& p) {
  p.validate();
  return std::exp(log_gamma(p.a + 0.5) - log_gamma(p.a)) / std::sqrt(p.b);
}

AimdPath::AimdPath(Flow flow, double rate, double v0, double t0)
    : flow_(flow), rate_(rate), v0_(v0), t0_(t0), t_end_(t0) {}

double AimdPath::flow_from(double v, double dt) const {
  return flow_ == Flow::linear ? v + dt : v * std::exp(-rate_ * dt);
}

void AimdPath::add_jump(double t, double before, double after) {
  jumps_.push_back({t, before, after});
  t_end_ = std::max(t_end_, t);
}

double AimdPath::value_at(double t) const {
  if (t < t0_) throw std::out_of_range("AimdPath::value_at: before start");
  // Last jump with time <= t.
  auto it = std::upper_bound(jumps_.begin(), jumps_.end(), t, [](double q, const Jump& j) { return q < j.t; });
  if (it == jumps_.begin()) return flow_from(v0_, t - t0_);
  --it;
  return flow_from(it->after, t - it->t);
}

std::vector<double> AimdPath::values_at(const std::vector<double>& sorted_times) const {
  std::vector<double> out;
  out.reserve(sorted_times.size());
  for (double t : sorted_times) out.push_back(value_at(t));
  return out;
}

double r1_inter_jump(double v, double alpha, double e) {
  // Solve v tau + tau^2/2 = e/alpha; written to avoid cancellation for large v.
  const double c = 2.0 * e / alpha;
  if (c == 0.0) return 0.0;
  return c / (v + std::sqrt(v * v + c));
}

double r1_embedded_step(double v, const Aimd1Params& p, double u, double e) {
  p.validate();
  return std::pow(u, 1.0 / p.beta) * std::sqrt(v * v + 2.0 * e / p.alpha);
}

double r1_embedded_step(double v, const Aimd1Params& p, RngStream& rng) {
  const double e = rng.exponential();
  const double u = rng.uniform();
  return r1_embedded_step(v, p, u, e);
}

AimdPath simulate_r1(const Aimd1Params& p, double v0, double t_end, RngStream& rng) {
  p.validate();
  if (!(v0 >= 0.0)) throw std::invalid_argument("simulate_r1: v0 must be >= 0");
  AimdPath path(AimdPath::Flow::linear, 1.0, v0, 0.0);
  double t = 0.0;
  double v = v0;
  for (;;) {
    const double e = rng.exponential();
    const double u = rng.uniform();
    const double tau = r1_inter_jump(v, p.alpha, e);
    if (t + tau >= t_end) break;
    t += tau;
    const double before = v + tau;
    v = std::pow(u, 1.0 / p.beta) * before;
    path.add_jump(t, before, v);
  }
  path.set_t_end(t_end);
  return path;
}

AimdPath simulate_r0(const Aimd0Params& p, double v0, double t_end, RngStream& rng) {
  p.validate();
  if (!(v0 >= 0.0)) throw std::invalid_argument("simulate_r0: v0 must be >= 0");
  AimdPath path(AimdPath::Flow::decay, 1.0 / p.gamma, v0, 0.0);
  if (p.alpha > 0.0) {
    double t = 0.0;
    double v = v0;
    for (;;) {
      const double dt = rng.exponential() / p.alpha;
      const double e = rng.exponential();
      if (t + dt >= t_end) break;
      t += dt;
      const double before = path.flow_from(v, dt);
      v = std::sqrt(before * before + e / p.beta);
      path.add_jump(t, before, v);
    }
  }
  path.set_t_end(t_end);
  return path;
}

Aimd0Params vy_as_r0(double y, const VyKappa& k) {
  k.validate();
  if (!positive(y)) throw std::invalid_argument("vy_as_r0: y must be positive");
  return Aimd0Params{k.k0, k.k4 / (2.0 * k.k3 * y), 1.0 / k.k5};
}

double vy_jump(double x, double y, const VyKappa& k, double e) {
  return std::sqrt(x * x + 2.0 * (k.k3 / k.k4) * y * e);
}

AimdPath simulate_vy(double y, const VyKappa& k, double v0, double t_end, RngStream& rng) {
  return simulate_r0(vy_as_r0(y, k), v0, t_end, rng);
}

double h_yv(double y, double v, double k3, double k4, double e) {
  if (!positive(y)) throw std::invalid_argument("h_yv: y must be positive");
  if (!positive(k3) || !positive(k4)) throw std::invalid_argument("h_yv: k3 and k4 must be positive");
  if (!(v >= 0.0)) throw std::invalid_argument("h_yv: v must be >= 0");
  const double c = 2.0 * (k3 / k4) * y * e;
  if (c == 0.0) return 0.0;
  // sqrt(v^2 + c) - v = c / (sqrt(v^2 + c) + v)
  return c / (std::sqrt(v * v + c) + v) / (k3 * y);
}

double sample_h_yv(double y, double v, double k3, double k4, RngStream& rng) {
  return h_yv(y, v, k3, k4, rng.exponential());
}

}  // namespace crnlab
