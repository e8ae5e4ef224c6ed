// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>
#include <stdexcept>

#include "crnlab/four_node.hpp"

namespace crnlab {

void validate_kappa(const FourNodeKappa& k) {
  for (double v : k) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("four-node rates must be finite and >= 0");
  }
}

FourNodeInit FourNodeInit::scaled(double y, double v, double N, std::int64_t x1, std::int64_t x3) {
  if (!(N >= 1.0)) throw std::invalid_argument("FourNodeInit: N must be >= 1");
  FourNodeInit init;
  init.N = N;
  init.y_N = static_cast<std::int64_t>(std::floor(y * N));
  init.v_N = static_cast<std::int64_t>(std::floor(v * std::sqrt(N)));
  init.x1 = x1;
  init.x3 = x3;
  init.validate();
  return init;
}

void FourNodeInit::validate() const {
  if (y_N < 0 || v_N < 0 || x1 < 0 || x3 < 0) throw std::invalid_argument("FourNodeInit: counts must be >= 0");
  if (!(N >= 1.0)) throw std::invalid_argument("FourNodeInit: N must be >= 1");
}

double FourNodeInit::v() const { return static_cast<double>(v_N) / std::sqrt(N); }

Trajectory simulate_x4(const FourNodeKappa& k, const FourNodeInit& init, double t_end, RngStream& rng) {
  validate_kappa(k);
  init.validate();
  return simulate_ssa(ChainNetwork(4, std::vector<double>(k.begin(), k.end())), init.state(), t_end, rng);
}

UModel::UModel(const FourNodeKappa& k) : k_(k) { validate_kappa(k); }

void UModel::rates(std::span<const std::int64_t> u, std::span<double> out) const {
  const double u2 = static_cast<double>(u[1]), u3 = static_cast<double>(u[2]), u4 = static_cast<double>(u[3]);
  out[0] = k_[0];
  out[1] = k_[3] * u2 * u3;
  out[2] = k_[4] * u3 * u4;
  out[3] = k_[5] * u4;
}

void UModel::fire(std::size_t ch, std::span<std::int64_t> u, std::span<std::int64_t> d, RngStream&) const {
  switch (ch) {
    case 0: d[2] = 1; break;
    case 1: d[1] = -1; d[3] = 1; break;
    case 2: d[2] = -1; break;
    default: d[3] = -1; break;
  }
  for (std::size_t i = 0; i < 4; ++i) u[i] += d[i];
}

Trajectory simulate_u(const FourNodeKappa& k, const FourNodeInit& init, double t_end, RngStream& rng) {
  init.validate();
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate_u: t_end must be positive");
  return run_recorded(UModel(k), State{0, init.y_N, init.x3, init.v_N}, t_end, rng);
}

ZModel::ZModel(const FourNodeKappa& k) : k_(k) { validate_kappa(k); }

void ZModel::rates(std::span<const std::int64_t> z, std::span<double> out) const {
  const double z2 = static_cast<double>(z[1]), z3 = static_cast<double>(z[2]), z4 = static_cast<double>(z[3]);
  out[0] = k_[0];
  out[1] = k_[3] * z2 * z3;
  out[2] = z[2] >= 2 ? k_[4] * z3 * z4 : 0.0;
  out[3] = k_[5] * z4;
  out[4] = z[2] == 1 ? k_[4] * z4 : 0.0;
}

void ZModel::fire(std::size_t ch, std::span<std::int64_t> z, std::span<std::int64_t> d, RngStream& rng) const {
  switch (ch) {
    case 0: d[2] = 1; break;
    case 1: d[1] = -1; d[3] = 1; break;
    case 2: d[2] = -1; break;
    case 3: d[3] = -1; break;
    default: {
      const double a = k_[0] > 0.0 ? rng.exponential(k_[0]) : INFINITY;
      last_mark_ = a;
      d[3] = -thinning_count(z[3], a, k_[5], rng);
      break;
    }
  }
  for (std::size_t i = 0; i < 4; ++i) z[i] += d[i];
}

ZResult simulate_z(const FourNodeKappa& k, const State& z0, double t_end, RngStream& rng) {
  if (z0.size() != 4) throw std::invalid_argument("simulate_z: z0 must have 4 coordinates");
  if (z0[2] < 1) throw std::invalid_argument("simulate_z: z3 must be >= 1");
  for (auto v : z0) {
    if (v < 0) throw std::invalid_argument("simulate_z: negative initial count");
  }
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate_z: t_end must be positive");
  ZModel model(k);
  ZResult res;
  res.path = Trajectory(z0);
  State z = z0;
  const RunStats st = run_direct(model, std::span<std::int64_t>(z), 0.0, t_end, rng,
                                 [&](double t, std::int32_t ch, std::span<const std::int64_t>,
                                     std::span<const std::int64_t> d) {
                                   res.path.push(t, ch, d);
                                   if (ch == 4) res.h_map.add_gap(t, model.last_mark());
                                   return true;
                                 });
  res.path.set_t_end(st.t_final);
  return res;
}

std::int64_t thinning_count(std::int64_t n, double a, double rate, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("thinning_count: n must be >= 0");
  if (!(rate >= 0.0)) throw std::invalid_argument("thinning_count: rate must be >= 0");
  if (n == 0 || !(a > 0.0) || rate == 0.0) return 0;
  const double p = std::isinf(a) ? 1.0 : -std::expm1(-rate * a);
  if (p >= 1.0) return n;
  std::binomial_distribution<std::int64_t> bin(n, p);
  return bin(rng);
}

std::int64_t thinning_count_explicit(std::int64_t n, double a, double rate, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("thinning_count_explicit: n must be >= 0");
  if (!(rate >= 0.0)) throw std::invalid_argument("thinning_count_explicit: rate must be >= 0");
  if (n == 0 || !(a > 0.0) || rate == 0.0) return 0;
  std::int64_t c = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (rng.exponential(rate) <= a) ++c;
  }
  return c;
}

}  // namespace crnlab
