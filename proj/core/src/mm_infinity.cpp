// SPDX-License-Identifier: Apache-2.0
#include "crnlab/mm_infinity.hpp"

#include <cmath>
#include <stdexcept>

#include "crnlab/gillespie.hpp"

namespace crnlab {

void MMInfParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("MMInfParams: lambda must be >= 0");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("MMInfParams: mu must be > 0");
}

void TandemParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("TandemParams: lambda must be >= 0");
  if (mu.empty()) throw std::invalid_argument("TandemParams: need at least one station");
  for (double m : mu) {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("TandemParams: service rates must be > 0");
  }
}

double transient_poisson_param(const MMInfParams& params, double t) {
  params.validate();
  if (t < 0.0) throw std::invalid_argument("transient_poisson_param: t must be >= 0");
  return params.lambda / params.mu * -std::expm1(-params.mu * t);
}

namespace {

class TandemModel {
 public:
  explicit TandemModel(const TandemParams& p) : lambda_(p.lambda), mu_(p.mu) {}
  std::size_t channels() const { return mu_.size() + 1; }
  void rates(std::span<const std::int64_t> y, std::span<double> out) const {
    out[0] = lambda_;
    for (std::size_t k = 0; k < mu_.size(); ++k) out[k + 1] = mu_[k] * static_cast<double>(y[k]);
  }
  void fire(std::size_t ch, std::span<std::int64_t> y, std::span<std::int64_t> d, RngStream&) const {
    if (ch == 0) {
      d[0] = 1;
    } else {
      d[ch - 1] = -1;
      if (ch < mu_.size()) d[ch] = 1;
    }
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += d[k];
  }

 private:
  double lambda_;
  std::vector<double> mu_;
};

}  // namespace

Trajectory simulate_mminf(const MMInfParams& params, std::int64_t n0, double t_end, RngStream& rng) {
  params.validate();
  if (n0 < 0) throw std::invalid_argument("simulate_mminf: n0 must be >= 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate_mminf: t_end must be positive");
  return run_recorded(TandemModel(TandemParams{params.lambda, {params.mu}}), State{n0}, t_end, rng);
}

Trajectory simulate_tandem(const TandemParams& params, const State& y0, double t_end, RngStream& rng) {
  params.validate();
  if (y0.size() != params.mu.size()) throw std::invalid_argument("simulate_tandem: y0 dimension mismatch");
  for (auto v : y0) {
    if (v < 0) throw std::invalid_argument("simulate_tandem: negative initial count");
  }
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate_tandem: t_end must be positive");
  return run_recorded(TandemModel(params), y0, t_end, rng);
}

std::vector<double> tandem_invariant(const TandemParams& params) {
  params.validate();
  std::vector<double> out;
  out.reserve(params.mu.size());
  for (double m : params.mu) out.push_back(params.lambda / m);
  return out;
}

double time_average(const Trajectory& traj, std::size_t coord, double t_from) {
  if (coord >= traj.dim()) throw std::out_of_range("time_average: coordinate out of range");
  if (!(traj.t_end() > t_from)) throw std::invalid_argument("time_average: empty window");
  double acc = 0.0;
  traj.for_each_segment([&](double a, double b, const State& x) {
    const double lo = std::max(a, t_from);
    if (b > lo) acc += (b - lo) * static_cast<double>(x[coord]);
  });
  return acc / (traj.t_end() - t_from);
}

}  // namespace crnlab
