// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "crnlab/rng.hpp"
#include "crnlab/trajectory.hpp"

namespace crnlab {

struct MMInfParams {
  double lambda = 0.0;  // arrival rate >= 0
  double mu = 1.0;      // per-customer service rate > 0
  void validate() const;
};

struct TandemParams {
  double lambda = 0.0;
  std::vector<double> mu;  // one positive rate per station
  void validate() const;
};

// Poisson parameter of the queue length at time t from an empty start:
// (lambda/mu)(1 - exp(-mu t)).
double transient_poisson_param(const MMInfParams& params, double t);

// Channels: 0 arrival, 1 departure.
Trajectory simulate_mminf(const MMInfParams& params, std::int64_t n0, double t_end, RngStream& rng);

// Channels: 0 arrival at station 1, k (1..p) service completion at station k
// (moves to k+1, leaves after station p).
Trajectory simulate_tandem(const TandemParams& params, const State& y0, double t_end, RngStream& rng);

// Product-Poisson invariant law: (lambda / mu_i)_i.
std::vector<double> tandem_invariant(const TandemParams& params);

// Time average of one coordinate over [t_from, t_end].
double time_average(const Trajectory& traj, std::size_t coord, double t_from);

}  // namespace crnlab
