// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crnlab/gillespie.hpp"
#include "crnlab/rng.hpp"
#include "crnlab/trajectory.hpp"

namespace crnlab {

// Chain network 0 -> S1 -> S1+S2 -> ... -> Sm -> 0 under mass action, with
// rates kappa[0..m+1]. Channel i changes the state by:
//   0: +e1                       rate k0
//   1: +e2                       rate k1 x1
//   i in 2..m-1: +e(i+1) - e(i-1) rate ki x(i-1) x(i)
//   m: -e(m-1)                   rate km x(m-1) x(m)
//   m+1: -e(m)                   rate k(m+1) x(m)
struct ChainNetwork {
  int m = 0;
  std::vector<double> kappa;

  ChainNetwork() = default;
  ChainNetwork(int m_, std::vector<double> kappa_);
  std::size_t channels() const { return static_cast<std::size_t>(m) + 2; }
  // Throws std::invalid_argument unless m >= 2, kappa has m+2 finite entries >= 0.
  void validate() const;
};

struct Transition {
  State delta;
  double rate;
};

// All m+2 channels in order, zero-rate ones included.
std::vector<Transition> transition_rates(const ChainNetwork& net, std::span<const std::int64_t> x);

class ChainModel {
 public:
  explicit ChainModel(const ChainNetwork& net);
  std::size_t channels() const { return net_.channels(); }
  std::size_t dim() const { return static_cast<std::size_t>(net_.m); }
  void rates(std::span<const std::int64_t> x, std::span<double> out) const;
  void fire(std::size_t ch, std::span<std::int64_t> x, std::span<std::int64_t> delta, RngStream&) const;

 private:
  ChainNetwork net_;
};

Trajectory simulate_ssa(const ChainNetwork& net, const State& x0, double t_end, RngStream& rng);
RunStats simulate_ssa(const ChainNetwork& net, const State& x0, double t_end, RngStream& rng,
                      TrajectorySink& sink);

template <class Observer>
RunStats simulate_ssa_observed(const ChainNetwork& net, State& x, double t_end, RngStream& rng, Observer&& obs) {
  net.validate();
  return run_direct(ChainModel(net), std::span<std::int64_t>(x), 0.0, t_end, rng, std::forward<Observer>(obs));
}

// Parameters of the dominating tandem system for an odd chain m = 2p+1.
struct CouplingParams {
  double eta = 0.0;     // min over i = 1..p of x0[2i+1] / (2N)
  double lambda = 0.0;  // odd-index sum of x0 divided by N
};
CouplingParams coupling_defaults(const State& x0, double N);

struct CouplingResult {
  Trajectory x_path;
  Trajectory y_path;   // p stations
  bool held = true;    // partial-sum domination held at every event up to T_N
  double T_N = 0.0;    // first time some x[2i+1], 1 <= i <= p, drops below eta N
  bool reached_T_N = false;
  std::uint64_t events = 0;
};

// Simulates the chain X (kappa0 = 0, m odd) together with a tandem of p
// M/M/inf stations Y driven by the same Poisson measures: arrivals at
// k1 lambda N share channel 1, service at station k at k(2k+1) eta N Y_k
// shares channel 2k+1. Shared channels are realized by thinning a common
// clock at rate max(rX, rY). Stops at T_N or t_end.
CouplingResult couple_tandem(const ChainNetwork& net, const State& x0, double eta, double lambda, double N,
                             double t_end, RngStream& rng);

// True iff x[i] * x[i+1] <= tol for all adjacent pairs.
bool is_H0(std::span<const double> x, double tol);

}  // namespace crnlab
