// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crnlab/chain_network.hpp"
#include "crnlab/gillespie.hpp"
#include "crnlab/rng.hpp"
#include "crnlab/trajectory.hpp"

namespace crnlab {

// kappa_0 .. kappa_5 of the four-species chain.
using FourNodeKappa = std::array<double, 6>;
void validate_kappa(const FourNodeKappa& k);

// Initial state (x1, y_N, x3, v_N) with y_N ~ yN and v_N ~ v sqrt(N).
struct FourNodeInit {
  std::int64_t y_N = 0;
  std::int64_t v_N = 0;
  std::int64_t x1 = 0;
  std::int64_t x3 = 0;
  double N = 1.0;

  static FourNodeInit scaled(double y, double v, double N, std::int64_t x1 = 0, std::int64_t x3 = 0);
  void validate() const;
  State state() const { return {x1, y_N, x3, v_N}; }
  double y() const { return static_cast<double>(y_N) / N; }
  double v() const;
};

// Full process X: the m = 4 chain. Coordinates are 0-based (x1 is index 0).
Trajectory simulate_x4(const FourNodeKappa& k, const FourNodeInit& init, double t_end, RngStream& rng);

template <class Observer>
RunStats simulate_x4_observed(const FourNodeKappa& k, State& x, double t_end, RngStream& rng, Observer&& obs) {
  validate_kappa(k);
  ChainNetwork net(4, std::vector<double>(k.begin(), k.end()));
  return run_direct(ChainModel(net), std::span<std::int64_t>(x), 0.0, t_end, rng, std::forward<Observer>(obs));
}

// Reduced process U (u1 = 0 always; 4 coordinates kept for alignment with X).
// Channels: 0 u3+1 at k0; 1 u2-1,u4+1 at k3 u2 u3; 2 u3-1 at k4 u3 u4; 3 u4-1 at k5 u4.
class UModel {
 public:
  explicit UModel(const FourNodeKappa& k);
  std::size_t channels() const { return 4; }
  void rates(std::span<const std::int64_t> u, std::span<double> out) const;
  void fire(std::size_t ch, std::span<std::int64_t> u, std::span<std::int64_t> d, RngStream&) const;

 private:
  FourNodeKappa k_;
};

// init gives U(0) = (0, y_N, x3, v_N).
Trajectory simulate_u(const FourNodeKappa& k, const FourNodeInit& init, double t_end, RngStream& rng);

// Piecewise-constant time change built from removed (or inserted) gaps.
// Each gap sits at a point `at` of the changed clock and has a real-time
// length. original_time is the right-continuous inverse ell, changed_time is L.
class TimeChangeMap {
 public:
  struct Gap {
    double at;
    double length;
  };

  void add_gap(double at, double length);
  const std::vector<Gap>& gaps() const { return gaps_; }
  double total_gap() const { return total_; }

  double original_time(double s) const;
  double changed_time(double t) const;

 private:
  std::vector<Gap> gaps_;
  std::vector<double> cum_;  // cumulative gap length through gap i
  double total_ = 0.0;
};

// Z process: U seen only while u3 >= 1, with the excursions of u3 at 0
// replaced by batch departures. Channels: 0..3 as UModel (channel 2 only when
// z3 >= 2) and 4 = batch event at k4 z4 when z3 = 1.
class ZModel {
 public:
  explicit ZModel(const FourNodeKappa& k);
  std::size_t channels() const { return 5; }
  void rates(std::span<const std::int64_t> z, std::span<double> out) const;
  void fire(std::size_t ch, std::span<std::int64_t> z, std::span<std::int64_t> d, RngStream& rng) const;
  // Exp(k0) mark drawn by the most recent batch event.
  double last_mark() const { return last_mark_; }

 private:
  FourNodeKappa k_;
  mutable double last_mark_ = 0.0;
};

struct ZResult {
  Trajectory path;
  TimeChangeMap h_map;  // H_N(t) = h_map.original_time(t)
};

// z0 = (0, z2, z3, z4) with z3 >= 1.
ZResult simulate_z(const FourNodeKappa& k, const State& z0, double t_end, RngStream& rng);

// Number of n i.i.d. Exp(rate) marks that are <= a, sampled as
// Binomial(n, 1 - exp(-rate a)).
std::int64_t thinning_count(std::int64_t n, double a, double rate, RngStream& rng);
// Same law by drawing the n marks explicitly.
std::int64_t thinning_count_explicit(std::int64_t n, double a, double rate, RngStream& rng);

struct TimeChanged {
  Trajectory path;
  TimeChangeMap map;
};

// Removes the time spent in states where removed(state) is true. Each removed
// excursion becomes one event with channel kChannelCollapsed carrying the net
// change; an excursion under way at t = t_start is folded into the initial
// state, and one still under way at t_end is dropped.
template <class Pred>
TimeChanged time_change_remove(const Trajectory& traj, Pred&& removed);

// Removes the intervals where x3 != 0.
TimeChanged time_change_ell0(const Trajectory& x);
// Removes the intervals where u3 = 0.
TimeChanged time_change_ell1(const Trajectory& u);

enum class CycleFlag : std::uint8_t {
  ok = 0,
  partial_start,          // path did not start at (x1, x3) = (0, 0)
  double_arrival,         // x1 reached 2 before the transfer
  arrival_during_burst,   // x1 increased while x3 >= 1
  incomplete,             // path ended inside the cycle
};
std::string to_string(CycleFlag f);

struct CycleStats {
  double wait = 0.0;   // (0,0) until the arrival in x1
  double tau1 = 0.0;   // arrival until x3 becomes positive
  double tau2 = 0.0;   // x3 positive until x3 returns to 0
  std::int64_t jump4 = 0;
  std::int64_t x2_drop = 0;
  CycleFlag flag = CycleFlag::ok;
};

std::vector<CycleStats> extract_cycles(const Trajectory& x);
void write_cycles_csv(const std::vector<CycleStats>& cycles, const std::filesystem::path& path);

// Uniform time bins on [t0, t1].
struct OccupationGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  std::size_t bins = 64;

  double width() const { return (t1 - t0) / static_cast<double>(bins); }
  double bin_start(std::size_t i) const { return t0 + width() * static_cast<double>(i); }
  double bin_end(std::size_t i) const { return i + 1 == bins ? t1 : bin_start(i + 1); }
  double mid(std::size_t i) const { return 0.5 * (bin_start(i) + bin_end(i)); }
  void validate() const;
};

// Sojourn-time-weighted law of count/scale in each time bin. Stored exactly as
// a weight per integer count.
class EmpiricalOccupation {
 public:
  EmpiricalOccupation(OccupationGrid grid, double scale);

  const OccupationGrid& grid() const { return grid_; }
  double scale() const { return scale_; }
  std::size_t bins() const { return grid_.bins; }

  // Adds count held over the (rescaled) interval [s0, s1).
  void add(std::int64_t count, double s0, double s1);
  void merge(const EmpiricalOccupation& other);

  double weight(std::size_t bin) const;
  double total_weight() const;
  // Weighted mean of f(count / scale).
  template <class F>
  double mean(std::size_t bin, F&& f) const {
    double w = 0.0, acc = 0.0;
    for (const auto& [c, wt] : bins_[bin]) {
      w += wt;
      acc += wt * f(static_cast<double>(c) / scale_);
    }
    return w > 0.0 ? acc / w : 0.0;
  }
  // Sum over bins of weight * f(value): the time integral of f(path).
  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (const auto& b : bins_)
      for (const auto& [c, wt] : b) acc += wt * f(static_cast<double>(c) / scale_);
    return acc;
  }
  // (value, weight) pairs sorted by value.
  std::vector<std::pair<double, double>> samples(std::size_t bin) const;

  void write_csv(const std::filesystem::path& path) const;

 private:
  OccupationGrid grid_;
  double scale_;
  std::vector<std::map<std::int64_t, double>> bins_;
};

// Occupation of traj[coord] / scale; trajectory time t maps to t / time_scale.
EmpiricalOccupation measure_occupation(const Trajectory& traj, std::size_t coord, double scale,
                                       const OccupationGrid& grid, double time_scale = 1.0);

// ---- implementation of the time-change template ----

template <class Pred>
TimeChanged time_change_remove(const Trajectory& traj, Pred&& removed) {
  TimeChanged out;
  State x = traj.initial();
  const std::size_t dim = traj.dim();
  std::size_t i = 0;
  const double t0 = traj.t_start();
  double excursion_start = t0;

  // Fold an initial excursion into the starting state.
  if (removed(static_cast<const State&>(x))) {
    while (i < traj.size() && removed(static_cast<const State&>(x))) {
      const auto d = traj.delta(i);
      for (std::size_t k = 0; k < dim; ++k) x[k] += d[k];
      excursion_start = traj.event(i).t;
      ++i;
    }
    if (removed(static_cast<const State&>(x))) {
      // Never leaves the removed set: empty changed path.
      out.path = Trajectory(traj.initial(), t0);
      return out;
    }
    out.map.add_gap(t0, excursion_start - t0);
  }
  out.path = Trajectory(x, t0);

  double removed_total = excursion_start - t0;  // real time removed so far
  bool inside = false;
  double enter_real = 0.0;
  double enter_changed = 0.0;
  State before(dim), d_acc(dim);
  for (; i < traj.size(); ++i) {
    const double t = traj.event(i).t;
    const auto d = traj.delta(i);
    if (!inside) {
      before = x;
      for (std::size_t k = 0; k < dim; ++k) x[k] += d[k];
      if (removed(static_cast<const State&>(x))) {
        inside = true;
        enter_real = t;
        enter_changed = t - removed_total;
      } else {
        out.path.push(t - removed_total, traj.event(i).channel, d);
      }
    } else {
      for (std::size_t k = 0; k < dim; ++k) x[k] += d[k];
      if (!removed(static_cast<const State&>(x))) {
        inside = false;
        for (std::size_t k = 0; k < dim; ++k) d_acc[k] = x[k] - before[k];
        out.path.push(enter_changed, kChannelCollapsed, d_acc);
        out.map.add_gap(enter_changed, t - enter_real);
        removed_total += t - enter_real;
      }
    }
  }
  out.path.set_t_end(inside ? enter_changed : traj.t_end() - removed_total);
  return out;
}

}  // namespace crnlab
