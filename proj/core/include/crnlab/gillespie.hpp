// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "crnlab/rng.hpp"
#include "crnlab/trajectory.hpp"

namespace crnlab {

struct RunStats {
  std::uint64_t events = 0;
  double t_final = 0.0;   // horizon, or time of the event that stopped the run
  bool stopped = false;   // observer requested a stop
};

// A model provides
//   std::size_t channels() const;
//   void rates(std::span<const std::int64_t> x, std::span<double> out) const;
//   void fire(std::size_t ch, std::span<std::int64_t> x, std::span<std::int64_t> delta, RngStream&) const;
// fire applies the transition to x and writes the increment to delta (pre-zeroed).
//
// The observer is called after each event as obs(t, channel, x, delta) and
// returns false to stop the run.
template <class Model, class Observer>
RunStats run_direct(const Model& model, std::span<std::int64_t> x, double t0, double t_end, RngStream& rng,
                    Observer&& obs) {
  const std::size_t k = model.channels();
  std::vector<double> r(k);
  std::vector<std::int64_t> delta(x.size());
  RunStats st;
  double t = t0;
  for (;;) {
    model.rates(x, r);
    double total = 0.0;
    for (double v : r) total += v;
    if (!(total > 0.0)) break;
    t += rng.exponential() / total;
    if (t >= t_end) break;
    double u = rng.uniform() * total;
    std::size_t ch = 0;
    for (; ch + 1 < k; ++ch) {
      if (u < r[ch]) break;
      u -= r[ch];
    }
    // Guard against rounding that lands on a trailing zero-rate channel.
    while (r[ch] <= 0.0 && ch > 0) --ch;
    std::fill(delta.begin(), delta.end(), 0);
    model.fire(ch, x, delta, rng);
    ++st.events;
    if (!obs(t, static_cast<std::int32_t>(ch), std::span<const std::int64_t>(x.data(), x.size()),
             std::span<const std::int64_t>(delta))) {
      st.stopped = true;
      st.t_final = t;
      return st;
    }
  }
  st.t_final = t_end;
  return st;
}

// Runs a model from x0 and forwards events to a sink.
template <class Model>
RunStats run_to_sink(const Model& model, const State& x0, double t_end, RngStream& rng, TrajectorySink& sink) {
  State x = x0;
  sink.begin(x0, 0.0);
  const RunStats st = run_direct(model, x, 0.0, t_end, rng,
                                 [&](double t, std::int32_t ch, std::span<const std::int64_t> s,
                                     std::span<const std::int64_t> d) {
                                   sink.on_event(t, ch, s, d);
                                   return true;
                                 });
  sink.end(st.t_final);
  return st;
}

template <class Model>
Trajectory run_recorded(const Model& model, const State& x0, double t_end, RngStream& rng) {
  TrajectoryRecorder rec;
  run_to_sink(model, x0, t_end, rng, rec);
  return rec.take();
}

// Records events while obs(t, ch, x, delta) returns true; the trajectory ends
// at the stopping event or at t_end.
template <class Model, class Observer>
Trajectory run_recorded_until(const Model& model, const State& x0, double t_end, RngStream& rng, Observer&& obs) {
  Trajectory traj(x0, 0.0);
  State x = x0;
  const RunStats st = run_direct(model, x, 0.0, t_end, rng,
                                 [&](double t, std::int32_t ch, std::span<const std::int64_t> s,
                                     std::span<const std::int64_t> d) {
                                   traj.push(t, ch, d);
                                   return obs(t, ch, s, d);
                                 });
  traj.set_t_end(st.t_final);
  return traj;
}

}  // namespace crnlab
