// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace crnlab {

using State = std::vector<std::int64_t>;

// Reserved channel codes outside the reaction range.
inline constexpr std::int32_t kChannelInitial = -1;   // CSV row holding the initial state
inline constexpr std::int32_t kChannelEnd = -2;       // CSV row marking the horizon
inline constexpr std::int32_t kChannelCollapsed = -3; // removed excursion folded into one event

struct Event {
  double t;
  std::int32_t channel;
};

// Event-exact jump path: initial state plus (time, channel, delta) events on
// [t_start, t_end]. The path is right-continuous.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(State initial, double t_start = 0.0);

  std::size_t dim() const { return initial_.size(); }
  const State& initial() const { return initial_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const Event& event(std::size_t i) const { return events_[i]; }
  const std::vector<Event>& events() const { return events_; }
  std::span<const std::int64_t> delta(std::size_t i) const {
    return {deltas_.data() + i * dim(), dim()};
  }

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  void set_t_end(double t) { t_end_ = t; }

  void reserve(std::size_t events);
  void push(double t, std::int32_t channel, std::span<const std::int64_t> delta);

  State final_state() const;
  // State at time t (after all events with time <= t).
  State state_at(double t) const;
  // Values of one coordinate at sorted query times.
  std::vector<std::int64_t> coord_at(std::size_t coord, std::span<const double> sorted_times) const;

  // Calls f(t0, t1, state) for each constant piece, ending at t_end.
  template <class F>
  void for_each_segment(F&& f) const {
    State x = initial_;
    double t = t_start_;
    for (std::size_t i = 0; i < events_.size(); ++i) {
      f(t, events_[i].t, static_cast<const State&>(x));
      const auto d = delta(i);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] += d[k];
      t = events_[i].t;
    }
    if (t_end_ > t) f(t, t_end_, static_cast<const State&>(x));
  }

  // Integral of coordinate coord over [t_start, t_end].
  double time_integral(std::size_t coord) const;

  // Throws std::logic_error if times are not strictly increasing, fall outside
  // [t_start, t_end], or a coordinate goes negative.
  void validate() const;

 private:
  State initial_;
  double t_start_ = 0.0;
  double t_end_ = 0.0;
  std::vector<Event> events_;
  std::vector<std::int64_t> deltas_;
};

// Streaming consumer of a simulation. Receives the post-event state.
class TrajectorySink {
 public:
  virtual ~TrajectorySink() = default;
  virtual void begin(const State& initial, double t0) = 0;
  virtual void on_event(double t, std::int32_t channel, std::span<const std::int64_t> state,
                        std::span<const std::int64_t> delta) = 0;
  virtual void end(double t_end) = 0;
};

// Materializes into a Trajectory. Throws std::length_error past max_events;
// longer runs should stream to a file sink instead.
class TrajectoryRecorder final : public TrajectorySink {
 public:
  static constexpr std::size_t kDefaultMaxEvents = 10'000'000;
  explicit TrajectoryRecorder(std::size_t max_events = kDefaultMaxEvents) : max_events_(max_events) {}
  void begin(const State& initial, double t0) override;
  void on_event(double t, std::int32_t channel, std::span<const std::int64_t> state,
                std::span<const std::int64_t> delta) override;
  void end(double t_end) override;
  Trajectory take() { return std::move(traj_); }

 private:
  std::size_t max_events_;
  Trajectory traj_;
};

// CSV format v1: header `t,channel,x1,...,xm`; one row per event with the
// post-event state; the first row is the initial state (channel -1) and the
// last row the horizon (channel -2).
class CsvTrajectorySink final : public TrajectorySink {
 public:
  explicit CsvTrajectorySink(const std::filesystem::path& path);
  void begin(const State& initial, double t0) override;
  void on_event(double t, std::int32_t channel, std::span<const std::int64_t> state,
                std::span<const std::int64_t> delta) override;
  void end(double t_end) override;

 private:
  void row(double t, std::int32_t channel, std::span<const std::int64_t> state);
  std::ofstream out_;
  State last_;
};

// Binary format v1, little-endian:
//   magic "CRNTRAJ1" | u32 version | u32 dim | f64 t0 | i64[dim] initial
//   records: f64 t | i32 channel | i32 reserved | i64[dim] post-event state
//   terminated by a record with channel -2 whose t is the horizon.
class BinaryTrajectorySink final : public TrajectorySink {
 public:
  static constexpr std::uint32_t kVersion = 1;
  explicit BinaryTrajectorySink(const std::filesystem::path& path);
  void begin(const State& initial, double t0) override;
  void on_event(double t, std::int32_t channel, std::span<const std::int64_t> state,
                std::span<const std::int64_t> delta) override;
  void end(double t_end) override;

 private:
  void record(double t, std::int32_t channel, std::span<const std::int64_t> state);
  std::ofstream out_;
  State last_;
};

Trajectory read_csv_trajectory(const std::filesystem::path& path);
Trajectory read_binary_trajectory(const std::filesystem::path& path);
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);
// Replays a trajectory into a sink.
void replay(const Trajectory& traj, TrajectorySink& sink);

}  // namespace crnlab
