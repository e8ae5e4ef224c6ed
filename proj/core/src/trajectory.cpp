// SPDX-License-Identifier: Apache-2.0
#include "crnlab/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace crnlab {

Trajectory::Trajectory(State initial, double t_start)
    : initial_(std::move(initial)), t_start_(t_start), t_end_(t_start) {}

void Trajectory::reserve(std::size_t events) {
  events_.reserve(events);
  deltas_.reserve(events * dim());
}

void Trajectory::push(double t, std::int32_t channel, std::span<const std::int64_t> delta) {
  if (delta.size() != dim()) throw std::invalid_argument("Trajectory::push: delta dimension mismatch");
  events_.push_back({t, channel});
  deltas_.insert(deltas_.end(), delta.begin(), delta.end());
  if (t > t_end_) t_end_ = t;
}

State Trajectory::final_state() const {
  State x = initial_;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const auto d = delta(i);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += d[k];
  }
  return x;
}

State Trajectory::state_at(double t) const {
  State x = initial_;
  for (std::size_t i = 0; i < events_.size() && events_[i].t <= t; ++i) {
    const auto d = delta(i);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += d[k];
  }
  return x;
}

std::vector<std::int64_t> Trajectory::coord_at(std::size_t coord,
                                               std::span<const double> sorted_times) const {
  if (coord >= dim()) throw std::out_of_range("Trajectory::coord_at: coordinate out of range");
  std::vector<std::int64_t> out;
  out.reserve(sorted_times.size());
  std::int64_t v = initial_[coord];
  std::size_t i = 0;
  for (double q : sorted_times) {
    while (i < events_.size() && events_[i].t <= q) {
      v += deltas_[i * dim() + coord];
      ++i;
    }
    out.push_back(v);
  }
  return out;
}

double Trajectory::time_integral(std::size_t coord) const {
  double acc = 0.0;
  for_each_segment([&](double a, double b, const State& x) { acc += (b - a) * static_cast<double>(x[coord]); });
  return acc;
}

void Trajectory::validate() const {
  State x = initial_;
  for (auto v : x) {
    if (v < 0) throw std::logic_error("Trajectory: negative initial coordinate");
  }
  double prev = t_start_;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const double t = events_[i].t;
    if (!(t > prev) && !(i == 0 && t >= prev)) throw std::logic_error("Trajectory: event times not increasing");
    if (t > t_end_) throw std::logic_error("Trajectory: event after horizon");
    prev = t;
    const auto d = delta(i);
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] += d[k];
      if (x[k] < 0) throw std::logic_error("Trajectory: negative coordinate at event " + std::to_string(i));
    }
  }
}

void TrajectoryRecorder::begin(const State& initial, double t0) { traj_ = Trajectory(initial, t0); }

void TrajectoryRecorder::on_event(double t, std::int32_t channel, std::span<const std::int64_t>,
                                  std::span<const std::int64_t> delta) {
  if (traj_.size() >= max_events_) {
    throw std::length_error("TrajectoryRecorder: event cap exceeded; stream to a file sink instead");
  }
  traj_.push(t, channel, delta);
}

void TrajectoryRecorder::end(double t_end) { traj_.set_t_end(t_end); }

namespace {

void open_or_throw(std::ofstream& out, const std::filesystem::path& path, std::ios::openmode mode) {
  out.open(path, mode);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
}

template <class T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("binary trajectory: truncated stream");
  return v;
}

constexpr char kMagic[8] = {'C', 'R', 'N', 'T', 'R', 'A', 'J', '1'};

}  // namespace

CsvTrajectorySink::CsvTrajectorySink(const std::filesystem::path& path) {
  open_or_throw(out_, path, std::ios::out | std::ios::trunc);
  out_.precision(17);
}

void CsvTrajectorySink::row(double t, std::int32_t channel, std::span<const std::int64_t> state) {
  out_ << t << ',' << channel;
  for (auto v : state) out_ << ',' << v;
  out_ << '\n';
}

void CsvTrajectorySink::begin(const State& initial, double t0) {
  out_ << "t,channel";
  for (std::size_t k = 0; k < initial.size(); ++k) out_ << ",x" << (k + 1);
  out_ << '\n';
  last_ = initial;
  row(t0, kChannelInitial, initial);
}

void CsvTrajectorySink::on_event(double t, std::int32_t channel, std::span<const std::int64_t> state,
                                 std::span<const std::int64_t>) {
  std::copy(state.begin(), state.end(), last_.begin());
  row(t, channel, state);
}

void CsvTrajectorySink::end(double t_end) {
  row(t_end, kChannelEnd, last_);
  out_.flush();
  if (!out_) throw std::runtime_error("CSV trajectory sink: write failed");
}

BinaryTrajectorySink::BinaryTrajectorySink(const std::filesystem::path& path) {
  open_or_throw(out_, path, std::ios::out | std::ios::trunc | std::ios::binary);
}

void BinaryTrajectorySink::record(double t, std::int32_t channel, std::span<const std::int64_t> state) {
  put(out_, t);
  put(out_, channel);
  put(out_, std::int32_t{0});
  for (auto v : state) put(out_, v);
}

void BinaryTrajectorySink::begin(const State& initial, double t0) {
  out_.write(kMagic, sizeof(kMagic));
  put(out_, kVersion);
  put(out_, static_cast<std::uint32_t>(initial.size()));
  put(out_, t0);
  for (auto v : initial) put(out_, v);
  last_ = initial;
}

void BinaryTrajectorySink::on_event(double t, std::int32_t channel, std::span<const std::int64_t> state,
                                    std::span<const std::int64_t>) {
  std::copy(state.begin(), state.end(), last_.begin());
  record(t, channel, state);
}

void BinaryTrajectorySink::end(double t_end) {
  record(t_end, kChannelEnd, last_);
  out_.flush();
  if (!out_) throw std::runtime_error("binary trajectory sink: write failed");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

// Rebuilds deltas from consecutive post-event states.
class StateReplayBuilder {
 public:
  void initial(State x, double t0) {
    prev_ = x;
    traj_ = Trajectory(std::move(x), t0);
  }
  void event(double t, std::int32_t ch, const State& x) {
    State d(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) d[k] = x[k] - prev_[k];
    traj_.push(t, ch, d);
    prev_ = x;
  }
  void end(double t) { traj_.set_t_end(t); }
  Trajectory take() { return std::move(traj_); }

 private:
  State prev_;
  Trajectory traj_;
};

}  // namespace

Trajectory read_csv_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV trajectory: empty file");
  const auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "t" || header[1] != "channel") {
    throw std::runtime_error("CSV trajectory: bad header");
  }
  const std::size_t dim = header.size() - 2;
  StateReplayBuilder b;
  bool started = false, ended = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != dim + 2) throw std::runtime_error("CSV trajectory: bad row width");
    const double t = std::stod(cells[0]);
    const auto ch = static_cast<std::int32_t>(std::stol(cells[1]));
    State x(dim);
    for (std::size_t k = 0; k < dim; ++k) x[k] = std::stoll(cells[k + 2]);
    if (!started) {
      if (ch != kChannelInitial) throw std::runtime_error("CSV trajectory: missing initial row");
      b.initial(std::move(x), t);
      started = true;
    } else if (ch == kChannelEnd) {
      b.end(t);
      ended = true;
    } else {
      b.event(t, ch, x);
    }
  }
  if (!started || !ended) throw std::runtime_error("CSV trajectory: truncated file");
  return b.take();
}

Trajectory read_binary_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("binary trajectory: bad magic");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != BinaryTrajectorySink::kVersion) throw std::runtime_error("binary trajectory: unsupported version");
  const auto dim = get<std::uint32_t>(in);
  const auto t0 = get<double>(in);
  State x(dim);
  for (auto& v : x) v = get<std::int64_t>(in);
  StateReplayBuilder b;
  b.initial(x, t0);
  for (;;) {
    const auto t = get<double>(in);
    const auto ch = get<std::int32_t>(in);
    (void)get<std::int32_t>(in);
    for (auto& v : x) v = get<std::int64_t>(in);
    if (ch == kChannelEnd) {
      b.end(t);
      break;
    }
    b.event(t, ch, x);
  }
  return b.take();
}

void replay(const Trajectory& traj, TrajectorySink& sink) {
  State x = traj.initial();
  sink.begin(x, traj.t_start());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto d = traj.delta(i);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += d[k];
    sink.on_event(traj.event(i).t, traj.event(i).channel, x, d);
  }
  sink.end(traj.t_end());
}

void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
  CsvTrajectorySink sink(path);
  replay(traj, sink);
}

}  // namespace crnlab
