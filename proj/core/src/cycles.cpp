// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <stdexcept>

#include "crnlab/four_node.hpp"

namespace crnlab {

std::string to_string(CycleFlag f) {
  switch (f) {
    case CycleFlag::ok: return "ok";
    case CycleFlag::partial_start: return "partial_start";
    case CycleFlag::double_arrival: return "double_arrival";
    case CycleFlag::arrival_during_burst: return "arrival_during_burst";
    case CycleFlag::incomplete: return "incomplete";
  }
  return "unknown";
}

namespace {

enum class Phase { wait, transfer, burst };

struct Tracker {
  Phase phase = Phase::wait;
  CycleStats cur;
  double mark = 0.0;  // start time of the current phase
  std::int64_t x2_start = 0;
  std::int64_t x4_start = 0;

  void flag(CycleFlag f) {
    if (cur.flag == CycleFlag::ok) cur.flag = f;
  }
  void start_burst(double t, const State& x) {
    phase = Phase::burst;
    mark = t;
    x2_start = x[1];
    x4_start = x[3];
  }
};

}  // namespace

std::vector<CycleStats> extract_cycles(const Trajectory& traj) {
  if (traj.dim() != 4) throw std::invalid_argument("extract_cycles: expects the four-node process");
  std::vector<CycleStats> out;
  Tracker tr;
  State x = traj.initial();
  const double t0 = traj.t_start();
  if (x[2] >= 1) {
    tr.start_burst(t0, x);
    tr.flag(CycleFlag::partial_start);
  } else if (x[0] >= 1) {
    tr.phase = Phase::transfer;
    tr.mark = t0;
    tr.flag(CycleFlag::partial_start);
  } else {
    tr.mark = t0;
  }

  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.event(i).t;
    const std::int64_t x1_prev = x[0];
    const auto d = traj.delta(i);
    for (std::size_t k = 0; k < 4; ++k) x[k] += d[k];
    const bool arrival = x[0] > x1_prev;

    switch (tr.phase) {
      case Phase::wait:
        if (x[0] >= 1) {
          tr.cur.wait = t - tr.mark;
          if (x[0] >= 2) tr.flag(CycleFlag::double_arrival);
          tr.phase = Phase::transfer;
          tr.mark = t;
        }
        break;
      case Phase::transfer:
        if (arrival) tr.flag(CycleFlag::double_arrival);
        if (x[2] >= 1) {
          tr.cur.tau1 = t - tr.mark;
          tr.start_burst(t, x);
        }
        break;
      case Phase::burst:
        if (arrival) tr.flag(CycleFlag::arrival_during_burst);
        if (x[2] == 0) {
          tr.cur.tau2 = t - tr.mark;
          tr.cur.jump4 = x[3] - tr.x4_start;
          tr.cur.x2_drop = tr.x2_start - x[1];
          out.push_back(tr.cur);
          tr.cur = CycleStats{};
          tr.mark = t;
          if (x[0] >= 1) {
            // The next arrival happened during this burst: no waiting step.
            tr.phase = Phase::transfer;
            tr.flag(CycleFlag::arrival_during_burst);
          } else {
            tr.phase = Phase::wait;
          }
        }
        break;
    }
  }

  if (tr.phase != Phase::wait) {
    const double t = traj.t_end();
    if (tr.phase == Phase::transfer) {
      tr.cur.tau1 = t - tr.mark;
    } else {
      tr.cur.tau2 = t - tr.mark;
      tr.cur.jump4 = x[3] - tr.x4_start;
      tr.cur.x2_drop = tr.x2_start - x[1];
    }
    tr.cur.flag = CycleFlag::incomplete;
    out.push_back(tr.cur);
  }
  return out;
}

void write_cycles_csv(const std::vector<CycleStats>& cycles, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "cycle_idx,wait,tau1,tau2,jump4,x2_drop,flag\n";
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& c = cycles[i];
    out << i << ',' << c.wait << ',' << c.tau1 << ',' << c.tau2 << ',' << c.jump4 << ',' << c.x2_drop << ','
        << to_string(c.flag) << '\n';
  }
  if (!out) throw std::runtime_error("cycles CSV: write failed");
}

}  // namespace crnlab
