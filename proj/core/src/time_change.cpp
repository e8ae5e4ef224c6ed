// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <stdexcept>

#include "crnlab/four_node.hpp"

namespace crnlab {

void TimeChangeMap::add_gap(double at, double length) {
  if (!(length >= 0.0)) throw std::invalid_argument("TimeChangeMap: gap length must be >= 0");
  if (!gaps_.empty() && at < gaps_.back().at) throw std::invalid_argument("TimeChangeMap: gaps must be ordered");
  gaps_.push_back({at, length});
  total_ += length;
  cum_.push_back(total_);
}

double TimeChangeMap::original_time(double s) const {
  // Gaps positioned at or before s are already traversed.
  auto it = std::upper_bound(gaps_.begin(), gaps_.end(), s, [](double q, const Gap& g) { return q < g.at; });
  const auto n = static_cast<std::size_t>(it - gaps_.begin());
  return s + (n == 0 ? 0.0 : cum_[n - 1]);
}

double TimeChangeMap::changed_time(double t) const {
  // Find the last gap whose real start at + cum_before is <= t.
  double before = 0.0;
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    const double start_real = gaps_[i].at + before;
    if (t < start_real) return t - before;
    if (t < start_real + gaps_[i].length) return gaps_[i].at;
    before = cum_[i];
  }
  return t - before;
}

TimeChanged time_change_ell0(const Trajectory& x) {
  if (x.dim() < 3) throw std::invalid_argument("time_change_ell0: need at least 3 coordinates");
  return time_change_remove(x, [](const State& s) { return s[2] != 0; });
}

TimeChanged time_change_ell1(const Trajectory& u) {
  if (u.dim() < 3) throw std::invalid_argument("time_change_ell1: need at least 3 coordinates");
  return time_change_remove(u, [](const State& s) { return s[2] == 0; });
}

}  // namespace crnlab
