// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "crnlab/four_node.hpp"

namespace crnlab {

void OccupationGrid::validate() const {
  if (bins == 0) throw std::invalid_argument("OccupationGrid: empty grid");
  if (!(t1 > t0)) throw std::invalid_argument("OccupationGrid: t1 must exceed t0");
}

EmpiricalOccupation::EmpiricalOccupation(OccupationGrid grid, double scale)
    : grid_(grid), scale_(scale), bins_(grid.bins) {
  grid_.validate();
  if (!(scale > 0.0)) throw std::invalid_argument("EmpiricalOccupation: scale must be positive");
}

void EmpiricalOccupation::add(std::int64_t count, double s0, double s1) {
  s0 = std::max(s0, grid_.t0);
  s1 = std::min(s1, grid_.t1);
  if (!(s1 > s0)) return;
  const double w = grid_.width();
  auto i = static_cast<std::size_t>(std::floor((s0 - grid_.t0) / w));
  i = std::min(i, grid_.bins - 1);
  while (s0 < s1 && i < grid_.bins) {
    const double hi = std::min(s1, grid_.bin_end(i));
    if (hi > s0) bins_[i][count] += hi - s0;
    s0 = hi;
    ++i;
  }
}

void EmpiricalOccupation::merge(const EmpiricalOccupation& other) {
  if (other.grid_.bins != grid_.bins || other.grid_.t0 != grid_.t0 || other.grid_.t1 != grid_.t1 ||
      other.scale_ != scale_) {
    throw std::invalid_argument("EmpiricalOccupation::merge: incompatible grids");
  }
  for (std::size_t b = 0; b < bins_.size(); ++b)
    for (const auto& [c, wt] : other.bins_[b]) bins_[b][c] += wt;
}

double EmpiricalOccupation::weight(std::size_t bin) const {
  double w = 0.0;
  for (const auto& [c, wt] : bins_.at(bin)) w += wt;
  return w;
}

double EmpiricalOccupation::total_weight() const {
  double w = 0.0;
  for (std::size_t b = 0; b < bins_.size(); ++b) w += weight(b);
  return w;
}

std::vector<std::pair<double, double>> EmpiricalOccupation::samples(std::size_t bin) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(bins_.at(bin).size());
  for (const auto& [c, wt] : bins_[bin]) out.emplace_back(static_cast<double>(c) / scale_, wt);
  return out;
}

void EmpiricalOccupation::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "bin_start,bin_end,sample,weight\n";
  for (std::size_t b = 0; b < bins_.size(); ++b)
    for (const auto& [c, wt] : bins_[b])
      out << grid_.bin_start(b) << ',' << grid_.bin_end(b) << ',' << static_cast<double>(c) / scale_ << ',' << wt
          << '\n';
  if (!out) throw std::runtime_error("occupation CSV: write failed");
}

EmpiricalOccupation measure_occupation(const Trajectory& traj, std::size_t coord, double scale,
                                       const OccupationGrid& grid, double time_scale) {
  if (coord >= traj.dim()) throw std::out_of_range("measure_occupation: coordinate out of range");
  if (!(time_scale > 0.0)) throw std::invalid_argument("measure_occupation: time_scale must be positive");
  EmpiricalOccupation occ(grid, scale);
  traj.for_each_segment(
      [&](double a, double b, const State& x) { occ.add(x[coord], a / time_scale, b / time_scale); });
  return occ;
}

}  // namespace crnlab
