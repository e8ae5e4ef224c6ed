// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "crnlab/stats.hpp"

namespace crnlab {

// Snapshot of the four-node chain from (0, N, 0, 0) with all rates 1.
struct Fig41Options {
  double N = 1e4;
  double t_end = 20.0;  // normal time
  double hysteresis = 0.1;
  std::uint64_t seed = 1;
};

struct Fig41Data {
  double N = 0.0;
  std::vector<double> t;
  std::vector<double> x2;  // X2 / N
  std::vector<double> x4;  // X4 / sqrt(N)
  std::vector<Excursion> excursions;
};

Fig41Data fig4_1(const Fig41Options& opts);
// Excursions with rise < ratio * decay.
std::size_t sawtooth_count(const std::vector<Excursion>& ex, double ratio = 0.1);
// Writes fig4-1.csv (t, x2_over_N, x4_over_sqrtN) and fig4-1_excursions.csv.
void write_fig4_1(const Fig41Data& d, const std::filesystem::path& dir);

// Replica mean of X2(sqrt(N) t)/N and X4(sqrt(N) t)/sqrt(N) from (0, N, 0, 0).
struct FigAvOptions {
  double N = 1e4;
  std::size_t replicas = 1000;
  double step = 0.25;        // grid step on the sqrt(N) clock
  double horizon = 0.9;      // grid ends at horizon * t_inf
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct FigAvData {
  double N = 0.0;
  double t_inf = 0.0;
  std::vector<double> t;
  std::vector<double> x2_mean, x2_se;
  std::vector<double> x4_mean, x4_se;
  std::vector<double> x2_limit;  // (1 - t/t_inf)^2
};

FigAvData fig_av(const FigAvOptions& opts);
// Writes fig-av.csv.
void write_fig_av(const FigAvData& d, const std::filesystem::path& dir);

}  // namespace crnlab
