// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crnlab/aimd.hpp"
#include "crnlab/four_node.hpp"

namespace crnlab {

enum class GofTest { ks_one_sample, ks_two_sample, chi_square, sqrt_moment };
std::string to_string(GofTest t);

// pass <=> statistic <= threshold.
struct GofReport {
  GofTest test = GofTest::ks_one_sample;
  double statistic = 0.0;
  std::size_t n = 0;
  double threshold = 0.0;
  bool pass = false;
  double p_value = -1.0;  // asymptotic p-value where available, else -1
  std::size_t dof = 0;    // chi-square degrees of freedom after merging
};

struct GofOptions {
  double significance = 0.01;
  // When set, overrides the asymptotic critical value (e.g. a fixed D bound).
  std::optional<double> fixed_threshold;
};

// Minimum sample size accepted by the KS tests.
inline constexpr std::size_t kMinKsSamples = 30;

GofReport ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf,
                        const GofOptions& opts = {});
GofReport ks_two_sample(std::vector<double> a, std::vector<double> b, const GofOptions& opts = {});
// Two-sample D between weighted empirical laws (value, weight); n is the
// number of support points. Requires opts.fixed_threshold.
GofReport ks_two_sample_weighted(std::vector<std::pair<double, double>> a, std::vector<std::pair<double, double>> b,
                                 const GofOptions& opts);
// Weighted one-sample D. Requires opts.fixed_threshold.
GofReport ks_one_sample_weighted(std::vector<std::pair<double, double>> samples,
                                 const std::function<double(double)>& cdf, const GofOptions& opts);

// Pearson chi-square. probs must sum to one (include a tail cell). Adjacent cells are merged left to right until each expected count >= 5.
GofReport chi_square(std::span<const double> counts, std::span<const double> probs, const GofOptions& opts = {});

// Critical D of the one-sample KS test for n samples (Stephens' correction).
double ks_critical_value(double n, double significance);

struct FitResult {
  double t_inf_hat = 0.0;
  double rmse = 0.0;
  double guess = 0.0;
  bool monotone = true;  // false if the path rises by more than the noise band
};

// Least-squares fit of y (1 - t/tau)_+^2 over tau in [0.1, 10] x guess,
// coarse log grid then golden-section refinement.
FitResult fit_decay(std::span<const double> t, std::span<const double> u, double y, double noise_band = 0.05);

enum class OccupationFunctional { sqrt_moment, cdf_ks };

struct BinReport {
  std::size_t bin = 0;
  double s_mid = 0.0;
  bool skipped = false;  // empty bin or degenerate comparison
  double observed = 0.0;
  double expected = 0.0;
  GofReport report;
};

// Per-bin comparison of an occupation measure with a Gamma0 law for the
// square of the sampled value. sqrt_moment: relative error of the weighted
// mean against gamma0_sqrt_moment, pass when <= tolerance. cdf_ks: weighted
// D of the squared samples against the Gamma0 CDF, pass when <= tolerance.
std::vector<BinReport> compare_occupation(const EmpiricalOccupation& emp,
                                          const std::function<Gamma0Params(double s)>& law,
                                          OccupationFunctional functional, double tolerance);

// Mean and standard error.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(std::span<const double> v);

// Sawtooth detection on a sampled path: alternating troughs and peaks with
// hysteresis h. An excursion is trough -> peak -> next trough.
struct Excursion {
  double t_trough = 0.0;
  double t_peak = 0.0;
  double t_next = 0.0;
  double rise() const { return t_peak - t_trough; }
  double decay() const { return t_next - t_peak; }
};
std::vector<Excursion> find_excursions(std::span<const double> t, std::span<const double> v, double hysteresis);

std::vector<double> second_differences(std::span<const double> v);

}  // namespace crnlab
