// SPDX-License-Identifier: Apache-2.0
#include "crnlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "crnlab/special_functions.hpp"

namespace crnlab {

std::string to_string(GofTest t) {
  switch (t) {
    case GofTest::ks_one_sample: return "ks_one_sample";
    case GofTest::ks_two_sample: return "ks_two_sample";
    case GofTest::chi_square: return "chi_square";
    case GofTest::sqrt_moment: return "sqrt_moment";
  }
  return "unknown";
}

namespace {

double stephens(double n) { return std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n); }

GofReport finish_ks(GofTest test, double d, std::size_t n, double n_eff, const GofOptions& opts) {
  GofReport r;
  r.test = test;
  r.statistic = d;
  r.n = n;
  r.p_value = kolmogorov_q(stephens(n_eff) * d);
  r.threshold = opts.fixed_threshold ? *opts.fixed_threshold : ks_critical_value(n_eff, opts.significance);
  r.pass = r.statistic <= r.threshold;
  return r;
}

void check_ks_size(std::size_t n, const char* who) {
  if (n < kMinKsSamples) {
    throw std::invalid_argument(std::string(who) + ": need at least " + std::to_string(kMinKsSamples) + " samples");
  }
}

using Weighted = std::vector<std::pair<double, double>>;

void normalize(Weighted& w, const char* who) {
  std::sort(w.begin(), w.end());
  double total = 0.0;
  for (const auto& [v, wt] : w) {
    if (!(wt >= 0.0)) throw std::invalid_argument(std::string(who) + ": negative weight");
    total += wt;
  }
  if (!(total > 0.0)) throw std::invalid_argument(std::string(who) + ": zero total weight");
  for (auto& p : w) p.second /= total;
}

}  // namespace

double ks_critical_value(double n, double significance) {
  if (!(n > 0.0)) throw std::invalid_argument("ks_critical_value: n must be positive");
  return kolmogorov_q_inv(significance) / stephens(n);
}

GofReport ks_one_sample(std::vector<double> s, const std::function<double(double)>& cdf, const GofOptions& opts) {
  check_ks_size(s.size(), "ks_one_sample");
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return finish_ks(GofTest::ks_one_sample, d, s.size(), n, opts);
}

GofReport ks_two_sample(std::vector<double> a, std::vector<double> b, const GofOptions& opts) {
  check_ks_size(a.size(), "ks_two_sample");
  check_ks_size(b.size(), "ks_two_sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return finish_ks(GofTest::ks_two_sample, d, a.size() + b.size(), na * nb / (na + nb), opts);
}

GofReport ks_two_sample_weighted(Weighted a, Weighted b, const GofOptions& opts) {
  if (!opts.fixed_threshold) throw std::invalid_argument("ks_two_sample_weighted: needs a fixed threshold");
  normalize(a, "ks_two_sample_weighted");
  normalize(b, "ks_two_sample_weighted");
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, d = 0.0;
  while (i < a.size() || j < b.size()) {
    double v;
    if (i == a.size()) v = b[j].first;
    else if (j == b.size()) v = a[i].first;
    else v = std::min(a[i].first, b[j].first);
    while (i < a.size() && a[i].first == v) fa += a[i++].second;
    while (j < b.size() && b[j].first == v) fb += b[j++].second;
    d = std::max(d, std::abs(fa - fb));
  }
  GofReport r;
  r.test = GofTest::ks_two_sample;
  r.statistic = d;
  r.n = a.size() + b.size();
  r.threshold = *opts.fixed_threshold;
  r.pass = d <= r.threshold;
  return r;
}

GofReport ks_one_sample_weighted(Weighted s, const std::function<double(double)>& cdf, const GofOptions& opts) {
  if (!opts.fixed_threshold) throw std::invalid_argument("ks_one_sample_weighted: needs a fixed threshold");
  normalize(s, "ks_one_sample_weighted");
  double f_emp = 0.0, d = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    const double v = s[i].first;
    const double f = cdf(v);
    const double before = f_emp;
    while (i < s.size() && s[i].first == v) f_emp += s[i++].second;
    d = std::max({d, std::abs(f - before), std::abs(f_emp - f)});
  }
  GofReport r;
  r.test = GofTest::ks_one_sample;
  r.statistic = d;
  r.n = s.size();
  r.threshold = *opts.fixed_threshold;
  r.pass = d <= r.threshold;
  return r;
}

GofReport chi_square(std::span<const double> counts, std::span<const double> probs, const GofOptions& opts) {
  if (counts.size() != probs.size()) throw std::invalid_argument("chi_square: counts and probs differ in length");
  const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
  const double psum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(psum - 1.0) > 1e-6) throw std::invalid_argument("chi_square: probabilities must sum to 1");
  if (!(n > 0.0)) throw std::invalid_argument("chi_square: no observations");

  std::vector<double> obs, exp;
  double o = 0.0, e = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    o += counts[i];
    e += n * probs[i];
    if (e >= 5.0) {
      obs.push_back(o);
      exp.push_back(e);
      o = e = 0.0;
    }
  }
  if (e > 0.0 || o > 0.0) {
    if (exp.empty()) {
      obs.push_back(o);
      exp.push_back(e);
    } else {
      obs.back() += o;
      exp.back() += e;
    }
  }
  if (exp.size() < 2) throw std::invalid_argument("chi_square: fewer than two cells after merging");

  double stat = 0.0;
  for (std::size_t i = 0; i < exp.size(); ++i) stat += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
  GofReport r;
  r.test = GofTest::chi_square;
  r.statistic = stat;
  r.n = static_cast<std::size_t>(n);
  r.dof = exp.size() - 1;
  const double dof = static_cast<double>(r.dof);
  r.p_value = gamma_q(0.5 * dof, 0.5 * stat);
  r.threshold = opts.fixed_threshold ? *opts.fixed_threshold : chi_square_upper_quantile(dof, opts.significance);
  r.pass = stat <= r.threshold;
  return r;
}

namespace {

double decay_sse(std::span<const double> t, std::span<const double> u, double y, double tau) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = std::max(1.0 - t[i] / tau, 0.0);
    const double e = u[i] - y * r * r;
    s += e * e;
  }
  return s;
}

}  // namespace

FitResult fit_decay(std::span<const double> t, std::span<const double> u, double y, double noise_band) {
  if (t.size() != u.size()) throw std::invalid_argument("fit_decay: t and u differ in length");
  if (t.size() < 3) throw std::invalid_argument("fit_decay: need at least 3 points");
  if (!(y > 0.0)) throw std::invalid_argument("fit_decay: y must be positive");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(u[i]) || u[i] < 0.0) {
      throw std::invalid_argument("fit_decay: values must be finite and >= 0");
    }
    if (i > 0 && !(t[i] > t[i - 1])) throw std::invalid_argument("fit_decay: times must increase");
  }

  FitResult res;
  double running_min = u[0];
  for (double v : u) {
    if (v > running_min + noise_band * y) res.monotone = false;
    running_min = std::min(running_min, v);
  }

  // Crude guess from sqrt(u/y) ~ 1 - t/tau, through the origin.
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (u[i] <= 0.05 * y) continue;
    const double r = std::sqrt(u[i] / y);
    num += t[i] * (1.0 - r);
    den += t[i] * t[i];
  }
  double guess = (num > 0.0 && den > 0.0) ? den / num : 2.0 * t.back();
  if (!std::isfinite(guess) || guess <= 0.0) guess = std::max(t.back(), 1e-12);
  res.guess = guess;

  const double lo = 0.1 * guess, hi = 10.0 * guess;
  constexpr int kGrid = 400;
  const double ratio = std::pow(hi / lo, 1.0 / kGrid);
  int best = 0;
  double best_v = INFINITY;
  for (int k = 0; k <= kGrid; ++k) {
    const double v = decay_sse(t, u, y, lo * std::pow(ratio, k));
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  double a = lo * std::pow(ratio, std::max(best - 1, 0));
  double b = lo * std::pow(ratio, std::min(best + 1, kGrid));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = decay_sse(t, u, y, c), fd = decay_sse(t, u, y, d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * b; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = decay_sse(t, u, y, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = decay_sse(t, u, y, d);
    }
  }
  res.t_inf_hat = 0.5 * (a + b);
  res.rmse = std::sqrt(decay_sse(t, u, y, res.t_inf_hat) / static_cast<double>(t.size()));
  return res;
}

std::vector<BinReport> compare_occupation(const EmpiricalOccupation& emp,
                                          const std::function<Gamma0Params(double)>& law,
                                          OccupationFunctional functional, double tolerance) {
  std::vector<BinReport> out;
  out.reserve(emp.bins());
  for (std::size_t b = 0; b < emp.bins(); ++b) {
    BinReport br;
    br.bin = b;
    br.s_mid = emp.grid().mid(b);
    br.report.threshold = tolerance;
    br.report.test = functional == OccupationFunctional::sqrt_moment ? GofTest::sqrt_moment : GofTest::ks_one_sample;
    if (!(emp.weight(b) > 0.0)) {
      br.skipped = true;
      out.push_back(br);
      continue;
    }
    try {
      const Gamma0Params p = law(br.s_mid);
      p.validate();
      if (functional == OccupationFunctional::sqrt_moment) {
        br.observed = emp.mean(b, [](double v) { return v; });
        br.expected = gamma0_sqrt_moment(p);
        if (!(br.expected > 0.0) || !std::isfinite(br.expected)) throw std::domain_error("degenerate target");
        br.report.statistic = std::abs(br.observed - br.expected) / br.expected;
        br.report.n = emp.samples(b).size();
        br.report.pass = br.report.statistic <= tolerance;
      } else {
        auto s = emp.samples(b);
        for (auto& pr : s) pr.first *= pr.first;
        GofOptions o;
        o.fixed_threshold = tolerance;
        br.report = ks_one_sample_weighted(std::move(s), [&p](double x) { return gamma0_cdf(p, x); }, o);
        br.observed = br.report.statistic;
      }
    } catch (const std::exception&) {
      br.skipped = true;
      br.report.pass = false;
    }
    out.push_back(br);
  }
  return out;
}

MeanSe mean_se(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean_se: empty sample");
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

std::vector<Excursion> find_excursions(std::span<const double> t, std::span<const double> v, double h) {
  if (t.size() != v.size()) throw std::invalid_argument("find_excursions: size mismatch");
  std::vector<Excursion> out;
  if (t.empty()) return out;
  bool rising = true;
  double t_min = t[0], v_min = v[0], t_max = t[0], v_max = v[0];
  double last_trough = t[0];
  bool have_peak = false;
  double peak = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (rising) {
      if (v[i] > v_max) {
        v_max = v[i];
        t_max = t[i];
      } else if (v[i] < v_max - h) {
        peak = t_max;
        have_peak = true;
        rising = false;
        v_min = v[i];
        t_min = t[i];
      }
    } else {
      if (v[i] < v_min) {
        v_min = v[i];
        t_min = t[i];
      } else if (v[i] > v_min + h) {
        if (have_peak) out.push_back({last_trough, peak, t_min});
        last_trough = t_min;
        have_peak = false;
        rising = true;
        v_max = v[i];
        t_max = t[i];
      }
    }
  }
  return out;
}

std::vector<double> second_differences(std::span<const double> v) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) out.push_back(v[i + 1] - 2.0 * v[i] + v[i - 1]);
  return out;
}

}  // namespace crnlab
