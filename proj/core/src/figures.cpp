// SPDX-License-Identifier: Apache-2.0
#include "crnlab/figures.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "crnlab/ensemble.hpp"
#include "crnlab/four_node.hpp"
#include "crnlab/ode_limits.hpp"

namespace crnlab {

namespace {

constexpr FourNodeKappa kUnit{1, 1, 1, 1, 1, 1};

std::ofstream open_csv(const std::filesystem::path& dir, const char* name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error(std::string("cannot write ") + (dir / name).string());
  out.precision(10);
  return out;
}

}  // namespace

Fig41Data fig4_1(const Fig41Options& opts) {
  if (!(opts.N >= 1.0) || !(opts.t_end > 0.0)) throw std::invalid_argument("fig4_1: need N >= 1 and t_end > 0");
  RngStream rng(opts.seed, 0);
  const auto init = FourNodeInit::scaled(1.0, 0.0, opts.N);
  const Trajectory x = simulate_x4(kUnit, init, opts.t_end, rng);

  Fig41Data d;
  d.N = opts.N;
  const double sq = std::sqrt(opts.N);
  x.for_each_segment([&](double t0, double, const State& s) {
    d.t.push_back(t0);
    d.x2.push_back(static_cast<double>(s[1]) / opts.N);
    d.x4.push_back(static_cast<double>(s[3]) / sq);
  });
  d.excursions = find_excursions(d.t, d.x4, opts.hysteresis);
  return d;
}

std::size_t sawtooth_count(const std::vector<Excursion>& ex, double ratio) {
  std::size_t n = 0;
  for (const auto& e : ex)
    if (e.rise() < ratio * e.decay()) ++n;
  return n;
}

void write_fig4_1(const Fig41Data& d, const std::filesystem::path& dir) {
  auto out = open_csv(dir, "fig4-1.csv");
  out << "t,x2_over_N,x4_over_sqrtN\n";
  for (std::size_t i = 0; i < d.t.size(); ++i) out << d.t[i] << ',' << d.x2[i] << ',' << d.x4[i] << '\n';
  auto ex = open_csv(dir, "fig4-1_excursions.csv");
  ex << "t_trough,t_peak,t_next,rise,decay\n";
  for (const auto& e : d.excursions)
    ex << e.t_trough << ',' << e.t_peak << ',' << e.t_next << ',' << e.rise() << ',' << e.decay() << '\n';
}

FigAvData fig_av(const FigAvOptions& opts) {
  if (!(opts.N >= 1.0) || !(opts.step > 0.0) || !(opts.horizon > 0.0) || opts.replicas < 2) {
    throw std::invalid_argument("fig_av: need N >= 1, step > 0, horizon > 0, replicas >= 2");
  }
  FigAvData d;
  d.N = opts.N;
  d.t_inf = t_infinity({1, 1, 1, 1}, 1.0);
  for (double s = 0.0; s <= opts.horizon * d.t_inf + 1e-12; s += opts.step) d.t.push_back(s);

  const double sq = std::sqrt(opts.N);
  std::vector<double> real(d.t.size());
  for (std::size_t i = 0; i < d.t.size(); ++i) real[i] = d.t[i] * sq;

  EnsembleSpec spec{"fig-av", opts.replicas, opts.seed, opts.threads};
  const auto runs = run_ensemble(spec, [&](std::size_t, RngStream& rng) {
    const auto init = FourNodeInit::scaled(1.0, 0.0, opts.N);
    const Trajectory x = simulate_x4(kUnit, init, real.back() + 1e-9, rng);
    return std::make_pair(x.coord_at(1, real), x.coord_at(3, real));
  });

  const std::size_t g = d.t.size();
  std::vector<double> a(opts.replicas), b(opts.replicas);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t r = 0; r < opts.replicas; ++r) {
      a[r] = static_cast<double>(runs[r].first[i]) / opts.N;
      b[r] = static_cast<double>(runs[r].second[i]) / sq;
    }
    const auto ma = mean_se(a), mb = mean_se(b);
    d.x2_mean.push_back(ma.mean);
    d.x2_se.push_back(ma.se);
    d.x4_mean.push_back(mb.mean);
    d.x4_se.push_back(mb.se);
    const double r = 1.0 - d.t[i] / d.t_inf;
    d.x2_limit.push_back(r * r);
  }
  return d;
}

void write_fig_av(const FigAvData& d, const std::filesystem::path& dir) {
  auto out = open_csv(dir, "fig-av.csv");
  out << "t,x2_mean,x2_se,x4_mean,x4_se,x2_limit\n";
  for (std::size_t i = 0; i < d.t.size(); ++i) {
    out << d.t[i] << ',' << d.x2_mean[i] << ',' << d.x2_se[i] << ',' << d.x4_mean[i] << ',' << d.x4_se[i] << ','
        << d.x2_limit[i] << '\n';
  }
}

}  // namespace crnlab
