// SPDX-License-Identifier: Apache-2.0
#include "crnlab/ode_limits.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "crnlab/mm_infinity.hpp"
#include "crnlab/special_functions.hpp"

namespace crnlab {

std::string to_string(OdeKind k) {
  switch (k) {
    case OdeKind::fluid_chain: return "fluid_chain";
    case OdeKind::odd_averaged: return "odd_averaged";
    case OdeKind::three_fast: return "three_fast";
    case OdeKind::quadratic_decay: return "quadratic_decay";
  }
  return "unknown";
}

OdeKind ode_kind_from_string(const std::string& s) {
  if (s == "fluid_chain") return OdeKind::fluid_chain;
  if (s == "odd_averaged") return OdeKind::odd_averaged;
  if (s == "three_fast") return OdeKind::three_fast;
  if (s == "quadratic_decay") return OdeKind::quadratic_decay;
  throw std::invalid_argument("unknown ODE kind '" + s + "'");
}

void OdeSpec::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("OdeSpec: h must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("OdeSpec: t_end must be positive");
  if (h < 1e-12 * t_end) throw std::invalid_argument("OdeSpec: step size underflow");
  if (record_stride == 0) throw std::invalid_argument("OdeSpec: record_stride must be >= 1");
  for (double v : init) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("OdeSpec: init must be finite and >= 0");
  }
  for (double v : kappa) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("OdeSpec: kappa must be finite and >= 0");
  }
  switch (kind) {
    case OdeKind::fluid_chain:
      if (init.size() < 3) throw std::invalid_argument("fluid_chain: need m >= 3");
      if (kappa.size() != init.size() + 2) throw std::invalid_argument("fluid_chain: kappa must have m+2 entries");
      break;
    case OdeKind::odd_averaged: {
      if (init.size() < 2) throw std::invalid_argument("odd_averaged: need at least l_1 and l_3");
      const std::size_t m = 2 * init.size() - 1;
      if (kappa.size() != m + 2) throw std::invalid_argument("odd_averaged: kappa must have m+2 entries");
      for (std::size_t i = 1; i < kappa.size(); ++i) {
        if (!(kappa[i] > 0.0)) throw std::invalid_argument("odd_averaged: kappa_1..kappa_{m+1} must be positive");
      }
      for (double v : init) {
        if (!(v > 0.0)) throw std::invalid_argument("odd_averaged: odd-index entries must be positive");
      }
      break;
    }
    case OdeKind::three_fast:
      if (init.size() != 2) throw std::invalid_argument("three_fast: init is (x2, x3)");
      if (kappa.size() != 5) throw std::invalid_argument("three_fast: kappa_0..kappa_4 expected");
      break;
    case OdeKind::quadratic_decay:
      if (init.size() != 1) throw std::invalid_argument("quadratic_decay: init is (y)");
      if (kappa.size() != 4) throw std::invalid_argument("quadratic_decay: kappa is (k0, k3, k4, k5)");
      if (!(init[0] > 0.0)) throw std::invalid_argument("quadratic_decay: y must be positive");
      break;
  }
}

double SampledPath::value_at(double time, std::size_t coord) const {
  if (t.empty()) throw std::logic_error("SampledPath::value_at: empty path");
  if (time <= t.front()) return x.front()[coord];
  if (time >= t.back()) return x.back()[coord];
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const auto j = static_cast<std::size_t>(it - t.begin());
  const double w = (time - t[j - 1]) / (t[j] - t[j - 1]);
  return (1.0 - w) * x[j - 1][coord] + w * x[j][coord];
}

void SampledPath::write_csv(const std::filesystem::path& path, const std::vector<std::string>& names) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << 't';
  for (std::size_t k = 0; k < dim(); ++k) out << ',' << (k < names.size() ? names[k] : "x" + std::to_string(k + 1));
  out << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << t[i];
    for (double v : x[i]) out << ',' << v;
    out << '\n';
  }
  if (!out) throw std::runtime_error("ODE CSV: write failed");
}

SampledPath rk4(const OdeRhs& f, std::vector<double> x, double t_end, double h, std::size_t stride,
                const OdeStop& stop) {
  if (!(h > 0.0)) throw std::invalid_argument("rk4: h must be positive");
  const std::size_t n = x.size();
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
  SampledPath path;
  path.t.push_back(0.0);
  path.x.push_back(x);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = 0.0;
  for (std::size_t s = 1; s <= steps; ++s) {
    const double dt = std::min(h, t_end - t);
    f(t, x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    f(t + 0.5 * dt, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    f(t + 0.5 * dt, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    f(t + dt, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t = (s == steps) ? t_end : static_cast<double>(s) * h;
    const bool halt = stop && stop(x);
    if (s % stride == 0 || s == steps || halt) {
      path.t.push_back(t);
      path.x.push_back(x);
    }
    if (halt) {
      path.floor_hit = true;
      break;
    }
  }
  return path;
}

OdeRhs ode_rhs(const OdeSpec& spec) {
  spec.validate();
  const std::vector<double> k = spec.kappa;
  switch (spec.kind) {
    case OdeKind::fluid_chain:
      return [k](double, const std::vector<double>& x, std::vector<double>& dx) {
        const std::size_t m = x.size();
        // 0-based: x[i] is x_{i+1}.
        dx[0] = -k[2] * x[0] * x[1];
        dx[1] = -k[3] * x[1] * x[2];
        for (std::size_t i = 2; i + 1 < m; ++i) {
          dx[i] = k[i] * x[i - 2] * x[i - 1] - k[i + 2] * x[i] * x[i + 1];
        }
        dx[m - 1] = k[m - 1] * x[m - 3] * x[m - 2];
      };
    case OdeKind::odd_averaged:
      return [k](double, const std::vector<double>& l, std::vector<double>& dl) {
        // l[i] is l_{2i+1}; p = l.size() - 1.
        const std::size_t p = l.size() - 1;
        dl[0] = -k[1] * (k[2] / k[3]) * l[0] * l[0] / l[1];
        for (std::size_t i = 1; i < p; ++i) {
          dl[i] = k[1] * (k[2 * i] / k[2 * i + 1] * l[i - 1] / l[i] - k[2 * i + 2] / k[2 * i + 3] * l[i] / l[i + 1]) * l[0];
        }
        dl[p] = k[1] * (k[2 * p] / k[2 * p + 1]) * (l[p - 1] / l[p]) * l[0] - k[2 * p + 2] * l[p];
      };
    case OdeKind::three_fast:
      return [k](double, const std::vector<double>& x, std::vector<double>& dx) {
        dx[0] = k[1] - k[3] * x[0] * x[1];
        dx[1] = k[2] * x[0];
      };
    case OdeKind::quadratic_decay: {
      const double y = spec.init[0];
      const double tinf = t_infinity(k, y);
      return [y, tinf](double, const std::vector<double>& u, std::vector<double>& du) {
        du[0] = -2.0 / tinf * std::sqrt(y * std::max(u[0], 0.0));
      };
    }
  }
  throw std::logic_error("ode_rhs: unhandled kind");
}

SampledPath integrate(const OdeSpec& spec) {
  const OdeRhs f = ode_rhs(spec);
  OdeStop stop;
  if (spec.kind == OdeKind::odd_averaged) {
    const double fl = spec.floor;
    stop = [fl](const std::vector<double>& l) {
      return std::any_of(l.begin(), l.end(), [fl](double v) { return !(v >= fl); });
    };
  }
  return rk4(f, spec.init, spec.t_end, spec.h, spec.record_stride, stop);
}

double t_infinity(const std::vector<double>& kappa, double y) {
  if (kappa.size() != 4) throw std::invalid_argument("t_infinity: kappa is (k0, k3, k4, k5)");
  for (double v : kappa) {
    if (!(v > 0.0)) throw std::invalid_argument("t_infinity: rates must be positive");
  }
  if (!(y > 0.0)) throw std::invalid_argument("t_infinity: y must be positive");
  const double k0 = kappa[0], k3 = kappa[1], k4 = kappa[2], k5 = kappa[3];
  const double a = k0 / (2.0 * k5);
  return std::sqrt(y) * std::sqrt(2.0 * k4) / (k5 * std::sqrt(k3)) * std::exp(log_gamma(a) - log_gamma(a + 0.5));
}

double quadratic_decay(double y, double t_inf, double t) {
  if (!(t_inf > 0.0)) throw std::invalid_argument("quadratic_decay: t_inf must be positive");
  if (t < 0.0 || t >= t_inf) throw std::domain_error("quadratic_decay: requires 0 <= t < t_inf");
  const double r = 1.0 - t / t_inf;
  return y * r * r;
}

Ell2Limit::Ell2Limit(Trajectory queue, double k3) : queue_(std::move(queue)), k3_(k3) {
  cum_.reserve(queue_.size());
  len_.reserve(queue_.size());
  double acc = 0.0;
  double prev = queue_.t_start();
  std::int64_t L = queue_.initial()[0];
  for (std::size_t i = 0; i < queue_.size(); ++i) {
    acc += (queue_.event(i).t - prev) * static_cast<double>(L);
    cum_.push_back(acc);
    prev = queue_.event(i).t;
    L += queue_.delta(i)[0];
    len_.push_back(L);
  }
}

double Ell2Limit::value_at(double t) const {
  const auto& ev = queue_.events();
  const auto it = std::upper_bound(ev.begin(), ev.end(), t, [](double q, const Event& e) { return q < e.t; });
  const auto n = static_cast<std::size_t>(it - ev.begin());
  const double integral = n == 0 ? (t - queue_.t_start()) * static_cast<double>(queue_.initial()[0])
                                 : cum_[n - 1] + (t - ev[n - 1].t) * static_cast<double>(len_[n - 1]);
  return std::exp(-k3_ * integral);
}

SampledPath Ell2Limit::sample(double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("Ell2Limit::sample: dt must be positive");
  SampledPath p;
  const double t_end = queue_.t_end();
  const auto n = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = std::min(t_end, static_cast<double>(i) * dt);
    p.t.push_back(t);
    p.x.push_back({value_at(t)});
  }
  return p;
}

Ell2Limit ell2_random_limit(double k0, double k3, double k4, double t_end, RngStream& rng, std::int64_t L0) {
  if (!(k3 >= 0.0)) throw std::invalid_argument("ell2_random_limit: k3 must be >= 0");
  return Ell2Limit(simulate_mminf(MMInfParams{k0, k4}, L0, t_end, rng), k3);
}

}  // namespace crnlab
