// SPDX-License-Identifier: Apache-2.0
#include "crnlab/chain_network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crnlab {

ChainNetwork::ChainNetwork(int m_, std::vector<double> kappa_) : m(m_), kappa(std::move(kappa_)) { validate(); }

void ChainNetwork::validate() const {
  if (m < 2) throw std::invalid_argument("ChainNetwork: m must be >= 2");
  if (kappa.size() != channels()) {
    throw std::invalid_argument("ChainNetwork: kappa must have m+2 = " + std::to_string(channels()) + " entries");
  }
  for (double k : kappa) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("ChainNetwork: rates must be finite and >= 0");
  }
}

namespace {

void check_dim(const ChainNetwork& net, std::size_t n) {
  if (n != static_cast<std::size_t>(net.m)) {
    throw std::invalid_argument("chain state has " + std::to_string(n) + " coordinates, network has m = " +
                                std::to_string(net.m));
  }
}

// Writes the state change of channel ch (0-based coordinates) into d.
void channel_delta(int m, std::size_t ch, std::span<std::int64_t> d) {
  const auto c = static_cast<int>(ch);
  if (c == 0) {
    d[0] += 1;
  } else if (c == 1) {
    d[1] += 1;
  } else if (c < m) {
    d[c] += 1;      // e(i+1)
    d[c - 2] -= 1;  // e(i-1)
  } else if (c == m) {
    d[m - 2] -= 1;
  } else {
    d[m - 1] -= 1;
  }
}

}  // namespace

ChainModel::ChainModel(const ChainNetwork& net) : net_(net) { net_.validate(); }

void ChainModel::rates(std::span<const std::int64_t> x, std::span<double> out) const {
  const int m = net_.m;
  const auto& k = net_.kappa;
  const auto xd = [&](int i) { return static_cast<double>(x[static_cast<std::size_t>(i - 1)]); };
  out[0] = k[0];
  out[1] = k[1] * xd(1);
  for (int i = 2; i <= m - 1; ++i) out[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)] * xd(i - 1) * xd(i);
  out[static_cast<std::size_t>(m)] = k[static_cast<std::size_t>(m)] * xd(m) * xd(m - 1);
  out[static_cast<std::size_t>(m) + 1] = k[static_cast<std::size_t>(m) + 1] * xd(m);
}

void ChainModel::fire(std::size_t ch, std::span<std::int64_t> x, std::span<std::int64_t> delta, RngStream&) const {
  channel_delta(net_.m, ch, delta);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += delta[i];
}

std::vector<Transition> transition_rates(const ChainNetwork& net, std::span<const std::int64_t> x) {
  net.validate();
  check_dim(net, x.size());
  ChainModel model(net);
  std::vector<double> r(net.channels());
  model.rates(x, r);
  std::vector<Transition> out;
  out.reserve(r.size());
  for (std::size_t ch = 0; ch < r.size(); ++ch) {
    State d(x.size(), 0);
    channel_delta(net.m, ch, d);
    out.push_back({std::move(d), r[ch]});
  }
  return out;
}

namespace {

void check_start(const ChainNetwork& net, const State& x0, double t_end) {
  net.validate();
  check_dim(net, x0.size());
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate_ssa: t_end must be positive");
  for (auto v : x0) {
    if (v < 0) throw std::invalid_argument("simulate_ssa: negative initial count");
  }
}

}  // namespace

Trajectory simulate_ssa(const ChainNetwork& net, const State& x0, double t_end, RngStream& rng) {
  check_start(net, x0, t_end);
  return run_recorded(ChainModel(net), x0, t_end, rng);
}

RunStats simulate_ssa(const ChainNetwork& net, const State& x0, double t_end, RngStream& rng, TrajectorySink& sink) {
  check_start(net, x0, t_end);
  return run_to_sink(ChainModel(net), x0, t_end, rng, sink);
}

CouplingParams coupling_defaults(const State& x0, double N) {
  const auto m = x0.size();
  if (m % 2 == 0 || m < 3) throw std::invalid_argument("coupling_defaults: m must be odd and >= 3");
  CouplingParams p;
  double odd = 0.0;
  double min_odd = INFINITY;
  for (std::size_t i = 0; i < m; i += 2) {
    odd += static_cast<double>(x0[i]);
    if (i >= 2) min_odd = std::min(min_odd, static_cast<double>(x0[i]));
  }
  p.eta = min_odd / (2.0 * N);
  p.lambda = odd / N;
  return p;
}

namespace {

// State layout: [X_1..X_m, Y_1..Y_p]. Channel indices follow the chain.
class CoupledModel {
 public:
  CoupledModel(const ChainNetwork& net, double eta, double lambda, double N)
      : chain_(net), m_(net.m), p_((net.m - 1) / 2), kappa_(net.kappa), etaN_(eta * N), lambdaN_(lambda * N) {
    rx_.resize(net.channels());
  }
  std::size_t channels() const { return static_cast<std::size_t>(m_) + 2; }

  double y_rate(std::size_t ch, std::span<const std::int64_t> s) const {
    if (ch == 1) return kappa_[1] * lambdaN_;
    if (ch % 2 == 1 && ch >= 3 && ch <= static_cast<std::size_t>(2 * p_ + 1)) {
      const std::size_t k = (ch - 1) / 2;  // station 1..p
      return kappa_[ch] * etaN_ * static_cast<double>(s[static_cast<std::size_t>(m_) + k - 1]);
    }
    return 0.0;
  }

  void rates(std::span<const std::int64_t> s, std::span<double> out) const {
    chain_.rates(s.first(static_cast<std::size_t>(m_)), out);
    for (std::size_t ch = 0; ch < out.size(); ++ch) out[ch] = std::max(out[ch], y_rate(ch, s));
  }

  void fire(std::size_t ch, std::span<std::int64_t> s, std::span<std::int64_t> delta, RngStream& rng) const {
    chain_.rates(s.first(static_cast<std::size_t>(m_)), rx_);
    const double rx = rx_[ch];
    const double ry = y_rate(ch, s);
    const double u = rng.uniform() * std::max(rx, ry);
    if (u < rx) channel_delta(m_, ch, delta.first(static_cast<std::size_t>(m_)));
    if (u < ry) {
      const auto base = static_cast<std::size_t>(m_);
      if (ch == 1) {
        delta[base] += 1;
      } else {
        const std::size_t k = (ch - 1) / 2;
        delta[base + k - 1] -= 1;
        if (k < static_cast<std::size_t>(p_)) delta[base + k] += 1;
      }
    }
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += delta[i];
  }

 private:
  ChainModel chain_;
  int m_;
  int p_;
  std::vector<double> kappa_;
  double etaN_;
  double lambdaN_;
  mutable std::vector<double> rx_;
};

}  // namespace

CouplingResult couple_tandem(const ChainNetwork& net, const State& x0, double eta, double lambda, double N,
                             double t_end, RngStream& rng) {
  net.validate();
  check_dim(net, x0.size());
  if (net.m % 2 == 0) throw std::invalid_argument("couple_tandem: m must be odd");
  if (net.kappa[0] != 0.0) throw std::invalid_argument("couple_tandem: kappa0 must be 0");
  if (!(eta > 0.0) || !(lambda > 0.0) || !(N > 0.0)) throw std::invalid_argument("couple_tandem: eta, lambda, N must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("couple_tandem: t_end must be positive");
  const auto m = static_cast<std::size_t>(net.m);
  const std::size_t p = (m - 1) / 2;
  double odd = 0.0;
  for (std::size_t i = 0; i < m; i += 2) odd += static_cast<double>(x0[i]);
  if (odd > lambda * N) throw std::invalid_argument("couple_tandem: odd-index sum of x0 exceeds lambda N");
  for (std::size_t i = 1; i <= p; ++i) {
    if (static_cast<double>(x0[2 * i]) < eta * N) {
      throw std::invalid_argument("couple_tandem: x0 already below eta N on an odd coordinate");
    }
  }

  State s(m + p);
  std::copy(x0.begin(), x0.end(), s.begin());
  State y0(p);
  for (std::size_t k = 1; k <= p; ++k) y0[k - 1] = s[m + k - 1] = x0[2 * k - 1];

  CouplingResult res;
  res.x_path = Trajectory(x0);
  res.y_path = Trajectory(y0);
  const double threshold = eta * N;

  const auto dominated = [&](std::span<const std::int64_t> st) {
    std::int64_t sx = 0, sy = 0;
    for (std::size_t k = 1; k <= p; ++k) {
      sx += st[2 * k - 1];
      sy += st[m + k - 1];
      if (sx > sy) return false;
    }
    return true;
  };
  res.held = dominated(s);

  CoupledModel model(net, eta, lambda, N);
  const RunStats st = run_direct(model, std::span<std::int64_t>(s), 0.0, t_end, rng,
                                 [&](double t, std::int32_t ch, std::span<const std::int64_t> cur,
                                     std::span<const std::int64_t> d) {
                                   const auto dx = d.first(m);
                                   const auto dy = d.subspan(m);
                                   if (std::any_of(dx.begin(), dx.end(), [](auto v) { return v != 0; })) {
                                     res.x_path.push(t, ch, dx);
                                   }
                                   if (std::any_of(dy.begin(), dy.end(), [](auto v) { return v != 0; })) {
                                     res.y_path.push(t, ch, dy);
                                   }
                                   if (!dominated(cur)) res.held = false;
                                   for (std::size_t i = 1; i <= p; ++i) {
                                     if (static_cast<double>(cur[2 * i]) < threshold) return false;
                                   }
                                   return true;
                                 });
  res.events = st.events;
  res.reached_T_N = st.stopped;
  res.T_N = st.t_final;
  res.x_path.set_t_end(st.t_final);
  res.y_path.set_t_end(st.t_final);
  return res;
}

bool is_H0(std::span<const double> x, double tol) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (x[i] * x[i + 1] > tol) return false;
  }
  return true;
}

}  // namespace crnlab
