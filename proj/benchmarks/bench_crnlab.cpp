// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "crnlab/aimd.hpp"
#include "crnlab/chain_network.hpp"
#include "crnlab/four_node.hpp"
#include "crnlab/gillespie.hpp"
#include "crnlab/mm_infinity.hpp"
#include "crnlab/ode_limits.hpp"

using namespace crnlab;

namespace {

// Events per second of the direct method on the chain, no recording.
void BM_ChainSsa(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  const ChainNetwork net(m, std::vector<double>(static_cast<std::size_t>(m) + 2, 1.0));
  RngStream rng(1, 0);
  std::int64_t events = 0;
  for (auto _ : st) {
    State x(static_cast<std::size_t>(m), 1000);
    const auto r = simulate_ssa_observed(net, x, 1.0, rng,
                                         [](double, std::int32_t, std::span<const std::int64_t>,
                                            std::span<const std::int64_t>) { return true; });
    events += static_cast<std::int64_t>(r.events);
    benchmark::DoNotOptimize(x.data());
  }
  st.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ChainSsa)->Arg(3)->Arg(5)->Arg(16);

void BM_ChainSsaRecorded(benchmark::State& st) {
  const ChainNetwork net(5, std::vector<double>(7, 1.0));
  RngStream rng(2, 0);
  std::int64_t events = 0;
  for (auto _ : st) {
    const auto tr = simulate_ssa(net, {1000, 0, 1000, 0, 1000}, 0.1, rng);
    events += static_cast<std::int64_t>(tr.size());
  }
  st.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ChainSsaRecorded);

void BM_MMInf(benchmark::State& st) {
  RngStream rng(3, 0);
  for (auto _ : st) benchmark::DoNotOptimize(simulate_mminf({50.0, 1.0}, 0, 10.0, rng).size());
}
BENCHMARK(BM_MMInf);

void BM_Gamma0Sample(benchmark::State& st) {
  const Gamma0Params p{static_cast<double>(st.range(0)) / 4.0, 0.5};
  RngStream rng(4, 0);
  for (auto _ : st) benchmark::DoNotOptimize(gamma0_sample(p, rng));
}
BENCHMARK(BM_Gamma0Sample)->Arg(1)->Arg(2)->Arg(4)->Arg(40);

void BM_Gamma0Cdf(benchmark::State& st) {
  const Gamma0Params p{1.5, 0.5};
  double x = 0.0;
  for (auto _ : st) {
    x = x > 20.0 ? 0.01 : x + 0.37;
    benchmark::DoNotOptimize(gamma0_cdf(p, x));
  }
}
BENCHMARK(BM_Gamma0Cdf);

void BM_SimulateR1(benchmark::State& st) {
  RngStream rng(5, 0);
  for (auto _ : st) benchmark::DoNotOptimize(simulate_r1({1.0, 1.0}, 1.0, 100.0, rng).jumps().size());
}
BENCHMARK(BM_SimulateR1);

void BM_Rk4OddAveraged(benchmark::State& st) {
  OdeSpec s;
  s.kind = OdeKind::odd_averaged;
  s.kappa = {0, 1, 1, 1, 1, 1, 1};
  s.init = {1, 1, 1};
  s.t_end = 5.0;
  s.h = 1e-3;
  s.record_stride = 100;
  for (auto _ : st) benchmark::DoNotOptimize(integrate(s).t.size());
  st.SetItemsProcessed(st.iterations() * 5000);
}
BENCHMARK(BM_Rk4OddAveraged);

void BM_Rk4FluidChain(benchmark::State& st) {
  OdeSpec s;
  s.kind = OdeKind::fluid_chain;
  s.kappa.assign(18, 1.0);
  s.init.assign(16, 0.5);
  s.t_end = 5.0;
  s.h = 1e-3;
  s.record_stride = 100;
  for (auto _ : st) benchmark::DoNotOptimize(integrate(s).t.size());
  st.SetItemsProcessed(st.iterations() * 5000);
}
BENCHMARK(BM_Rk4FluidChain);

// Z with batch jumps of X4 sampled by thinning.
void BM_ZProcess(benchmark::State& st) {
  const double N = static_cast<double>(st.range(0));
  const State z0{0, static_cast<std::int64_t>(N), 1, static_cast<std::int64_t>(std::sqrt(N))};
  RngStream rng(6, 0);
  std::int64_t events = 0;
  for (auto _ : st) {
    const auto z = simulate_z({1, 1, 1, 1, 1, 1}, z0, 1.0, rng);
    events += static_cast<std::int64_t>(z.path.size());
  }
  st.counters["events/s"] = benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ZProcess)->Arg(10000)->Arg(1000000);

void BM_ThinningCount(benchmark::State& st) {
  RngStream rng(7, 0);
  const auto n = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(thinning_count(n, 1.0, 1.0, rng));
}
BENCHMARK(BM_ThinningCount)->Arg(10)->Arg(1000)->Arg(100000);

void BM_XProcessToBurstEnd(benchmark::State& st) {
  const double N = 1e5;
  const auto init = FourNodeInit::scaled(1.0, 1.0, N, 0, 1);
  const ChainNetwork net(4, std::vector<double>(6, 1.0));
  RngStream rng(8, 0);
  for (auto _ : st) {
    State x = init.state();
    const auto r = simulate_ssa_observed(net, x, 1e9, rng,
                                         [](double, std::int32_t, std::span<const std::int64_t> s,
                                            std::span<const std::int64_t>) { return s[2] != 0; });
    benchmark::DoNotOptimize(r.t_final);
  }
}
BENCHMARK(BM_XProcessToBurstEnd);

}  // namespace

BENCHMARK_MAIN();
