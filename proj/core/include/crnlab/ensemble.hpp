// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "crnlab/rng.hpp"

namespace crnlab {

struct EnsembleSpec {
  std::string id;
  std::size_t replicas = 1;
  std::uint64_t base_seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency, capped by CRNLAB_THREADS
};

// Replica i draws from RngStream(base_seed, i).
inline RngStream replica_stream(const EnsembleSpec& spec, std::size_t i) { return RngStream(spec.base_seed, i); }

class ReplicaError : public std::runtime_error {
 public:
  ReplicaError(const std::string& id, std::size_t index, std::uint64_t seed, const std::string& what);
  std::size_t index() const { return index_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::size_t index_;
  std::uint64_t seed_;
};

// Worker count for a request: requested (or hardware concurrency when 0),
// capped by the CRNLAB_THREADS environment variable, at least 1.
unsigned ensemble_threads(unsigned requested);

// Runs f(index, rng) for every replica and returns the results in index order.
// The output depends only on (spec.replicas, spec.base_seed, f). The failure
// with the lowest replica index is rethrown as ReplicaError.
template <class F>
auto run_ensemble(const EnsembleSpec& spec, F&& f) {
  using R = std::invoke_result_t<F&, std::size_t, RngStream&>;
  std::vector<std::optional<R>> slots(spec.replicas);
  std::vector<std::exception_ptr> errors(spec.replicas);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= spec.replicas) return;
      try {
        RngStream rng = replica_stream(spec, i);
        slots[i].emplace(f(i, rng));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(ensemble_threads(spec.threads),
                                        static_cast<unsigned>(std::max<std::size_t>(spec.replicas, 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < spec.replicas; ++i) {
    if (errors[i]) {
      std::string what = "unknown error";
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      throw ReplicaError(spec.id, i, spec.base_seed, what);
    }
  }
  std::vector<R> out;
  out.reserve(spec.replicas);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace crnlab
