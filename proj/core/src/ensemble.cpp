// SPDX-License-Identifier: Apache-2.0
#include "crnlab/ensemble.hpp"

#include <cstdlib>

namespace crnlab {

ReplicaError::ReplicaError(const std::string& id, std::size_t index, std::uint64_t seed, const std::string& what)
    : std::runtime_error("ensemble '" + id + "': replica " + std::to_string(index) + " (seed " +
                         std::to_string(seed) + ", stream " + std::to_string(index) + ") failed: " + what),
      index_(index),
      seed_(seed) {}

unsigned ensemble_threads(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CRNLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

}  // namespace crnlab
