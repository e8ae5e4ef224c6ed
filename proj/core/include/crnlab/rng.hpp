// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace crnlab {

// Counter-based generator (Philox4x32-10). The key is the 64-bit seed, the
// counter is (block index, stream id), so every (seed, stream_id) pair names
// an independent, reproducible sequence. Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();
  // Exp(1).
  double exponential();
  // Exp(rate); rate must be positive.
  double exponential(double rate);

  // Deterministic child stream, distinct for distinct indices.
  RngStream substream(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }
  std::uint64_t blocks_used() const { return counter_; }

  static Block philox4x32_10(Block ctr, Key key);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Block buf_{};
  int pos_ = 2;  // 64-bit words consumed from buf_
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace crnlab
