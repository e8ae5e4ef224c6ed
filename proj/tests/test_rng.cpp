// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "crnlab/rng.hpp"

using crnlab::RngStream;

TEST(Philox, KnownAnswerZero) {
  const auto out = RngStream::philox4x32_10({0, 0, 0, 0}, {0, 0});
  const RngStream::Block want{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u};
  EXPECT_EQ(out, want);
}

TEST(Philox, KnownAnswerOnes) {
  const std::uint32_t f = 0xffffffffu;
  const auto out = RngStream::philox4x32_10({f, f, f, f}, {f, f});
  const RngStream::Block want{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu};
  EXPECT_EQ(out, want);
}

TEST(Philox, KnownAnswerPi) {
  // Random123 kat_vectors: philox4x32 10 with pi digits.
  const auto out = RngStream::philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                            {0xa4093822u, 0x299f31d0u});
  const RngStream::Block want{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u};
  EXPECT_EQ(out, want);
}

TEST(RngStream, SameSeedAndStreamRepeat) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RngStream, StreamsDiffer) {
  RngStream a(42, 0), b(42, 1), c(43, 0);
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a(), y = b(), z = c();
    same_ab += x == y;
    same_ac += x == z;
  }
  EXPECT_EQ(same_ab, 0);
  EXPECT_EQ(same_ac, 0);
}

TEST(RngStream, UniformIsOpenInterval) {
  RngStream r(1, 0);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_LT(lo, 1e-4);
  EXPECT_GT(hi, 1.0 - 1e-4);
}

TEST(RngStream, ExponentialMoments) {
  RngStream r(3, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = r.exponential(2.0);
    ASSERT_GT(e, 0.0);
    s += e;
    s2 += e * e;
  }
  EXPECT_NEAR(s / n, 0.5, 4.0 * 0.5 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 0.5, 0.02);
}

TEST(RngStream, BlocksAdvanceTwoWordsEach) {
  RngStream r(9, 0);
  EXPECT_EQ(r.blocks_used(), 0u);
  r();
  EXPECT_EQ(r.blocks_used(), 1u);
  r();
  EXPECT_EQ(r.blocks_used(), 1u);
  r();
  EXPECT_EQ(r.blocks_used(), 2u);
}

TEST(RngStream, SubstreamsAreDistinctAndStable) {
  RngStream parent(5, 3);
  std::set<std::uint64_t> first;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RngStream s = parent.substream(i);
    first.insert(s());
  }
  EXPECT_EQ(first.size(), 1000u);
  RngStream a = parent.substream(17), b = parent.substream(17);
  EXPECT_EQ(a(), b());
}

TEST(RngStream, RejectsBadRate) { EXPECT_THROW(RngStream(1, 1).exponential(0.0), std::invalid_argument); }
