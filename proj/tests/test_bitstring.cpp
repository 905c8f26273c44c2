#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "hybrid_search/ball_index.hpp"
#include "hybrid_search/bitstring.hpp"
#include "reference_oracles.hpp"

namespace hs = hybrid_search;
using hs::BitString;

namespace {

BitString bits(std::size_t width, std::uint64_t v) { return BitString::from_uint(width, v); }

std::vector<std::uint64_t> collect(const hs::BallSpec& spec) {
  std::vector<std::uint64_t> out;
  for (const BitString& x : hs::ball_iter(spec)) out.push_back(x.to_uint());
  return out;
}

}  // namespace

TEST(BitString, HammingDistanceExamples) {
  EXPECT_EQ(hs::hamming_distance(bits(4, 0b1010), bits(4, 0b1010)), 0u);
  EXPECT_EQ(hs::hamming_distance(bits(4, 0b1010), bits(4, 0b0110)), 2u);
  EXPECT_EQ(hs::hamming_distance(bits(4, 0b0000), bits(4, 0b1111)), 4u);
}

TEST(BitString, HammingDistanceWidthMismatchThrows) {
  EXPECT_THROW(hs::hamming_distance(bits(4, 1), bits(5, 1)), hs::PreconditionError);
}

TEST(BitString, WidthBounds) {
  EXPECT_THROW(BitString(0), hs::DomainError);
  EXPECT_THROW(BitString(1025), hs::DomainError);
  EXPECT_NO_THROW(BitString(1024));
}

TEST(BitString, FromUintMasksHighBits) {
  const BitString s = bits(4, 0xFF);
  EXPECT_EQ(s.to_uint(), 0xFu);
  EXPECT_EQ(s, bits(4, 0xF));
}

TEST(BitString, HexRoundTripAndFormat) {
  EXPECT_EQ(bits(8, 0x5A).to_string(), "0x5A/8");
  EXPECT_EQ(bits(12, 0xABC).to_string(), "0xABC/12");
  EXPECT_EQ(BitString::parse("0x0ABC/12"), bits(12, 0xABC));
  EXPECT_EQ(BitString::parse("0x5a/8"), bits(8, 0x5A));
  EXPECT_THROW(BitString::parse("0x1F/4"), hs::DomainError);
  EXPECT_THROW(BitString::parse("5A/8"), hs::DomainError);
  EXPECT_THROW(BitString::parse("0x5G/8"), hs::DomainError);
  EXPECT_THROW(BitString::parse("0x5/0"), hs::DomainError);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t w = 1 + rng() % 1024;
    const BitString s = hs::random_bitstring(w, rng);
    EXPECT_EQ(BitString::parse(s.to_string()), s);
  }
}

TEST(BitString, DistanceMatchesNaiveLoopAndTriangleInequality) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const std::size_t w = 1 + rng() % 1024;
    const BitString a = hs::random_bitstring(w, rng);
    const BitString b = hs::random_bitstring(w, rng);
    const BitString c = hs::random_bitstring(w, rng);
    const auto ab = hs::hamming_distance(a, b);
    EXPECT_EQ(ab, reference::naive_hamming(a, b));
    EXPECT_EQ(ab, hs::hamming_distance(b, a));
    EXPECT_EQ(ab, (a ^ b).popcount());
    EXPECT_LE(hs::hamming_distance(a, c), ab + hs::hamming_distance(b, c));
  }
}

TEST(RandomBitString, DeterministicUnderSeed) {
  std::mt19937_64 r1(42);
  std::mt19937_64 r2(42);
  EXPECT_EQ(hs::random_bitstring(8, r1), hs::random_bitstring(8, r2));
}

TEST(RandomBitString, NoBitsAboveWidth) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) EXPECT_LT(hs::random_bitstring(4, rng).to_uint(), 16u);
  for (int t = 0; t < 100; ++t) {
    const BitString s = hs::random_bitstring(70, rng);
    EXPECT_EQ(s.word(1) >> 6, 0u);
  }
}

TEST(RandomBitString, SingleBitMeanWithinBinomialBound) {
  // 10^4 fair coin flips: sd of the mean is 0.005, so [0.45, 0.55] is 10 sd.
  std::mt19937_64 rng(2024);
  int ones = 0;
  for (int t = 0; t < 10000; ++t) ones += hs::random_bitstring(1, rng).test(0);
  const double mean = ones / 10000.0;
  EXPECT_GE(mean, 0.45);
  EXPECT_LE(mean, 0.55);
}

TEST(RandomBitString, RejectsBadWidth) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(hs::random_bitstring(0, rng), hs::DomainError);
  EXPECT_THROW(hs::random_bitstring(1025, rng), hs::DomainError);
}

TEST(BallIter, SmallExamples) {
  EXPECT_EQ(collect({bits(2, 0), 0}), (std::vector<std::uint64_t>{0b00}));
  EXPECT_EQ(collect({bits(2, 0), 1}), (std::vector<std::uint64_t>{0b00, 0b01, 0b10}));
  EXPECT_EQ(collect({bits(4, 0), 1}).size(), 5u);
  EXPECT_THROW(hs::BallSpec(bits(4, 0), 5), hs::DomainError);
}

TEST(BallIter, MatchesBruteForceOrderForAllSmallBalls) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 12; ++n) {
    const std::uint64_t center = rng() & ((std::uint64_t{1} << n) - 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const auto got = collect({bits(n, center), k});
      const auto want = reference::brute_ball(n, center, k);
      ASSERT_EQ(got, want) << "n=" << n << " k=" << k;
      EXPECT_EQ(std::set<std::uint64_t>(got.begin(), got.end()).size(), got.size());
      EXPECT_EQ(reference::BigInt(got.size()), reference::ball_volume(n, k));
    }
  }
}

TEST(BallIndex, Examples) {
  const hs::BallSpec spec(bits(4, 0), 1);
  EXPECT_EQ(hs::ball_rank(spec, bits(4, 0)), 0);
  // Canonical order is 0000, 0001, 0010, 0100, 1000.
  EXPECT_EQ(hs::ball_unrank(spec, 2), bits(4, 0b0010));
}

TEST(BallIndex, RoundTripOverWholeBall) {
  const hs::BallSpec spec(bits(6, 0), 3);
  const hs::BallIndexer<std::uint64_t> idx(spec);
  ASSERT_EQ(idx.size(), 42u);  // 1 + 6 + 15 + 20
  for (std::uint64_t r = 0; r < idx.size(); ++r) EXPECT_EQ(idx.rank(idx.unrank(r)), r);
}

TEST(BallIndex, ConsistentWithIterationOrderForAllSmallBalls) {
  std::mt19937_64 rng(13);
  for (std::size_t n = 1; n <= 12; ++n) {
    const BitString center = hs::random_bitstring(n, rng);
    for (std::size_t k = 0; k <= n; ++k) {
      const hs::BallSpec spec(center, k);
      const hs::BallIndexer<std::uint64_t> small(spec);
      const hs::BallIndexer<hs::BigCount> big(spec);
      std::uint64_t r = 0;
      for (const BitString& x : hs::ball_iter(spec)) {
        ASSERT_EQ(small.rank(x), r);
        ASSERT_EQ(small.unrank(r), x);
        ASSERT_EQ(big.rank(x), hs::BigCount(r));
        ++r;
      }
      EXPECT_EQ(r, small.size());
    }
  }
}

TEST(BallIndex, DomainErrors) {
  const hs::BallSpec spec(bits(4, 0), 1);
  EXPECT_THROW(hs::ball_rank(spec, bits(4, 0b0011)), hs::DomainError);
  EXPECT_THROW(hs::ball_unrank(spec, 5), hs::DomainError);
  EXPECT_THROW(hs::ball_unrank(spec, -1), hs::DomainError);
  EXPECT_THROW(hs::ball_rank(spec, bits(5, 0)), hs::PreconditionError);
}

TEST(BallIndex, LargeBallBigRanks) {
  // M(1000, 61) is far beyond 64 bits; round-trip a few random ranks.
  std::mt19937_64 rng(99);
  const BitString center = hs::random_bitstring(1000, rng);
  const hs::BallSpec spec(center, 61);
  EXPECT_THROW(hs::BallIndexer<std::uint64_t>{spec}, hs::ScaleError);
  const hs::BallIndexer<hs::BigCount> idx(spec);
  EXPECT_EQ(idx.size(), hs::ball_count(1000, 61));
  for (int t = 0; t < 20; ++t) {
    const BitString x = hs::sample_uniform_in_ball(spec, rng);
    EXPECT_LE(hs::hamming_distance(x, center), 61u);
    EXPECT_EQ(idx.unrank(idx.rank(x)), x);
  }
  EXPECT_EQ(idx.unrank(idx.size() - 1), [&] {
    BitString last = center;
    for (std::size_t p = 1000 - 61; p < 1000; ++p) last.flip(p);
    return last;
  }());
}

TEST(BallSampling, UniformOverSmallBall) {
  // 12-bit radius-2 ball (79 members), 400 expected hits each; the 0.001
  // critical value of chi-square with 78 dof is 122.35.
  std::mt19937_64 rng(17);
  const hs::BallSpec spec(bits(12, 0x5A5), 2);
  const hs::BallIndexer<std::uint64_t> idx(spec);
  std::vector<int> counts(idx.size(), 0);
  const int draws = 79 * 400;
  for (int t = 0; t < draws; ++t) ++counts[idx.rank(hs::sample_uniform_in_ball(spec, rng))];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - 400.0) * (c - 400.0) / 400.0;
  EXPECT_LT(chi2, 122.35);
}
