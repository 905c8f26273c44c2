#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hybrid_search/oracles.hpp"
#include "reference_oracles.hpp"

namespace hs = hybrid_search;
using hs::BitString;

namespace {

BitString bits(std::size_t width, std::uint64_t v) { return BitString::from_uint(width, v); }

std::size_t brute_diameter(const hs::MarkedSet& s) {
  std::size_t d = 0;
  for (auto a : s.indices()) {
    for (auto b : s.indices()) d = std::max<std::size_t>(d, std::popcount(a ^ b));
  }
  return d;
}

}  // namespace

TEST(DistQuery, ExamplesAndCounting) {
  const hs::SolutionInstance inst(bits(3, 0b101));
  hs::QueryLedger ledger;
  EXPECT_EQ(inst.dist_query(bits(3, 0b101), ledger), 0u);
  EXPECT_EQ(inst.dist_query(bits(3, 0b000), ledger), 2u);
  EXPECT_EQ(ledger.distance_queries, 2u);
  EXPECT_EQ(ledger.total(), 2u);
  EXPECT_THROW(inst.dist_query(bits(4, 0), ledger), hs::PreconditionError);
}

TEST(ThresholdQuery, Examples) {
  const hs::SolutionInstance inst(bits(4, 0));
  hs::QueryLedger ledger;
  EXPECT_TRUE(inst.threshold_query(0, bits(4, 0), ledger));
  EXPECT_FALSE(inst.threshold_query(2, bits(4, 0b0111), ledger));
  for (std::uint64_t a = 0; a < 16; ++a) EXPECT_TRUE(inst.threshold_query(4, bits(4, a), ledger));
  EXPECT_EQ(ledger.threshold_queries, 18u);
  EXPECT_EQ(ledger.distance_queries, 0u);
  EXPECT_THROW(inst.threshold_query(1, bits(5, 0), ledger), hs::PreconditionError);
  EXPECT_THROW(inst.threshold_query(5, bits(4, 0), ledger), hs::DomainError);
}

TEST(ThresholdQuery, CoarsensDistanceExhaustively) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 10; ++n) {
    const hs::SolutionInstance inst(hs::random_bitstring(n, rng));
    hs::QueryLedger ledger;
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
        const BitString s = bits(n, a);
        ASSERT_EQ(inst.threshold_query(k, s, ledger), inst.dist_query(s, ledger) <= k);
      }
    }
  }
}

TEST(EqualityQuery, Examples) {
  const hs::SolutionInstance inst(bits(6, 0x2A));
  hs::QueryLedger ledger;
  EXPECT_TRUE(inst.equality_query(bits(6, 0x2A), ledger));
  EXPECT_FALSE(inst.equality_query(bits(6, 0x2B), ledger));
  EXPECT_EQ(ledger.equality_queries, 2u);
  EXPECT_THROW(inst.equality_query(bits(7, 0x2A), ledger), hs::PreconditionError);
}

TEST(EqualityQuery, BallScanBoundedByVolume) {
  const BitString x = bits(8, 0x3C);
  const hs::SolutionInstance inst(x);
  BitString center = x;
  center.flip(1);
  center.flip(6);
  hs::QueryLedger ledger;
  bool found = false;
  for (const BitString& a : hs::ball_iter(hs::BallSpec(center, 2))) {
    if (inst.equality_query(a, ledger)) {
      found = true;
      break;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_LE(ledger.equality_queries, 37u);  // M(8, 2)
}

TEST(PromiseQuery, DistancePromiseMarksOnlySolution) {
  const BitString x = bits(6, 0x15);
  const hs::SolutionInstance inst(x);
  const auto pf = hs::distance_promise(0, 0);
  hs::QueryLedger ledger;
  for (std::uint64_t a = 0; a < 64; ++a) {
    EXPECT_EQ(inst.promise_query(pf, bits(6, a), ledger), a == 0x15);
  }
  EXPECT_EQ(ledger.promise_queries, 64u);
  EXPECT_THROW(inst.promise_query(pf, bits(5, 0), ledger), hs::PreconditionError);
}

TEST(PromiseQuery, PrefixMatchInstance) {
  const BitString x = BitString::parse("0x5A/8");
  const hs::SolutionInstance inst(x);
  const auto pf = hs::prefix_match_promise(4, 0, 4);
  hs::QueryLedger ledger;
  std::set<std::uint64_t> marked;
  for (std::uint64_t a = 0; a < 256; ++a) {
    if (inst.promise_query(pf, bits(8, a), ledger)) marked.insert(a);
  }
  ASSERT_EQ(marked.size(), 16u);
  for (auto a : marked) EXPECT_EQ(a & 0xF, 0xAu);
  const auto set = inst.marked_set(hs::PromisePredicate{pf});
  EXPECT_EQ(std::set<std::uint64_t>(set.indices().begin(), set.indices().end()), marked);
  EXPECT_EQ(brute_diameter(set), 4u);
  EXPECT_LE(hs::marked_set_diameter(set), pf.k);
}

TEST(MarkedSet, ThresholdExamples) {
  std::mt19937_64 rng(21);
  const BitString x = hs::random_bitstring(12, rng);
  const hs::SolutionInstance inst(x);
  hs::QueryLedger ledger;
  const auto zero = inst.marked_set(hs::ThresholdPredicate{0});
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero.indices()[0], x.to_uint());
  EXPECT_EQ(inst.marked_set(hs::ThresholdPredicate{2}).size(), 79u);
  EXPECT_EQ(ledger.total(), 0u);
}

TEST(MarkedSet, EqualsBallExhaustively) {
  std::mt19937_64 rng(22);
  for (std::size_t n = 1; n <= 10; ++n) {
    const BitString x = hs::random_bitstring(n, rng);
    const hs::SolutionInstance inst(x);
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<std::uint64_t> want;
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
        if (reference::naive_hamming(bits(n, a), x) <= k) want.push_back(a);
      }
      EXPECT_EQ(inst.marked_set(hs::ThresholdPredicate{k}).indices(), want);
      EXPECT_EQ(hs::BigCount(want.size()),
                hs::ball_count(static_cast<long long>(n), static_cast<long long>(k)));
    }
  }
}

TEST(MarkedSet, ScaleGuard) {
  const hs::SolutionInstance inst(BitString(25));
  EXPECT_THROW(inst.marked_set(hs::ThresholdPredicate{0}), hs::ScaleError);
}

TEST(MarkedSet, DiameterMatchesBruteForce) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<std::uint64_t> idx;
    const std::size_t count = 1 + rng() % 10;
    for (std::size_t i = 0; i < count; ++i) idx.push_back(rng() & ((1u << n) - 1));
    const hs::MarkedSet s(n, idx);
    EXPECT_EQ(hs::marked_set_diameter(s), brute_diameter(s));
  }
}

TEST(IdealizedSampling, MarkedAndUnmarkedLandOnTheRightSide) {
  std::mt19937_64 rng(24);
  for (std::size_t n : {5u, 10u, 64u, 100u, 300u}) {
    const BitString x = hs::random_bitstring(n, rng);
    const hs::SolutionInstance inst(x);
    for (std::size_t k : {std::size_t{0}, std::size_t{1}, n / 3, n / 2, n - 1}) {
      for (int t = 0; t < 20; ++t) {
        EXPECT_LE(hs::hamming_distance(inst.sample_marked(k, rng), x), k);
        EXPECT_GT(hs::hamming_distance(inst.sample_unmarked(k, rng), x), k);
      }
    }
    EXPECT_THROW(inst.sample_unmarked(n, rng), hs::DomainError);
  }
}

TEST(Ledger, ZeroCostWithoutQueries) {
  hs::QueryLedger ledger;
  EXPECT_EQ(ledger.total(), 0u);
  EXPECT_EQ(ledger, hs::QueryLedger{});
}
