#pragma once

// Ranking and unranking of Hamming-ball members, consistent with the
// canonical order of ball_iter: shell by shell, and inside shell i by the
// combinatorial number system over the i flipped positions.

#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "hybrid_search/bitstring.hpp"
#include "hybrid_search/combinatorics.hpp"

namespace hybrid_search {

/// Bijection between a Hamming ball and {0, ..., M-1}.
///
/// `Rank` is either std::uint64_t (when M fits) or BigCount. Construction
/// tabulates C(p, j) for p <= n and j <= radius.
template <class Rank>
class BallIndexer {
 public:
  explicit BallIndexer(BallSpec spec) : spec_(std::move(spec)) {
    const std::size_t n = spec_.width();
    const std::size_t k = spec_.radius;
    if constexpr (std::same_as<Rank, std::uint64_t>) {
      if (ball_count(static_cast<long long>(n), static_cast<long long>(k)) >
          BigCount(std::numeric_limits<std::uint64_t>::max())) {
        throw ScaleError("ball (n=" + std::to_string(n) + ", k=" +
                         std::to_string(k) + ") too large for 64-bit ranks");
      }
    }
    binom_.assign(k + 1, std::vector<Rank>(n + 1, Rank(0)));
    for (std::size_t p = 0; p <= n; ++p) binom_[0][p] = Rank(1);
    for (std::size_t j = 1; j <= k; ++j) {
      for (std::size_t p = j; p <= n; ++p) {
        binom_[j][p] = binom_[j][p - 1] + binom_[j - 1][p - 1];
      }
    }
    shell_offset_.assign(k + 2, Rank(0));
    for (std::size_t i = 0; i <= k; ++i) {
      shell_offset_[i + 1] = shell_offset_[i] + binom_[i][n];
    }
  }

  const BallSpec& spec() const noexcept { return spec_; }

  /// Ball volume M.
  const Rank& size() const noexcept { return shell_offset_.back(); }

  Rank rank(const BitString& x) const {
    spec_.center.require_same_width(x);
    const BitString mask = x ^ spec_.center;
    const std::size_t shell = mask.popcount();
    if (shell > spec_.radius) {
      throw DomainError(x.to_string() + " lies outside the ball of radius " +
                        std::to_string(spec_.radius));
    }
    Rank r = shell_offset_[shell];
    std::size_t j = 0;
    for (std::size_t w = 0; w < mask.word_count(); ++w) {
      std::uint64_t bits = mask.word(w);
      while (bits != 0) {
        const auto tz = static_cast<std::size_t>(std::countr_zero(bits));
        ++j;
        r += binom_[j][w * BitString::kWordBits + tz];
        bits &= bits - 1;
      }
    }
    return r;
  }

  BitString unrank(const Rank& r) const {
    if (r < Rank(0) || !(r < size())) {
      throw DomainError("ball rank out of range [0, M)");
    }
    const auto shell_it =
        std::upper_bound(shell_offset_.begin(), shell_offset_.end(), r);
    const auto shell =
        static_cast<std::size_t>(std::distance(shell_offset_.begin(), shell_it)) - 1;
    Rank local = r - shell_offset_[shell];
    BitString x = spec_.center;
    std::size_t upper = spec_.width();
    for (std::size_t j = shell; j >= 1; --j) {
      // Largest p in [j-1, upper) with C(p, j) <= local.
      const auto& row = binom_[j];
      const auto it = std::upper_bound(row.begin() + static_cast<std::ptrdiff_t>(j - 1),
                                       row.begin() + static_cast<std::ptrdiff_t>(upper),
                                       local);
      const auto p = static_cast<std::size_t>(std::distance(row.begin(), it)) - 1;
      local -= row[p];
      x.flip(p);
      upper = p;
    }
    return x;
  }

 private:
  BallSpec spec_;
  std::vector<std::vector<Rank>> binom_;
  std::vector<Rank> shell_offset_;
};

inline BigCount ball_rank(const BallSpec& spec, const BitString& x) {
  return BallIndexer<BigCount>(spec).rank(x);
}

inline BitString ball_unrank(const BallSpec& spec, const BigCount& r) {
  return BallIndexer<BigCount>(spec).unrank(r);
}

/// Uniform draw from a Hamming ball. Balls covering at least half the cube
/// are sampled by rejection; smaller ones by unranking a uniform rank.
template <class Rng>
BitString sample_uniform_in_ball(const BallSpec& spec, Rng& rng) {
  const auto n = static_cast<long long>(spec.width());
  const BigCount m = ball_count(n, static_cast<long long>(spec.radius));
  if (2 * m >= (BigCount(1) << static_cast<unsigned>(n))) {
    for (;;) {
      BitString a = random_bitstring(spec.width(), rng);
      if (hamming_distance(a, spec.center) <= spec.radius) return a;
    }
  }
  if (m <= BigCount(std::numeric_limits<std::uint64_t>::max())) {
    const BallIndexer<std::uint64_t> idx(spec);
    std::uniform_int_distribution<std::uint64_t> dist(0, idx.size() - 1);
    return idx.unrank(dist(rng));
  }
  const BallIndexer<BigCount> idx(spec);
  boost::random::uniform_int_distribution<BigCount> dist(0, idx.size() - 1);
  return idx.unrank(dist(rng));
}

}  // namespace hybrid_search
