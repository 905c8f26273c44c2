#pragma once

// Query-counted oracles over a hidden solution string. Every search strategy
// learns about the solution only through these calls, and every call is
// charged to a QueryLedger.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hybrid_search/ball_index.hpp"
#include "hybrid_search/bitstring.hpp"
#include "hybrid_search/errors.hpp"

namespace hybrid_search {

/// Per-trial oracle usage counters. Counters only ever grow.
struct QueryLedger {
  std::uint64_t distance_queries = 0;      ///< D_H(a, x_sol) evaluations
  std::uint64_t threshold_queries = 0;     ///< [D_H(a, x_sol) <= k] evaluations
  std::uint64_t promise_queries = 0;       ///< [g(a, x_sol) <= l] evaluations
  std::uint64_t equality_queries = 0;      ///< [a == x_sol] evaluations
  std::uint64_t quantum_oracle_calls = 0;  ///< one per Grover iteration

  std::uint64_t total() const noexcept {
    return distance_queries + threshold_queries + promise_queries +
           equality_queries + quantum_oracle_calls;
  }

  friend bool operator==(const QueryLedger&, const QueryLedger&) = default;
};

/// A solution-aware score g(a, x_sol) with threshold l, promising that every
/// pair of strings scoring at most l is within Hamming distance k.
struct PromiseFunction {
  std::string name;
  std::function<std::size_t(const BitString& a, const BitString& x_sol)> g;
  std::size_t l = 0;
  std::size_t k = 0;
};

/// g = D_H(a, x_sol). The sublevel set {g <= l} has diameter min(2l, n).
inline PromiseFunction distance_promise(std::size_t l, std::size_t k) {
  return {"distance",
          [](const BitString& a, const BitString& x) { return hamming_distance(a, x); },
          l, k};
}

/// g = Hamming distance restricted to the low `bits` positions. With l = 0
/// the marked strings agree with x_sol on those positions and are free on the
/// remaining n - bits.
inline PromiseFunction prefix_match_promise(std::size_t bits, std::size_t l, std::size_t k) {
  return {"prefix:" + std::to_string(bits),
          [bits](const BitString& a, const BitString& x) {
            a.require_same_width(x);
            if (bits > a.width()) {
              throw PreconditionError("prefix length exceeds width");
            }
            std::size_t d = 0;
            for (std::size_t i = 0; i < bits; ++i) d += a.test(i) != x.test(i);
            return d;
          },
          l, k};
}

struct ThresholdPredicate {
  std::size_t k;
};
struct PromisePredicate {
  PromiseFunction pf;
};
using MarkPredicate = std::variant<ThresholdPredicate, PromisePredicate>;

inline constexpr std::size_t kMaxEnumerationWidth = 24;

/// Marked basis states of an n <= 24 search space, as sorted indices.
class MarkedSet {
 public:
  MarkedSet(std::size_t n, std::vector<std::uint64_t> indices)
      : n_(n), indices_(std::move(indices)) {
    if (n_ < 1 || n_ > kMaxEnumerationWidth) {
      throw ScaleError("marked sets are limited to n <= 24, got n=" + std::to_string(n_));
    }
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    if (!indices_.empty() && indices_.back() >= (std::uint64_t{1} << n_)) {
      throw DomainError("marked index outside the 2^n search space");
    }
  }

  static MarkedSet from_bitstrings(std::size_t n, const std::vector<BitString>& xs) {
    std::vector<std::uint64_t> idx;
    idx.reserve(xs.size());
    for (const auto& x : xs) {
      if (x.width() != n) throw PreconditionError("marked string width mismatch");
      idx.push_back(x.to_uint());
    }
    return MarkedSet(n, std::move(idx));
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  const std::vector<std::uint64_t>& indices() const noexcept { return indices_; }

  bool contains(std::uint64_t i) const {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }

  std::vector<BitString> to_bitstrings() const {
    std::vector<BitString> out;
    out.reserve(indices_.size());
    for (auto i : indices_) out.push_back(BitString::from_uint(n_, i));
    return out;
  }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> indices_;
};

/// Largest pairwise Hamming distance inside a marked set.
///
/// A multi-source BFS gives every vertex its distance to the set; the
/// farthest member from a is then n - dist(~a, set).
inline std::size_t marked_set_diameter(const MarkedSet& s) {
  if (s.empty()) return 0;
  const std::size_t n = s.n();
  const std::uint64_t size = std::uint64_t{1} << n;
  constexpr auto kUnseen = static_cast<std::uint8_t>(0xFF);
  std::vector<std::uint8_t> dist(size, kUnseen);
  std::deque<std::uint64_t> queue;
  for (auto i : s.indices()) {
    dist[i] = 0;
    queue.push_back(i);
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (std::size_t b = 0; b < n; ++b) {
      const auto u = v ^ (std::uint64_t{1} << b);
      if (dist[u] == kUnseen) {
        dist[u] = static_cast<std::uint8_t>(dist[v] + 1);
        queue.push_back(u);
      }
    }
  }
  std::size_t closest_antipode = n;
  for (auto i : s.indices()) {
    closest_antipode = std::min<std::size_t>(closest_antipode, dist[i ^ (size - 1)]);
  }
  return n - closest_antipode;
}

/// Hidden solution of a search problem. The solution string is private:
/// callers interact through the counted query methods below.
class SolutionInstance {
 public:
  explicit SolutionInstance(BitString x_sol) : x_sol_(std::move(x_sol)) {}

  std::size_t n() const noexcept { return x_sol_.width(); }

  /// Distance gate: returns D_H(a, x_sol).
  std::size_t dist_query(const BitString& a, QueryLedger& ledger) const {
    const std::size_t d = hamming_distance(a, x_sol_);
    ++ledger.distance_queries;
    return d;
  }

  /// Threshold gate: true iff D_H(a, x_sol) <= k.
  bool threshold_query(std::size_t k, const BitString& a, QueryLedger& ledger) const {
    check_radius(k);
    const bool hit = hamming_distance(a, x_sol_) <= k;
    ++ledger.threshold_queries;
    return hit;
  }

  /// Promise gate: true iff g(a, x_sol) <= l.
  bool promise_query(const PromiseFunction& pf, const BitString& a,
                     QueryLedger& ledger) const {
    a.require_same_width(x_sol_);
    const bool hit = pf.g(a, x_sol_) <= pf.l;
    ++ledger.promise_queries;
    return hit;
  }

  /// Membership test f(a) == y, i.e. a == x_sol.
  bool equality_query(const BitString& a, QueryLedger& ledger) const {
    a.require_same_width(x_sol_);
    const bool hit = a == x_sol_;
    ++ledger.equality_queries;
    return hit;
  }

  // The remaining members serve the simulator. They are not queries and are
  // never charged.

  /// Exact set of strings the oracle marks under `pred`.
  MarkedSet marked_set(const MarkPredicate& pred) const {
    if (n() > kMaxEnumerationWidth) {
      throw ScaleError("marked-set enumeration is limited to n <= 24, got n=" +
                       std::to_string(n()));
    }
    std::vector<std::uint64_t> idx;
    if (const auto* t = std::get_if<ThresholdPredicate>(&pred)) {
      check_radius(t->k);
      for (const BitString& a : ball_iter(BallSpec(x_sol_, t->k))) {
        idx.push_back(a.to_uint());
      }
    } else {
      const auto& pf = std::get<PromisePredicate>(pred).pf;
      const std::uint64_t size = std::uint64_t{1} << n();
      for (std::uint64_t i = 0; i < size; ++i) {
        if (pf.g(BitString::from_uint(n(), i), x_sol_) <= pf.l) idx.push_back(i);
      }
    }
    return MarkedSet(n(), std::move(idx));
  }

  /// Uniform element of the radius-k ball around x_sol.
  template <class Rng>
  BitString sample_marked(std::size_t k, Rng& rng) const {
    check_radius(k);
    return sample_uniform_in_ball(BallSpec(x_sol_, k), rng);
  }

  /// Uniform element outside the radius-k ball around x_sol. That complement
  /// is the radius n-k-1 ball around the bitwise complement of x_sol.
  template <class Rng>
  BitString sample_unmarked(std::size_t k, Rng& rng) const {
    check_radius(k);
    if (k >= n()) throw DomainError("radius n marks every string; nothing is unmarked");
    BitString anti = x_sol_;
    for (std::size_t i = 0; i < n(); ++i) anti.flip(i);
    return sample_uniform_in_ball(BallSpec(anti, n() - k - 1), rng);
  }

 private:
  void check_radius(std::size_t k) const {
    if (k > n()) {
      throw DomainError("threshold k=" + std::to_string(k) + " exceeds n=" +
                        std::to_string(n()));
    }
  }

  BitString x_sol_;
};

}  // namespace hybrid_search
