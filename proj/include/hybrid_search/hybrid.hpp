#pragma once

// Search strategies built on the counted oracles, and a reproducible Monte
// Carlo harness that aggregates their query costs.
//
//   hybrid          Grover over the radius-k ball, measure, verify with one
//                   threshold query (restart on failure), then scan the
//                   radius-k ball around the measured string.
//   pure_quantum    Grover for the single solution, verified by an equality
//                   query.
//   pure_classical  Shuffled scan of the whole cube.
//   smart_classical Bit-by-bit descent on the distance oracle.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "hybrid_search/ball_index.hpp"
#include "hybrid_search/bitstring.hpp"
#include "hybrid_search/errors.hpp"
#include "hybrid_search/grover_sim.hpp"
#include "hybrid_search/oracles.hpp"
#include "hybrid_search/query_model.hpp"

namespace hybrid_search {

enum class Strategy { hybrid, pure_quantum, pure_classical, smart_classical };
enum class Engine { statevector, idealized };
enum class ScanOrder { shuffled, canonical };

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::hybrid: return "hybrid";
    case Strategy::pure_quantum: return "quantum";
    case Strategy::pure_classical: return "classical";
    case Strategy::smart_classical: return "smart";
  }
  return "?";
}
inline std::string_view to_string(Engine e) {
  return e == Engine::statevector ? "statevector" : "idealized";
}
inline std::string_view to_string(ScanOrder o) {
  return o == ScanOrder::shuffled ? "shuffled" : "canonical";
}

using Rng = std::mt19937_64;

struct TrialRecord {
  Strategy strategy = Strategy::hybrid;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t restarts = 0;
  QueryLedger ledger;
  bool found = false;
  std::optional<BitString> answer;
  std::optional<BitString> measured;                      // hybrid only
  std::optional<std::uint64_t> solution_position_in_scan;  // 1-based
  std::uint64_t seed = 0;
};

namespace detail {

// Sparse Fisher-Yates: draws a uniform permutation of [0, size) one element
// at a time, storing only the displaced entries.
template <class Rank, class Map>
class LazyPermutation {
 public:
  explicit LazyPermutation(Rank size) : size_(std::move(size)) {}

  bool done() const { return !(next_ < size_); }

  template <class Gen>
  Rank next(Gen& rng) {
    Rank j = draw(next_, size_ - 1, rng);
    Rank at_j = lookup(j);
    Rank at_next = lookup(next_);
    if (j != next_) swapped_[j] = std::move(at_next);
    swapped_.erase(next_);
    ++next_;
    return at_j;
  }

 private:
  Rank lookup(const Rank& i) const {
    auto it = swapped_.find(i);
    return it == swapped_.end() ? i : it->second;
  }

  template <class Gen>
  static Rank draw(const Rank& lo, const Rank& hi, Gen& rng) {
    if constexpr (std::is_same_v<Rank, std::uint64_t>) {
      return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
    } else {
      return boost::random::uniform_int_distribution<Rank>(lo, hi)(rng);
    }
  }

  Rank size_;
  Rank next_{0};
  Map swapped_;
};

template <class Rank, class Map>
std::uint64_t scan_ball(const BallSpec& ball, const SolutionInstance& inst, ScanOrder order,
                        Rng& rng, QueryLedger& ledger) {
  const BallIndexer<Rank> index(ball);
  std::uint64_t queries = 0;
  if (order == ScanOrder::canonical) {
    for (const BitString& x : ball_iter(ball)) {
      ++queries;
      if (inst.equality_query(x, ledger)) return queries;
    }
  } else {
    LazyPermutation<Rank, Map> perm(index.size());
    while (!perm.done()) {
      ++queries;
      if (inst.equality_query(index.unrank(perm.next(rng)), ledger)) return queries;
    }
  }
  throw InvariantError("classical scan exhausted the ball without finding the solution");
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Per-trial seed derived from the run seed and the trial index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
  return detail::splitmix64(detail::splitmix64(seed) ^ trial);
}

/// Scans ball(a, k) with equality queries until the solution is found and
/// returns the number of queries spent. The shuffled order visits the ball in
/// a uniformly random permutation, so the expected cost is (M + 1) / 2.
inline std::uint64_t classical_phase(const BitString& a, std::size_t k,
                                     const SolutionInstance& inst, ScanOrder order, Rng& rng,
                                     QueryLedger& ledger) {
  if (a.width() != inst.n()) throw PreconditionError("scan center width mismatch");
  BallSpec ball(a, k);
  const BigCount m = ball_count(static_cast<long long>(a.width()), static_cast<long long>(k));
  if (m <= BigCount(std::numeric_limits<std::uint64_t>::max())) {
    return detail::scan_ball<std::uint64_t, std::unordered_map<std::uint64_t, std::uint64_t>>(
        ball, inst, order, rng, ledger);
  }
  return detail::scan_ball<BigCount, std::map<BigCount, BigCount>>(ball, inst, order, rng,
                                                                   ledger);
}

/// Runs the quantum phase with the radius-k threshold oracle marking, and
/// returns the measured string. Charges plan.iterations oracle calls.
inline BitString quantum_phase(const SolutionInstance& inst, std::size_t k, Engine engine,
                               Rng& rng, QueryLedger& ledger) {
  const std::size_t n = inst.n();
  if (engine == Engine::statevector) {
    const MarkedSet marked = inst.marked_set(ThresholdPredicate{k});
    const GroverPlan pl = plan(n, BigCount(marked.size()));
    const StateVector state = run(n, marked, pl.iterations, ledger);
    return measure(state, rng);
  }
  // Marked amplitudes stay equal to each other, as do unmarked ones, so the
  // outcome is a uniform marked string with probability p and a uniform
  // unmarked string otherwise.
  const GroverPlan pl = plan(n, ball_count(static_cast<long long>(n), static_cast<long long>(k)));
  ledger.quantum_oracle_calls += pl.iterations;
  std::bernoulli_distribution success(std::min(1.0, pl.predicted_success));
  if (k >= n || success(rng)) return inst.sample_marked(k, rng);
  return inst.sample_unmarked(k, rng);
}

namespace detail {

inline void check_engine_scale(std::size_t n, Engine engine) {
  if (engine == Engine::statevector && n > kMaxStateQubits) {
    throw ScaleError("statevector engine supports n <= 24, got n=" + std::to_string(n));
  }
}

}  // namespace detail

inline TrialRecord hybrid_search(const SolutionInstance& inst, std::size_t k, Engine engine,
                                 Rng& rng, ScanOrder order = ScanOrder::shuffled) {
  const std::size_t n = inst.n();
  detail::check_engine_scale(n, engine);
  if (k > n) throw DomainError("hybrid_search: k exceeds n");
  TrialRecord rec;
  rec.strategy = Strategy::hybrid;
  rec.n = n;
  rec.k = k;
  for (;;) {
    BitString a = quantum_phase(inst, k, engine, rng, rec.ledger);
    const bool inside = inst.threshold_query(k, a, rec.ledger);
    rec.measured = a;
    if (inside) break;
    ++rec.restarts;
  }
  const BitString center = *rec.measured;
  const std::uint64_t pos = classical_phase(center, k, inst, order, rng, rec.ledger);
  rec.solution_position_in_scan = pos;
  // The scan only returns after a positive equality query.
  rec.found = true;
  return rec;
}

inline TrialRecord pure_quantum(const SolutionInstance& inst, Engine engine, Rng& rng) {
  const std::size_t n = inst.n();
  detail::check_engine_scale(n, engine);
  TrialRecord rec;
  rec.strategy = Strategy::pure_quantum;
  rec.n = n;
  rec.k = 0;
  for (;;) {
    BitString a = quantum_phase(inst, 0, engine, rng, rec.ledger);
    if (inst.equality_query(a, rec.ledger)) {
      rec.answer = a;
      rec.found = true;
      return rec;
    }
    ++rec.restarts;
  }
}

inline constexpr std::size_t kMaxClassicalScanWidth = 40;

inline TrialRecord pure_classical(const SolutionInstance& inst, Rng& rng) {
  const std::size_t n = inst.n();
  if (n > kMaxClassicalScanWidth) {
    throw ScaleError("pure classical scan supports n <= 40, got n=" + std::to_string(n));
  }
  TrialRecord rec;
  rec.strategy = Strategy::pure_classical;
  rec.n = n;
  rec.k = n;
  const BitString origin(n);
  rec.solution_position_in_scan =
      classical_phase(origin, n, inst, ScanOrder::shuffled, rng, rec.ledger);
  rec.found = true;
  return rec;
}

/// Flips bits in ascending order, keeping a flip only if the distance to the
/// solution drops. Uses at most n + 1 distance queries.
inline TrialRecord smart_classical(const SolutionInstance& inst, const BitString& start) {
  if (start.width() != inst.n()) throw PreconditionError("start width mismatch");
  TrialRecord rec;
  rec.strategy = Strategy::smart_classical;
  rec.n = inst.n();
  BitString cur = start;
  std::size_t d = inst.dist_query(cur, rec.ledger);
  for (std::size_t i = 0; i < cur.width() && d != 0; ++i) {
    cur.flip(i);
    const std::size_t flipped = inst.dist_query(cur, rec.ledger);
    if (flipped < d) {
      d = flipped;
    } else {
      cur.flip(i);
    }
  }
  rec.found = d == 0;
  rec.answer = cur;
  return rec;
}

struct MonteCarloConfig {
  Strategy strategy = Strategy::hybrid;
  std::size_t n = 12;
  std::size_t k = 0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  Engine engine = Engine::statevector;
  ScanOrder order = ScanOrder::shuffled;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Sample statistics of one per-trial quantity.
struct Stat {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) estimator
  double min = 0.0;
  double max = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;

  double sem(std::uint64_t trials) const {
    return stddev / std::sqrt(static_cast<double>(trials));
  }
};

inline Stat summarize(const std::vector<double>& xs) {
  if (xs.size() < 2) throw DomainError("summary statistics need at least 2 samples");
  Stat s;
  double sum = 0.0;
  s.min = xs.front();
  s.max = xs.front();
  for (double x : xs) {
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  const auto count = static_cast<double>(xs.size());
  s.mean = sum / count;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / (count - 1.0));
  const double half = 1.96 * s.stddev / std::sqrt(count);
  s.ci95_low = s.mean - half;
  s.ci95_high = s.mean + half;
  return s;
}

struct MonteCarloSummary {
  MonteCarloConfig config;
  std::uint64_t trials = 0;
  Stat distance_queries;
  Stat threshold_queries;
  Stat promise_queries;
  Stat equality_queries;
  Stat quantum_oracle_calls;
  Stat total_queries;
  Stat restarts;
  std::optional<HybridModel> model;  // cost model at the matching (n, k)
  LogReal grover_baseline;           // (pi/4) 2^{n/2}
  double executed_gain = 0.0;        // mean total / grover_baseline
};

inline void validate(const MonteCarloConfig& c) {
  if (c.trials < 2) throw DomainError("trials must be >= 2");
  if (c.n < 1 || c.n > kMaxWidth) {
    throw DomainError("n must be in [1, 1024], got " + std::to_string(c.n));
  }
  if (c.k > c.n) {
    throw DomainError("k must be in [0, n=" + std::to_string(c.n) + "], got " +
                      std::to_string(c.k));
  }
  if (c.strategy == Strategy::hybrid || c.strategy == Strategy::pure_quantum) {
    detail::check_engine_scale(c.n, c.engine);
    const auto k = c.strategy == Strategy::hybrid ? c.k : 0;
    (void)plan(c.n, ball_count(static_cast<long long>(c.n), static_cast<long long>(k)));
  }
  if (c.strategy == Strategy::pure_classical && c.n > kMaxClassicalScanWidth) {
    throw ScaleError("pure classical scan supports n <= 40, got n=" + std::to_string(c.n));
  }
}

/// Runs one trial with its own seed and a fresh uniformly drawn solution.
inline TrialRecord run_trial(const MonteCarloConfig& c, std::uint64_t trial_index) {
  const std::uint64_t seed = mix_seed(c.seed, trial_index);
  Rng rng(seed);
  const SolutionInstance inst(random_bitstring(c.n, rng));
  TrialRecord rec;
  switch (c.strategy) {
    case Strategy::hybrid: rec = hybrid_search(inst, c.k, c.engine, rng, c.order); break;
    case Strategy::pure_quantum: rec = pure_quantum(inst, c.engine, rng); break;
    case Strategy::pure_classical: rec = pure_classical(inst, rng); break;
    case Strategy::smart_classical: {
      const BitString start = random_bitstring(c.n, rng);
      rec = smart_classical(inst, start);
      break;
    }
  }
  rec.seed = seed;
  if (!rec.found) throw InvariantError("trial finished without finding the solution");
  return rec;
}

/// Runs every trial and returns the raw records in trial order. Trials may
/// execute on several threads; results do not depend on scheduling.
inline std::vector<TrialRecord> run_trials(const MonteCarloConfig& c) {
  validate(c);
  std::vector<TrialRecord> records(c.trials);
  unsigned threads = c.threads != 0 ? c.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, c.trials));
  if (threads <= 1) {
    for (std::uint64_t t = 0; t < c.trials; ++t) records[t] = run_trial(c, t);
    return records;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t t = next++; t < c.trials; t = next++) records[t] = run_trial(c, t);
      } catch (...) {
        errors[w] = std::current_exception();
        next = c.trials;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

inline MonteCarloSummary summarize(const MonteCarloConfig& c,
                                   const std::vector<TrialRecord>& records) {
  MonteCarloSummary s;
  s.config = c;
  s.trials = records.size();
  const auto column = [&](auto get) {
    std::vector<double> xs;
    xs.reserve(records.size());
    for (const auto& r : records) xs.push_back(static_cast<double>(get(r)));
    return summarize(xs);
  };
  s.distance_queries = column([](const TrialRecord& r) { return r.ledger.distance_queries; });
  s.threshold_queries = column([](const TrialRecord& r) { return r.ledger.threshold_queries; });
  s.promise_queries = column([](const TrialRecord& r) { return r.ledger.promise_queries; });
  s.equality_queries = column([](const TrialRecord& r) { return r.ledger.equality_queries; });
  s.quantum_oracle_calls =
      column([](const TrialRecord& r) { return r.ledger.quantum_oracle_calls; });
  s.total_queries = column([](const TrialRecord& r) { return r.ledger.total(); });
  s.restarts = column([](const TrialRecord& r) { return r.restarts; });
  const auto n = static_cast<long long>(c.n);
  switch (c.strategy) {
    case Strategy::hybrid: s.model = evaluate(n, static_cast<long long>(c.k)); break;
    case Strategy::pure_quantum: s.model = evaluate(n, 0); break;
    case Strategy::pure_classical: s.model = evaluate(n, n); break;
    case Strategy::smart_classical: break;
  }
  s.grover_baseline = hybrid_search::grover_baseline(n);
  s.executed_gain = s.total_queries.mean / s.grover_baseline.to_double();
  return s;
}

inline MonteCarloSummary monte_carlo(const MonteCarloConfig& c) {
  return summarize(c, run_trials(c));
}

}  // namespace hybrid_search
