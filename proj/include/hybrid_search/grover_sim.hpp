#pragma once

// Dense statevector Grover simulation over an arbitrary marked set, and the
// analytic iteration plan it is checked against.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hybrid_search/bitstring.hpp"
#include "hybrid_search/combinatorics.hpp"
#include "hybrid_search/errors.hpp"
#include "hybrid_search/oracles.hpp"

namespace hybrid_search {

/// Iteration count and success probability for Grover search with M marked
/// states out of N = 2^n.
struct GroverPlan {
  std::size_t n = 0;
  BigCount marked;                 ///< M
  double fraction = 0.0;           ///< M / N
  double theta = 0.0;              ///< asin(sqrt(M / N))
  std::uint64_t iterations = 0;    ///< floor(pi / (4 theta))
  double predicted_success = 0.0;  ///< sin^2((2j + 1) theta)
  LogReal smooth_iterations;       ///< (pi/4) sqrt(N / M), the cost-model value
};

inline double success_probability(double theta, std::uint64_t iterations) {
  const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return s * s;
}

inline GroverPlan plan(std::size_t n, const BigCount& m) {
  if (n < 1 || n > kMaxWidth) {
    throw DomainError("plan: n must be in [1, 1024], got " + std::to_string(n));
  }
  if (m < 1 || m > (BigCount(1) << static_cast<unsigned>(n))) {
    throw DomainError("plan: marked count must be in [1, 2^n], got " + m.str());
  }
  GroverPlan p;
  p.n = n;
  p.marked = m;
  const double ln_fraction = to_log(m).ln() - static_cast<double>(n) * std::numbers::ln2;
  p.fraction = std::exp(ln_fraction);
  p.theta = m == (BigCount(1) << static_cast<unsigned>(n))
                ? std::numbers::pi / 2.0
                : std::asin(std::exp(0.5 * ln_fraction));
  const double j = std::floor(std::numbers::pi / (4.0 * p.theta));
  if (!(j < 0x1p62)) {
    throw ScaleError("plan: iteration count for n=" + std::to_string(n) + ", M=" +
                     m.str() + " does not fit a 64-bit counter");
  }
  p.iterations = static_cast<std::uint64_t>(j);
  p.predicted_success = success_probability(p.theta, p.iterations);
  // With j = 0 the measurement succeeds with the baseline M/N; one iteration
  // is taken only if it does better.
  if (p.iterations == 0 && success_probability(p.theta, 1) > p.fraction) {
    p.iterations = 1;
    p.predicted_success = success_probability(p.theta, 1);
  }
  p.smooth_iterations =
      LogReal::from_double(std::numbers::pi / 4.0) * LogReal::from_log(-0.5 * ln_fraction);
  return p;
}

inline constexpr std::size_t kMaxStateQubits = 24;

/// 2^n complex amplitudes indexed by basis state (bit i of the index is
/// qubit i).
class StateVector {
 public:
  using amplitude = std::complex<double>;

  StateVector(std::size_t n, std::vector<amplitude> amps) : n_(n), amps_(std::move(amps)) {
    check_qubits(n_);
    if (amps_.size() != (std::size_t{1} << n_)) {
      throw PreconditionError("statevector size must be 2^n");
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return amps_.size(); }
  const std::vector<amplitude>& amplitudes() const noexcept { return amps_; }
  std::vector<amplitude>& amplitudes() noexcept { return amps_; }
  const amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  static void check_qubits(std::size_t n) {
    if (n < 1 || n > kMaxStateQubits) {
      throw ScaleError("statevector supports 1 <= n <= 24 qubits, got n=" +
                       std::to_string(n));
    }
  }

 private:
  std::size_t n_;
  std::vector<amplitude> amps_;
};

/// Uniform superposition: every amplitude 2^{-n/2}.
inline StateVector init_uniform(std::size_t n) {
  StateVector::check_qubits(n);
  const std::size_t size = std::size_t{1} << n;
  const double a = 1.0 / std::sqrt(static_cast<double>(size));
  return StateVector(n, std::vector<StateVector::amplitude>(size, {a, 0.0}));
}

/// Negates the amplitudes of marked states.
inline void phase_flip(StateVector& state, const MarkedSet& marked) {
  if (marked.n() != state.n()) throw PreconditionError("marked set width mismatch");
  auto& amps = state.amplitudes();
  for (auto i : marked.indices()) amps[i] = -amps[i];
}

/// Inversion about the mean, 2|s><s| - I. The mean is summed in index order.
inline void diffuse(StateVector& state) {
  auto& amps = state.amplitudes();
  StateVector::amplitude sum{0.0, 0.0};
  for (const auto& a : amps) sum += a;
  const auto twice_mean = 2.0 * sum / static_cast<double>(amps.size());
  for (auto& a : amps) a = twice_mean - a;
}

/// One Grover iteration: oracle phase flip then diffusion. Charges one
/// quantum oracle call.
inline void grover_iterate(StateVector& state, const MarkedSet& marked, QueryLedger& ledger) {
  if (marked.empty()) throw PreconditionError("Grover iteration needs a nonempty marked set");
  phase_flip(state, marked);
  diffuse(state);
  ++ledger.quantum_oracle_calls;
}

inline constexpr double kNormTolerance = 1e-9;

/// `iterations` Grover iterations from the uniform state.
inline StateVector run(std::size_t n, const MarkedSet& marked, std::uint64_t iterations,
                       QueryLedger& ledger) {
  if (marked.n() != n) throw PreconditionError("marked set width mismatch");
  if (marked.empty()) throw PreconditionError("Grover search needs a nonempty marked set");
  StateVector state = init_uniform(n);
  for (std::uint64_t t = 0; t < iterations; ++t) grover_iterate(state, marked, ledger);
  if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
    throw InvariantError("statevector norm drifted beyond 1e-9");
  }
  return state;
}

/// Samples a basis state with probability |amp|^2.
template <class Rng>
BitString measure(const StateVector& state, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng) * state.norm_squared();
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    acc += p;
    last_nonzero = i;
    if (u < acc) return BitString::from_uint(state.n(), i);
  }
  return BitString::from_uint(state.n(), last_nonzero);
}

/// Total probability on the marked states.
inline double marked_mass(const StateVector& state, const MarkedSet& marked) {
  if (marked.n() != state.n()) throw PreconditionError("marked set width mismatch");
  double s = 0.0;
  for (auto i : marked.indices()) s += std::norm(state[i]);
  return s;
}

}  // namespace hybrid_search
