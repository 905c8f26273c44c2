#pragma once

// Exact and log-domain counting: binomials, Hamming-ball volumes and the
// continuous minimiser of the gain formula.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hybrid_search/errors.hpp"

namespace hybrid_search {

/// Arbitrary-precision nonnegative integer.
using BigCount = boost::multiprecision::cpp_int;

/// A nonnegative real stored as its natural log, with an explicit zero.
///
/// Products, quotients and powers are additions/multiplications on the log;
/// sums use log-sum-exp. Values such as 2^500 or 1e-50 are represented
/// without overflow.
class LogReal {
 public:
  /// Exact zero.
  constexpr LogReal() = default;

  static constexpr LogReal zero() noexcept { return LogReal(); }
  static constexpr LogReal one() noexcept { return from_log(0.0); }

  static constexpr LogReal from_log(double ln_value) noexcept {
    LogReal r;
    r.zero_ = false;
    r.ln_ = ln_value;
    return r;
  }

  static LogReal from_double(double v) {
    if (v < 0.0 || std::isnan(v)) {
      throw DomainError("LogReal cannot hold negative value " + std::to_string(v));
    }
    return v == 0.0 ? zero() : from_log(std::log(v));
  }

  bool is_zero() const noexcept { return zero_; }

  /// Natural log; -inf for zero.
  double ln() const noexcept {
    return zero_ ? -std::numeric_limits<double>::infinity() : ln_;
  }
  double log10() const noexcept { return ln() / std::numbers::ln10; }
  double to_double() const noexcept { return zero_ ? 0.0 : std::exp(ln_); }

  friend LogReal operator+(const LogReal& a, const LogReal& b) noexcept {
    if (a.zero_) return b;
    if (b.zero_) return a;
    const double hi = a.ln_ > b.ln_ ? a.ln_ : b.ln_;
    const double lo = a.ln_ > b.ln_ ? b.ln_ : a.ln_;
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }

  friend LogReal operator*(const LogReal& a, const LogReal& b) noexcept {
    if (a.zero_ || b.zero_) return zero();
    return from_log(a.ln_ + b.ln_);
  }

  friend LogReal operator/(const LogReal& a, const LogReal& b) {
    if (b.zero_) throw DomainError("LogReal division by zero");
    if (a.zero_) return zero();
    return from_log(a.ln_ - b.ln_);
  }

  LogReal& operator+=(const LogReal& o) noexcept { return *this = *this + o; }
  LogReal& operator*=(const LogReal& o) noexcept { return *this = *this * o; }
  LogReal& operator/=(const LogReal& o) { return *this = *this / o; }

  /// x^p for real p; 0^p is 0 for p > 0.
  LogReal pow(double p) const {
    if (zero_) {
      if (p > 0) return zero();
      throw DomainError("LogReal: zero raised to non-positive power");
    }
    return from_log(ln_ * p);
  }
  LogReal sqrt() const { return pow(0.5); }

  friend bool operator==(const LogReal& a, const LogReal& b) noexcept {
    if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
    return a.ln_ == b.ln_;
  }
  friend std::partial_ordering operator<=>(const LogReal& a,
                                           const LogReal& b) noexcept {
    return a.ln() <=> b.ln();
  }

 private:
  bool zero_ = true;
  double ln_ = 0.0;
};

/// Exact C(n, i).
inline BigCount binomial(long long n, long long i) {
  if (n < 0 || i < 0 || i > n) {
    throw DomainError("binomial(" + std::to_string(n) + ", " +
                      std::to_string(i) + ") requires 0 <= i <= n");
  }
  if (i > n - i) i = n - i;
  BigCount c = 1;
  // C(n, j) = C(n, j-1) * (n-j+1) / j is exact at every step.
  for (long long j = 1; j <= i; ++j) {
    c *= (n - j + 1);
    c /= j;
  }
  return c;
}

/// Cumulative ball volumes: element k is M(n, k) = sum_{i<=k} C(n, i).
inline std::vector<BigCount> ball_counts(long long n) {
  if (n < 0) throw DomainError("ball_counts requires n >= 0");
  std::vector<BigCount> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  BigCount term = 1;
  BigCount total = 0;
  for (long long i = 0; i <= n; ++i) {
    if (i > 0) {
      term *= (n - i + 1);
      term /= i;
    }
    total += term;
    out.push_back(total);
  }
  return out;
}

/// Exact Hamming-ball volume M(n, k) = sum_{i=0}^{k} C(n, i).
inline BigCount ball_count(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("ball_count(" + std::to_string(n) + ", " +
                      std::to_string(k) + ") requires 0 <= k <= n");
  }
  BigCount term = 1;
  BigCount total = 1;
  for (long long i = 1; i <= k; ++i) {
    term *= (n - i + 1);
    term /= i;
    total += term;
  }
  return total;
}

/// Natural log of an exact integer. The top 64 bits are rounded to a double
/// mantissa and the remaining shift is added as a multiple of ln 2.
inline LogReal to_log(const BigCount& c) {
  if (c < 0) throw DomainError("to_log of a negative count");
  if (c == 0) return LogReal::zero();
  const std::size_t msb = boost::multiprecision::msb(c);
  if (msb < 64) return LogReal::from_log(std::log(c.convert_to<double>()));
  const std::size_t shift = msb - 63;
  const BigCount top = c >> shift;
  const double mantissa = top.convert_to<double>();
  return LogReal::from_log(std::log(mantissa) +
                           static_cast<double>(shift) * std::numbers::ln2);
}

/// 2^exponent in the log field.
inline LogReal log_pow2(double exponent) noexcept {
  return LogReal::from_log(exponent * std::numbers::ln2);
}

/// Stationary point of the gain treated as a function of a continuous ball
/// volume M: M* = ((pi/4) * 2^{n/2})^{2/3}. This is the relaxation used to
/// bracket the tabulated gains.
inline LogReal m_opt_continuous(long long n) {
  if (n < 1) throw DomainError("m_opt_continuous requires n >= 1");
  const double ln_base = std::log(std::numbers::pi / 4.0) +
                         0.5 * static_cast<double>(n) * std::numbers::ln2;
  return LogReal::from_log(ln_base * (2.0 / 3.0));
}

}  // namespace hybrid_search
