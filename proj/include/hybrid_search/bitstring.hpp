#pragma once

// Fixed-width packed bit strings, Hamming geometry and canonical Hamming-ball
// enumeration.
//
// Bit order is LSB-first: bit 0 is the least significant bit of word 0. The
// textual form is "0x<hex>/<width>", e.g. "0x5A/8".

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hybrid_search/errors.hpp"

namespace hybrid_search {

inline constexpr std::size_t kMaxWidth = 1024;

class BitString {
 public:
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kWords = kMaxWidth / kWordBits;

  /// All-zero string of the given width.
  explicit BitString(std::size_t width) : width_(width) {
    if (width < 1 || width > kMaxWidth) {
      throw DomainError("BitString width must be in [1, 1024], got " +
                        std::to_string(width));
    }
  }

  /// Width-bit string whose low bits are taken from `value`.
  static BitString from_uint(std::size_t width, std::uint64_t value) {
    BitString s(width);
    s.words_[0] = value;
    s.mask_tail();
    return s;
  }

  std::size_t width() const noexcept { return width_; }
  std::size_t word_count() const noexcept {
    return (width_ + kWordBits - 1) / kWordBits;
  }
  std::uint64_t word(std::size_t w) const noexcept { return words_[w]; }

  /// Low 64 bits as an integer (the full value when width <= 64).
  std::uint64_t to_uint() const noexcept { return words_[0]; }

  bool test(std::size_t i) const {
    check_index(i);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  void set(std::size_t i, bool v = true) {
    check_index(i);
    const std::uint64_t m = std::uint64_t{1} << (i % kWordBits);
    if (v) {
      words_[i / kWordBits] |= m;
    } else {
      words_[i / kWordBits] &= ~m;
    }
  }

  void flip(std::size_t i) {
    check_index(i);
    words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
  }

  std::size_t popcount() const noexcept {
    std::size_t c = 0;
    for (std::size_t w = 0; w < word_count(); ++w) {
      c += static_cast<std::size_t>(std::popcount(words_[w]));
    }
    return c;
  }

  BitString& operator^=(const BitString& o) {
    require_same_width(o);
    for (std::size_t w = 0; w < word_count(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  friend BitString operator^(BitString a, const BitString& b) {
    a ^= b;
    return a;
  }

  friend bool operator==(const BitString& a, const BitString& b) noexcept {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }

  /// Numeric order (most significant word first); widths compared first.
  friend bool operator<(const BitString& a, const BitString& b) noexcept {
    if (a.width_ != b.width_) return a.width_ < b.width_;
    for (std::size_t w = a.word_count(); w-- > 0;) {
      if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
    }
    return false;
  }

  void require_same_width(const BitString& o) const {
    if (o.width_ != width_) {
      throw PreconditionError("bit string width mismatch: " +
                              std::to_string(width_) + " vs " +
                              std::to_string(o.width_));
    }
  }

  /// "0x<hex>/<width>" with ceil(width/4) upper-case digits.
  std::string to_string() const {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    const std::size_t nibbles = (width_ + 3) / 4;
    std::string hex(nibbles, '0');
    for (std::size_t d = 0; d < nibbles; ++d) {
      const std::size_t bit = d * 4;
      const unsigned v =
          static_cast<unsigned>((words_[bit / kWordBits] >> (bit % kWordBits)) & 0xFU);
      hex[nibbles - 1 - d] = kDigits[v];
    }
    return "0x" + hex + "/" + std::to_string(width_);
  }

  /// Parses "0x<hex>/<width>". Leading zeros are allowed; set bits at or
  /// above `width` are rejected.
  static BitString parse(std::string_view text) {
    const auto fail = [&](const std::string& why) -> DomainError {
      return DomainError("cannot parse bit string '" + std::string(text) +
                         "': " + why);
    };
    if (text.size() < 4 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
      throw fail("expected 0x<hex>/<width>");
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos || slash == 2) {
      throw fail("expected 0x<hex>/<width>");
    }
    const std::string_view hex = text.substr(2, slash - 2);
    const std::string_view wtext = text.substr(slash + 1);
    if (wtext.empty() || wtext.size() > 5 ||
        !std::all_of(wtext.begin(), wtext.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw fail("bad width");
    }
    const std::size_t width = std::stoul(std::string(wtext));
    if (width < 1 || width > kMaxWidth) throw fail("width out of [1, 1024]");
    BitString s(width);
    for (std::size_t d = 0; d < hex.size(); ++d) {
      const char c = hex[hex.size() - 1 - d];
      unsigned v = 0;
      if (c >= '0' && c <= '9') {
        v = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        v = static_cast<unsigned>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        v = static_cast<unsigned>(c - 'A' + 10);
      } else {
        throw fail("bad hex digit");
      }
      for (unsigned b = 0; b < 4; ++b) {
        if (((v >> b) & 1U) == 0) continue;
        const std::size_t pos = d * 4 + b;
        if (pos >= width) throw fail("value does not fit in width");
        s.set(pos);
      }
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const BitString& s) {
    return os << s.to_string();
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= width_) {
      throw PreconditionError("bit index " + std::to_string(i) +
                              " out of range for width " +
                              std::to_string(width_));
    }
  }

  void mask_tail() noexcept {
    const std::size_t full = width_ / kWordBits;
    const std::size_t rem = width_ % kWordBits;
    if (rem != 0) words_[full] &= (std::uint64_t{1} << rem) - 1;
    for (std::size_t w = word_count(); w < kWords; ++w) words_[w] = 0;
  }

  std::size_t width_;
  std::array<std::uint64_t, kWords> words_{};

  template <class Rng>
  friend BitString random_bitstring(std::size_t width, Rng& rng);
};

inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
  a.require_same_width(b);
  std::size_t d = 0;
  for (std::size_t w = 0; w < a.word_count(); ++w) {
    d += static_cast<std::size_t>(std::popcount(a.word(w) ^ b.word(w)));
  }
  return d;
}

/// Uniform draw from {0,1}^width.
template <class Rng>
BitString random_bitstring(std::size_t width, Rng& rng) {
  BitString s(width);
  std::uniform_int_distribution<std::uint64_t> dist;
  for (std::size_t w = 0; w < s.word_count(); ++w) s.words_[w] = dist(rng);
  s.mask_tail();
  return s;
}

/// The Hamming ball {a : D_H(a, center) <= radius}.
struct BallSpec {
  BitString center;
  std::size_t radius;

  BallSpec(BitString c, std::size_t r) : center(std::move(c)), radius(r) {
    if (radius > center.width()) {
      throw DomainError("ball radius " + std::to_string(radius) +
                        " exceeds width " + std::to_string(center.width()));
    }
  }

  std::size_t width() const noexcept { return center.width(); }
};

/// Lazily enumerates a Hamming ball in canonical order: ascending distance
/// shell, then ascending flip mask (as an unsigned integer) within a shell.
/// The flip mask is `x ^ center`, so for a zero center this is plain numeric
/// order of the emitted strings.
class BallRange {
 public:
  class iterator {
   public:
    using value_type = BitString;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;

    const BitString& operator*() const { return current_; }
    const BitString* operator->() const { return &current_; }

    iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return it.done_;
    }

   private:
    friend class BallRange;

    explicit iterator(const BallSpec& spec)
        : spec_(&spec), current_(spec.center), done_(false) {}

    // Next combination of `shell_` positions in colex order, which is the
    // numeric order of the corresponding masks.
    void advance() {
      const std::size_t n = spec_->width();
      const std::size_t s = positions_.size();
      std::size_t j = 0;
      while (j < s) {
        const std::size_t limit = (j + 1 < s) ? positions_[j + 1] : n;
        if (positions_[j] + 1 < limit) break;
        ++j;
      }
      if (j < s) {
        ++positions_[j];
        for (std::size_t i = 0; i < j; ++i) positions_[i] = i;
      } else {
        if (s + 1 > spec_->radius || s + 1 > n) {
          done_ = true;
          return;
        }
        positions_.resize(s + 1);
        for (std::size_t i = 0; i <= s; ++i) positions_[i] = i;
      }
      current_ = spec_->center;
      for (std::size_t p : positions_) current_.flip(p);
    }

    const BallSpec* spec_ = nullptr;
    BitString current_{1};
    std::vector<std::size_t> positions_;
    bool done_ = true;
  };

  explicit BallRange(BallSpec spec) : spec_(std::move(spec)) {}

  iterator begin() const { return iterator(spec_); }
  std::default_sentinel_t end() const noexcept { return {}; }

  const BallSpec& spec() const noexcept { return spec_; }

 private:
  BallSpec spec_;
};

inline BallRange ball_iter(BallSpec spec) { return BallRange(std::move(spec)); }

}  // namespace hybrid_search
