#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace padic {

/// Exact rational over 64-bit integers, denominator kept positive and the
/// fraction reduced. Epoch times and volumes are carried as Rat so that
/// quantities like floor(t*lambda) never cross a floating-point boundary.
/// Arithmetic throws std::overflow_error instead of wrapping.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num) /
                               static_cast<long double>(den));
  }

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  std::string to_string() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(checked(__int128(a.num) * b.den + __int128(b.num) * a.den),
               checked(__int128(a.den) * b.den));
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(checked(__int128(a.num) * b.den - __int128(b.num) * a.den),
               checked(__int128(a.den) * b.den));
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(checked(__int128(a.num) * b.num),
               checked(__int128(a.den) * b.den));
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(checked(__int128(a.num) * b.den),
               checked(__int128(a.den) * b.num));
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rat& a, const Rat& b) {
    return __int128(a.num) * b.den < __int128(b.num) * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

 private:
  static std::int64_t checked(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("Rat: 64-bit overflow");
    return static_cast<std::int64_t>(v);
  }
};

/// Parses "a/b", an integer, or a plain decimal such as "0.25" (converted to
/// the exact fraction over a power of ten). Exponent notation is rejected.
/// `was_decimal`, when non-null, reports whether a decimal literal was seen;
/// callers that feed the value into a floor use it to warn about boundary
/// sensitivity.
Rat parse_rational(std::string_view text, bool* was_decimal = nullptr);

}  // namespace padic
