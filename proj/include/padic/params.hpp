#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "padic/rational.hpp"

namespace padic {

bool is_prime_u64(std::uint64_t n);

/// p^e over unsigned 64-bit integers; throws std::overflow_error past 2^62.
std::uint64_t pow_u64(std::uint64_t p, unsigned e);

/// Model parameters: prime p, precision level m (the state space is the
/// quotient Z_p / p^m Z_p), Vladimirov exponent b > 0 and diffusion
/// coefficient D > 0.
///
/// Residues live in unsigned 64-bit integers, so construction enforces
/// p^m < 2^62 and rejects composite p. When b and D were given as exact
/// rationals they are kept alongside the doubles; the exact forms enable
/// the exact floor(t*lambda) path (integral b, rational D and t).
class Params {
 public:
  Params() : Params(2, 1, 1.0, 1.0) {}

  Params(std::uint64_t p, unsigned m, double b, double D)
      : p_(p), m_(m), b_(b), D_(D) {
    validate();
  }

  Params(std::uint64_t p, unsigned m, const Rat& b, const Rat& D)
      : p_(p), m_(m), b_(b.to_double()), D_(D.to_double()), b_exact_(b),
        D_exact_(D) {
    validate();
  }

  std::uint64_t p() const { return p_; }
  unsigned m() const { return m_; }
  double b() const { return b_; }
  double D() const { return D_; }
  std::uint64_t modulus() const { return pm_; }  // p^m

  const std::optional<Rat>& b_exact() const { return b_exact_; }
  const std::optional<Rat>& D_exact() const { return D_exact_; }

  /// p^(k*b) as a double; k may be negative. Large negative exponents
  /// underflow to 0, which is the behaviour the kernel sums rely on.
  double pow_b(double k) const { return std::pow(static_cast<double>(p_), k * b_); }

  /// p^k as a double, k any integer.
  double pow_p(int k) const { return std::pow(static_cast<double>(p_), k); }

  /// A Params at a different level with the same p, b, D.
  Params with_level(unsigned m) const;

 private:
  void validate();

  std::uint64_t p_;
  unsigned m_;
  double b_;
  double D_;
  std::uint64_t pm_ = 0;
  std::optional<Rat> b_exact_;
  std::optional<Rat> D_exact_;
};

}  // namespace padic
