#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "padic/params.hpp"

namespace padic {

/// Marker for the valuation of the zero class.
inline constexpr int kValuationInfinity = std::numeric_limits<int>::max();

/// Largest v with p^v dividing residue, or kValuationInfinity for residue 0.
/// residue must lie in [0, p^m).
int valuation(std::uint64_t residue, const Params& params);

/// Residue class x + p^m Z_p in the quotient group. Construction reduces
/// mod p^m, so any two representatives of a class compare equal.
/// Norm values lie in {0} ∪ {p^-(m-1), ..., p^-1, 1}, with 0 reserved for
/// the zero class.
class GroupElement {
 public:
  GroupElement(std::uint64_t residue, const Params& params)
      : residue_(residue % params.modulus()), p_(params.p()), m_(params.m()),
        pm_(params.modulus()) {}

  std::uint64_t residue() const { return residue_; }
  std::uint64_t prime() const { return p_; }
  unsigned level() const { return m_; }

  int valuation() const;
  double norm() const;  // p^-v, 0 at the zero class
  bool is_zero() const { return residue_ == 0; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.residue_ == b.residue_ && a.p_ == b.p_ && a.m_ == b.m_;
  }

 private:
  std::uint64_t residue_;
  std::uint64_t p_;
  unsigned m_;
  std::uint64_t pm_;
};

/// Element of the dual group: residue r in [0, p^m) encodes the class of
/// r/p^m. Norm values lie in {0} ∪ {p, ..., p^m}; 0 is the zero class.
class DualElement {
 public:
  DualElement(std::uint64_t residue, const Params& params)
      : residue_(residue % params.modulus()), p_(params.p()), m_(params.m()),
        pm_(params.modulus()) {}

  std::uint64_t residue() const { return residue_; }
  std::uint64_t prime() const { return p_; }
  unsigned level() const { return m_; }

  int valuation() const;
  /// Norm exponent k with |y| = p^k for nonzero y; 0 denotes the zero class
  /// (whose norm is the real number 0, not p^0).
  unsigned norm_exp() const;
  double norm() const;
  bool is_zero() const { return residue_ == 0; }

  friend bool operator==(const DualElement& a, const DualElement& b) {
    return a.residue_ == b.residue_ && a.p_ == b.p_ && a.m_ == b.m_;
  }

 private:
  std::uint64_t residue_;
  std::uint64_t p_;
  unsigned m_;
  std::uint64_t pm_;
};

/// <x, y> = exp(2 pi i (x*y mod p^m) / p^m). The phase is an exact rational
/// multiple of 2 pi (128-bit modular product), so character sums in the
/// transform oracles carry no accumulated phase error.
/// Throws std::domain_error when prime or level differ.
std::complex<double> char_pairing(const GroupElement& x, const DualElement& y);

/// Base-p digit expansion a(0..m-1) with value = sum a(i) p^i.
struct Digits {
  std::uint64_t p = 2;
  std::vector<std::uint32_t> coeff;

  std::uint64_t value() const;
  /// Digits joined low-index-first; bases above 10 separate digits with '.'.
  std::string to_string() const;

  friend bool operator==(const Digits&, const Digits&) = default;
};

/// Canonical section of the quotient: the digit expansion of the residue on
/// indices 0..m-1. Injective and norm-preserving (an isometry onto its image).
Digits gamma_embed(const GroupElement& x);

/// Ball B(c, p^-j) in Z_p, i.e. the coset c + p^j Z_p. The center is stored
/// reduced mod p^j, so equal cosets compare equal; radius_exp 0 is all of Z_p.
class Ball {
 public:
  Ball(std::uint64_t prime, unsigned radius_exp, std::uint64_t center)
      : p_(prime), j_(radius_exp), center_(center % pow_u64(prime, radius_exp)) {}

  static Ball whole(std::uint64_t prime) { return Ball(prime, 0, 0); }

  std::uint64_t prime() const { return p_; }
  unsigned radius_exp() const { return j_; }
  std::uint64_t center() const { return center_; }

  bool contains(std::uint64_t residue) const {
    return residue % pow_u64(p_, j_) == center_;
  }
  bool contains_zero() const { return center_ == 0; }

  std::string to_string() const;

  friend bool operator==(const Ball&, const Ball&) = default;

 private:
  std::uint64_t p_;
  unsigned j_;
  std::uint64_t center_;
};

}  // namespace padic
