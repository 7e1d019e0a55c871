#include "padic/elements.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace padic {

int valuation(std::uint64_t residue, const Params& params) {
  if (residue >= params.modulus())
    throw std::domain_error("valuation: residue out of range");
  if (residue == 0) return kValuationInfinity;
  int v = 0;
  while (residue % params.p() == 0) {
    residue /= params.p();
    ++v;
  }
  return v;
}

namespace {

int residue_valuation(std::uint64_t residue, std::uint64_t p) {
  if (residue == 0) return kValuationInfinity;
  int v = 0;
  while (residue % p == 0) {
    residue /= p;
    ++v;
  }
  return v;
}

}  // namespace

int GroupElement::valuation() const { return residue_valuation(residue_, p_); }

double GroupElement::norm() const {
  if (residue_ == 0) return 0.0;
  return std::pow(static_cast<double>(p_), -valuation());
}

int DualElement::valuation() const { return residue_valuation(residue_, p_); }

unsigned DualElement::norm_exp() const {
  if (residue_ == 0) return 0;
  return m_ - static_cast<unsigned>(valuation());
}

double DualElement::norm() const {
  if (residue_ == 0) return 0.0;
  return std::pow(static_cast<double>(p_), static_cast<int>(norm_exp()));
}

std::complex<double> char_pairing(const GroupElement& x, const DualElement& y) {
  if (x.prime() != y.prime() || x.level() != y.level())
    throw std::domain_error("char_pairing: prime/level mismatch");
  const std::uint64_t pm = pow_u64(x.prime(), x.level());
  const std::uint64_t q = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(x.residue()) * y.residue()) % pm);
  // Exact phase q/pm in [0,1); one rounding when mapped to the angle.
  const long double angle = 2.0L * std::numbers::pi_v<long double> *
                            (static_cast<long double>(q) / static_cast<long double>(pm));
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::uint64_t Digits::value() const {
  std::uint64_t v = 0;
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    v += coeff[i] * scale;
    if (i + 1 < coeff.size()) scale *= p;
  }
  return v;
}

std::string Digits::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    if (i && p > 10) os << '.';
    os << coeff[i];
  }
  return os.str();
}

Digits gamma_embed(const GroupElement& x) {
  Digits d;
  d.p = x.prime();
  d.coeff.resize(x.level());
  std::uint64_t r = x.residue();
  for (unsigned i = 0; i < x.level(); ++i) {
    d.coeff[i] = static_cast<std::uint32_t>(r % x.prime());
    r /= x.prime();
  }
  return d;
}

std::string Ball::to_string() const {
  std::ostringstream os;
  os << "B(" << center_ << ",p^-" << j_ << ")";
  return os.str();
}

}  // namespace padic
