#include "padic/radial.hpp"

#include <stdexcept>

#include "padic/elements.hpp"

namespace padic {

double RadialProfile::value_at(std::uint64_t residue, const Params& params) const {
  const int v = valuation(residue, params);
  if (v == kValuationInfinity) return values_[0];
  return values_[m_ - static_cast<unsigned>(v)];
}

// Transform at a dual circle of norm p^kd. With c = m - kd (c = m at the
// zero class), the ball integrals telescope to
//   F(kd) = f_0 p^-m + sum_{k=1..c} f_k Vol(S(k)) - [c < m] f_{c+1} p^(c-m).
RadialProfile radial_fourier(const RadialProfile& f, const Params& params) {
  if (f.side() != Side::group || f.level() != params.m())
    throw std::invalid_argument("radial_fourier: expected a group-side profile at the params level");
  const unsigned m = params.m();
  RadialProfile out(params, Side::dual);
  for (unsigned kd = 0; kd <= m; ++kd) {
    const unsigned c = m - kd;
    double acc = f.zero_class() * params.pow_p(-static_cast<int>(m));
    for (unsigned k = 1; k <= c; ++k)
      acc += f.at_circle(k) *
             (params.pow_p(static_cast<int>(k) - static_cast<int>(m)) -
              params.pow_p(static_cast<int>(k) - 1 - static_cast<int>(m)));
    if (c < m)
      acc -= f.at_circle(c + 1) * params.pow_p(static_cast<int>(c) - static_cast<int>(m));
    out.at_circle(kd) = acc;
  }
  return out;
}

// Same telescoping on the dual side, counting measure: with c = m - kg,
//   G(kg) = g_0 + sum_{k=1..c} g_k (p^k - p^(k-1)) - [c < m] g_{c+1} p^c.
RadialProfile radial_fourier_inv(const RadialProfile& g, const Params& params) {
  if (g.side() != Side::dual || g.level() != params.m())
    throw std::invalid_argument("radial_fourier_inv: expected a dual-side profile at the params level");
  const unsigned m = params.m();
  RadialProfile out(params, Side::group);
  for (unsigned kg = 0; kg <= m; ++kg) {
    const unsigned c = m - kg;
    double acc = g.zero_class();
    for (unsigned k = 1; k <= c; ++k)
      acc += g.at_circle(k) *
             (params.pow_p(static_cast<int>(k)) - params.pow_p(static_cast<int>(k) - 1));
    if (c < m) acc -= g.at_circle(c + 1) * params.pow_p(static_cast<int>(c));
    out.at_circle(kg) = acc;
  }
  return out;
}

}  // namespace padic
