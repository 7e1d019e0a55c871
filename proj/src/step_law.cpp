#include "padic/step_law.hpp"

#include <cmath>

#include "padic/limit_kernel.hpp"
#include "padic/volumes.hpp"

namespace padic {

double normalizer(const Params& params) {
  // c_m = p^(mb)(p^b - 1)/(p^(mb) - 1), arranged with negative exponents so
  // large m*b cannot overflow.
  return (params.pow_b(1) - 1.0) / (1.0 - params.pow_b(-static_cast<double>(params.m())));
}

StepLaw::StepLaw(const Params& p)
    : params(p), density(p, Side::group) {}

StepLaw make_step_law(const Params& params) {
  StepLaw law(params);
  const unsigned m = params.m();
  law.c_m = normalizer(params);
  law.circle_prob.assign(m + 1, 0.0);
  law.circle_cdf.assign(m + 1, 0.0);
  double cum = 0.0;
  for (unsigned l = 1; l <= m; ++l) {
    law.circle_prob[l] = law.c_m * params.pow_b(-static_cast<double>(l));
    law.density.at_circle(l) = law.circle_prob[l] / circle_volume(l, params).to_double();
    cum += law.circle_prob[l];
    law.circle_cdf[l] = cum;
  }
  law.circle_cdf[m] = 1.0;  // pin the last edge against rounding
  return law;
}

double StepLaw::pmf_per_element(unsigned l) const {
  if (l == 0) return 0.0;
  return circle_prob.at(l) / static_cast<double>(circle_count(l, params));
}

double phi_compact_at(unsigned k, const Params& params) {
  if (k == 0) return 1.0;
  const double m = params.m();
  const double scale = 1.0 / (1.0 - params.pow_b(-m));
  return scale * (1.0 - beta_constant(params) * params.pow_b(static_cast<double>(k) - m));
}

double phi_closed_at(unsigned k, const Params& params) {
  if (k == 0) return 1.0;
  const double m = params.m();
  const double beta = beta_constant(params);
  const double pmb_inv = params.pow_b(-m);                 // p^-mb
  const double ynorm_scaled = params.pow_b(static_cast<double>(k) - m);  // |y|^b / p^mb
  const double small = pmb_inv * pmb_inv / (1.0 - pmb_inv);  // 1/(p^mb (p^mb - 1))
  return 1.0 - beta * (ynorm_scaled * (1.0 + pmb_inv) - pmb_inv / beta) +
         small * (1.0 - beta * ynorm_scaled);
}

double phi_closed(const DualElement& y, const Params& params) {
  return phi_closed_at(y.is_zero() ? 0 : y.norm_exp(), params);
}

std::vector<double> phi_ladder(const Params& params) {
  std::vector<double> phi(params.m() + 1);
  for (unsigned i = 0; i <= params.m(); ++i) phi[i] = phi_compact_at(i, params);
  return phi;
}

double phi_dft_oracle(const DualElement& y, const Params& params) {
  const StepLaw law = make_step_law(params);
  std::complex<double> acc = 0.0;
  for (std::uint64_t x = 1; x < params.modulus(); ++x) {
    const GroupElement gx(x, params);
    const double w = law.density.value_at(x, params) *
                     params.pow_p(-static_cast<int>(params.m()));
    acc += w * char_pairing(gx, y);
  }
  return acc.real();
}

}  // namespace padic
