#pragma once

#include <vector>

#include "padic/elements.hpp"
#include "padic/params.hpp"
#include "padic/radial.hpp"

namespace padic {

/// Normalizer c_m = p^(mb) (p^b - 1) / (p^(mb) - 1); with it the circle
/// probabilities c_m p^(-l b), l = 1..m, sum to one.
double normalizer(const Params& params);

/// The walk's one-step distribution: radial, zero mass at the zero class,
/// probability c_m p^(-l b) on the circle of norm p^(l-m). Small norms carry
/// the larger probability (l = 1 is the most likely circle).
struct StepLaw {
  Params params;
  double c_m = 0.0;
  std::vector<double> circle_prob;  // index l = 0..m, [0] = 0
  RadialProfile density;            // value on circle l: circle_prob[l]/Vol(S(l))
  std::vector<double> circle_cdf;   // cumulative over l = 1..m, for sampling

  explicit StepLaw(const Params& p);

  /// Probability of a single element of circle l.
  double pmf_per_element(unsigned l) const;
};

StepLaw make_step_law(const Params& params);

// Characteristic function of the step. phi_closed_at(k) is the value at a
// dual element of norm p^k (k = 0 meaning the zero class, where it is 1).
// The two closed forms are algebraically identical:
//   displayed: 1 - beta(|y|^b (1 + p^-mb) - 1/beta) p^-mb
//                + p^-mb (p^mb - 1)^-1 (1 - beta |y|^b p^-mb)
//   compact:   (1 - p^-mb)^-1 (1 - beta |y|^b p^-mb)
double phi_closed_at(unsigned k, const Params& params);
double phi_compact_at(unsigned k, const Params& params);
double phi_closed(const DualElement& y, const Params& params);

/// phi(0..m): phi(0) = 1 and phi(i) at dual norm p^i. Strictly decreasing,
/// phi(i) in [0,1] for i = 1..m-1, phi(m-1) > 0 > phi(m).
std::vector<double> phi_ladder(const Params& params);

/// Brute-force verification oracle: sum of pmf(x) <x,y> over all of the
/// group. Independent of the closed forms; must agree with them to 1e-12.
double phi_dft_oracle(const DualElement& y, const Params& params);

}  // namespace padic
