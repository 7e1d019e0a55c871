#pragma once

#include <cstdint>
#include <vector>

#include "padic/params.hpp"

namespace padic {

enum class Side { group, dual };

/// Radial function at level m: one value per circle index k = 0..m, where
/// k = 0 is the zero class. Evaluation at an element depends only on its
/// norm, which is the defining property of everything stored here
/// (densities, pmfs, kernels).
class RadialProfile {
 public:
  RadialProfile(const Params& params, Side side)
      : p_(params.p()), m_(params.m()), side_(side), values_(params.m() + 1, 0.0) {}

  std::uint64_t prime() const { return p_; }
  unsigned level() const { return m_; }
  Side side() const { return side_; }

  double at_circle(unsigned k) const { return values_.at(k); }
  double& at_circle(unsigned k) { return values_.at(k); }
  double zero_class() const { return values_[0]; }
  double& zero_class() { return values_[0]; }

  /// Value per valuation class v = 0..m-1 (circle index m - v).
  double at_valuation(unsigned v) const { return values_.at(m_ - v); }

  /// Evaluates at a residue in [0, p^m) through its valuation.
  double value_at(std::uint64_t residue, const Params& params) const;

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  std::uint64_t p_;
  unsigned m_;
  Side side_;
  std::vector<double> values_;
};

/// Transform of a radial function on the group (against Haar measure of
/// total mass 1) to a radial function on the dual. Computed exactly through
/// telescoping ball integrals, O(m^2); matches the dense character double
/// sum to roundoff.
RadialProfile radial_fourier(const RadialProfile& f, const Params& params);

/// Inverse transform, dual (counting measure) back to the group. Composing
/// with radial_fourier is the identity.
RadialProfile radial_fourier_inv(const RadialProfile& g, const Params& params);

}  // namespace padic
