#pragma once

#include "padic/elements.hpp"
#include "padic/params.hpp"
#include "padic/rational.hpp"

namespace padic {

// Haar volumes in the level-m quotient, normalized to total mass 1; the dual
// carries counting measure. Circle index k runs 0..m, k = 0 being the zero
// class. Group circle k has norm p^(k-m), dual circle k has norm p^k.
// All throw std::domain_error for k > m.

Rat ball_volume(unsigned k, const Params& params);    // p^(k-m); p^-m at k = 0
Rat circle_volume(unsigned k, const Params& params);  // (1-1/p) p^(k-m); p^-m at k = 0
Rat dual_ball_volume(unsigned k, const Params& params);    // p^k; 1 at k = 0
Rat dual_circle_volume(unsigned k, const Params& params);  // (1-1/p) p^k; 1 at k = 0

/// Number of elements in circle k.
std::uint64_t circle_count(unsigned k, const Params& params);

/// Integral of the character x -> <x, y> over the group ball of index i:
/// Vol(ball(i)) * [ |y| <= p^(m-i) ] for i >= 1, and p^-m for i = 0.
Rat indicator_integral(unsigned i, const DualElement& y, const Params& params);

/// Dual counterpart: integral of y -> <x, y> over the dual ball of index i:
/// p^i * [ |x| <= p^-i ] for i >= 1, and 1 for i = 0 (the zero class alone
/// carries counting mass 1, so the integral there is the constant 1).
Rat dual_indicator_integral(unsigned i, const GroupElement& x,
                            const Params& params);

}  // namespace padic
