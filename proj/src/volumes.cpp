#include "padic/volumes.hpp"

namespace padic {

namespace {

void check_range(unsigned k, const Params& params, const char* what) {
  if (k > params.m()) throw std::domain_error(std::string(what) + ": index exceeds level");
}

std::int64_t ppow(const Params& params, unsigned e) {
  return static_cast<std::int64_t>(pow_u64(params.p(), e));
}

}  // namespace

Rat ball_volume(unsigned k, const Params& params) {
  check_range(k, params, "ball_volume");
  if (k == 0) return Rat(1, ppow(params, params.m()));
  return Rat(1, ppow(params, params.m() - k));
}

Rat circle_volume(unsigned k, const Params& params) {
  check_range(k, params, "circle_volume");
  if (k == 0) return Rat(1, ppow(params, params.m()));
  return Rat(static_cast<std::int64_t>(params.p()) - 1,
             ppow(params, params.m() - k + 1));
}

Rat dual_ball_volume(unsigned k, const Params& params) {
  check_range(k, params, "dual_ball_volume");
  if (k == 0) return Rat(1);
  return Rat(ppow(params, k));
}

Rat dual_circle_volume(unsigned k, const Params& params) {
  check_range(k, params, "dual_circle_volume");
  if (k == 0) return Rat(1);
  return Rat((static_cast<std::int64_t>(params.p()) - 1) * ppow(params, k - 1));
}

std::uint64_t circle_count(unsigned k, const Params& params) {
  check_range(k, params, "circle_count");
  if (k == 0) return 1;
  return (params.p() - 1) * pow_u64(params.p(), k - 1);
}

Rat indicator_integral(unsigned i, const DualElement& y, const Params& params) {
  check_range(i, params, "indicator_integral");
  if (i == 0) return Rat(1, ppow(params, params.m()));
  // Nonzero only when |y| <= p^(m-i); the zero class always qualifies.
  const bool inside = y.is_zero() || y.norm_exp() <= params.m() - i;
  return inside ? ball_volume(i, params) : Rat(0);
}

Rat dual_indicator_integral(unsigned i, const GroupElement& x,
                            const Params& params) {
  check_range(i, params, "dual_indicator_integral");
  if (i == 0) return Rat(1);
  const bool inside = x.is_zero() || x.valuation() >= static_cast<int>(i);
  return inside ? dual_ball_volume(i, params) : Rat(0);
}

}  // namespace padic
