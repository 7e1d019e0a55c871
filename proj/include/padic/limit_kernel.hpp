#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "padic/history.hpp"
#include "padic/params.hpp"
#include "padic/rational.hpp"

namespace padic {

/// beta = (p^(b+1) - 1) / (p^b (p - 1)). Both beta - 1 and beta/p^b lie in
/// (0,1) for every prime and b > 0.
double beta_constant(const Params& params);

/// Convention at the trivial character. The operator symbol |y|^b - 1/beta,
/// read with |0| = 0, would give the zero class the value -1/beta and the
/// semigroup e^{+Dt/beta} there, which breaks mass conservation; the
/// conservative convention pins symbol(0) = 0 so the characteristic function
/// of a probability kernel is 1 at the trivial character. The literal
/// convention stays available for documentation runs.
enum class SymbolConvention { conservative, literal };

/// symbol(k) = p^(kb) - 1/beta for k >= 1; symbol(0) = 0 (conservative) or
/// -1/beta (literal). Strictly positive for k >= 1 with spectral gap
/// p^b - 1/beta.
double limit_symbol(unsigned k, const Params& params,
                    SymbolConvention conv = SymbolConvention::conservative);

/// Characteristic function of the limit kernel at a dual norm exponent k:
/// exp(-D symbol(k) t).
double char_function(double t, unsigned k, const Params& params,
                     SymbolConvention conv = SymbolConvention::conservative);

/// Mass of the ball of radius p^-j at time t, an exact finite sum:
/// p^-j (1 + sum_{k=1..j} (p^k - p^(k-1)) exp(-D symbol(k) t)).
double ball_mass(unsigned j, double t, const Params& params);

/// Density of the kernel against Haar measure at |x| = p^-j:
/// 1 + sum_{k=1..j} (p^k - p^(k-1)) exp(-D symbol(k) t)
///   - p^j exp(-D symbol(j+1) t).
double radial_density(unsigned j, double t, const Params& params);

struct ValueWithTail {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// E[|Y_t|^r] for the limit process, r in (0,b): radial sum of ball-mass
/// differences, truncated once p^(-Jr) < tail_tol with the geometric tail
/// bound reported.
ValueWithTail limit_moment(double t, double r, const Params& params,
                           double tail_tol = 1e-14);

/// Reference density of the full-line process at |x| = p^-j (j may be
/// negative): sum_{k <= j} p^k (e^(-D t p^(kb)) - e^(-D t p^((k+1)b))),
/// truncated below tail_tol with the tail bound reported.
ValueWithTail qp_density(int j, double t, const Params& params,
                         double tail_tol = 1e-14);

/// Radial kernel table at a fixed time: density and ball mass per valuation
/// class j = 0..J. Both columns are exact finite sums (tail_bound 0).
struct RadialKernel {
  Rat t;
  Params params;
  std::vector<double> density;    // j = 0..J
  std::vector<double> ball_mass;  // j = 0..J
  double tail_bound = 0.0;
};

RadialKernel make_radial_kernel(const Rat& t, unsigned max_j,
                                const Params& params);

/// Read-mostly cache of kernel tables keyed by exact rational time (and the
/// table depth). Each entry is computed once and shared; concurrent readers
/// get the same immutable table.
class KernelCache {
 public:
  std::shared_ptr<const RadialKernel> get(const Rat& t, unsigned max_j,
                                          const Params& params);

 private:
  struct Key {
    std::int64_t num, den;
    unsigned max_j;
    std::uint64_t p;
    unsigned m;
    double b, D;
    auto operator<=>(const Key&) const = default;
  };
  std::mutex mu_;
  std::map<Key, std::shared_ptr<const RadialKernel>> entries_;
};

/// Cylinder-set probability of the limit process: forward recursion over the
/// cosets mod p^resolution. The kernel is locally constant at that scale, so
/// off-diagonal transition masses are radial_density(v(x'-x), dt) p^-resolution
/// and the diagonal is ball_mass(resolution, dt); everything is an exact
/// finite sum. resolution 0 picks max(route radius, 1). Throws when a route
/// ball is finer than the resolution.
double cylinder_prob_limit(const History& h, const Params& params,
                           unsigned resolution = 0);

/// Total variation distance between the kernel at time t and the Haar
/// equilibrium over the cosets mod p^j; decays like e^(-D (p^b - 1/beta) t).
double equilibrium_tv(double t, unsigned j, const Params& params);

}  // namespace padic
