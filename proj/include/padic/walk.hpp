#pragma once

#include <cstdint>
#include <vector>

#include "padic/history.hpp"
#include "padic/params.hpp"
#include "padic/radial.hpp"
#include "padic/rational.hpp"

namespace padic {

/// Time scale of the embedded walk: sigma = D/beta, lambda = sigma p^(mb)
/// steps per unit time, tau = 1/lambda seconds per step.
struct TimeScale {
  double sigma = 0.0;
  double lambda = 0.0;
  double tau = 0.0;
};

TimeScale make_time_scale(const Params& params);

/// floor(t * lambda) for t >= 0. Exact integer arithmetic when b is a
/// positive integer and D, t are rational; otherwise evaluated in extended
/// precision with a guard band that snaps values within ~2^-46 (relative) of
/// an integer onto it, because a decimal-rounded t may sit a hair under a
/// step boundary.
std::uint64_t steps_before(const Rat& t, const Params& params);

/// Law of the n-step sum as a radial density against Haar measure:
/// on the circle of norm p^(k-m) the density is
///   sum_{i=0..m-k} (phi(i)^n - phi(i+1)^n) p^i,
/// and at the zero class the same sum over i = 0..m-1 plus phi(m)^n p^m.
/// Per-element pmf = density * p^-m. n = 0 gives the point mass at 0 and
/// n = 1 reproduces the step law. Cancellation can leave values a few ulp
/// negative; anything below -1e-12 (pmf scale) throws, smaller negatives
/// clamp to 0. Negative n throws std::domain_error.
RadialProfile nstep_density(long long n, const Params& params);

/// Dense per-element pmf over the whole group; guarded to p^m <= 2^13.
std::vector<double> nstep_pmf(long long n, const Params& params);

/// E[|S_n|^r] computed from nstep_density, r in (0, b) (the theorem's
/// hypothesis; outside it throws std::domain_error).
double exact_moment(long long n, double r, const Params& params);

/// Certified upper bound for E[|S_n|^r], valid for m > M(p,b):
///   K n^(r/b) p^(-mr) ((n + (b-r)/b)/n)^(r/b)
///     + (1 - (1 - beta p^b (1+p^-mb) p^-mb)^n) p^r (p-1)/(p^(r+1)-1)
/// with c(m) = beta (p^b - 1)(1 + p^-mb + p^-mb/(p^mb - 1)) and
///   K = c(m) p^r (p-1) p^b beta^((r-b)/b) Gamma((b-r)/b)
///       / ((p^b - 1)(p^(r+1) - 1)).
/// The p^b and Gamma((b-r)/b) factors come from the substitution
/// p^(ib-mb) = Delta(i) p^b / (beta (p^b-1)) and the beta integral
/// int_0^1 n x^(-r/b) (1-x)^(n-1) dx = Gamma(1-r/b) Gamma(n+1)/Gamma(n+1-r/b),
/// whose Gamma(n+1)/Gamma(n+1-r/b) part Wendel's inequality bounds by
/// n^(r/b) ((n + (b-r)/b)/n)^(r/b).
double moment_bound(long long n, double r, const Params& params);

/// M: least level past which beta >= p^(mb)/(p^(mb)-1) (plus one for room),
/// M' : least level past which beta p^b (1 + p^-mb) < p^(mb),
/// N = max(M, M').
struct Thresholds {
  unsigned M = 0;
  double M_prime = 0.0;
  double N = 0.0;
};

Thresholds thresholds(const Params& params);

/// Probability that the walk, run on the scale lambda, sits inside route[i]
/// at epoch[i] for every i: forward recursion over the group, convolving
/// with the (floor(t_i lambda) - floor(t_{i-1} lambda))-step pmf and masking
/// by each ball. Returns 0 when route[0] misses 0. Throws when a ball is
/// finer than the level (radius_exp > m).
double cylinder_prob_discrete(const History& h, const Params& params);

}  // namespace padic
