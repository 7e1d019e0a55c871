#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padic/history.hpp"
#include "padic/limit_kernel.hpp"
#include "padic/params.hpp"
#include "padic/rational.hpp"

namespace padic {

/// E_m(t, y): the walk's characteristic function raised to the step count,
/// phi(k)^floor(t lambda) for dual norm exponent k <= m, and 0 beyond the
/// dual of the level-m group.
double e_m(const Rat& t, unsigned norm_exp, const Params& params);

/// L1 gap between E_m(t, .) and the limit characteristic function over the
/// full dual (counting measure), computed radially, plus the exact tail
/// sum_{k>m} (p^k - p^(k-1)) e^(-D symbol(k) t) truncated at per-term 1e-16.
struct EmGap {
  unsigned m = 0;
  Rat t;
  double eps_l1 = 0.0;
  double tail_bound = 0.0;        // truncation remainder bound
  double sup_density_gap = 0.0;   // filled by epsilon_m, <= eps_l1
};

EmGap epsilon_m(const Rat& t, const Params& params,
                SymbolConvention conv = SymbolConvention::conservative);

/// Max over valuation classes of |walk density at floor(t lambda) steps -
/// limit density| at matching radii (classes j = 0..m-1 plus the classes
/// inside the residual ball, where the walk density is its zero-class
/// value). Bounded by eps_l1 pointwise.
double sup_density_gap(const Rat& t, const Params& params);

/// |cylinder_prob_discrete(h) - cylinder_prob_limit(h)| at the level carried
/// by params.
double fdd_gap(const History& h, const Params& params);

/// Total variation between the embedded walk's time-t marginal and the limit
/// kernel over the cosets mod p^j, j <= m; both sides exact.
double marginal_tv(const Rat& t, const Params& params, unsigned j);

/// Scaling certificates from the tightness estimates. Each check returns the
/// two sides so reports can show the margin.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass() const { return lhs <= rhs; }
};

/// 1 - (1 - beta p^b (1+p^-mb) p^-mb)^(t sigma p^mb) <= max(2 p^b beta sigma, 1) t^s,
/// for s in (0,1); requires m > M'(p,b).
BoundCheck holder_bound_check(double t, double s, const Params& params);

/// E[|Y_t|^r] = exact_moment(floor(t lambda), r) <= C t^(r/b) with the
/// assembled constant C = K sigma^(r/b) (1+(b-r)/b)^(r/b)
///   + max(2 p^b beta sigma, 1) p^r (p-1)/(p^(r+1)-1); requires m >= N(p,b).
BoundCheck moment_scaling_check(const Rat& t, double r, const Params& params);

/// Product-increment estimate behind tightness: for t1 < t2 < t3,
/// E[|dY|^r] E[|dY'|^r] <= C^2 (t3-t1)^(2r/b) with exact increment moments.
BoundCheck chentsov_product_check(const Rat& t1, const Rat& t2, const Rat& t3,
                                  double r, const Params& params);

/// Chi-square goodness of fit of observed circle counts against exact
/// circle probabilities. Classes with expected count below 5 are merged into
/// their larger neighbour (recorded); rejects when the tail probability
/// falls below alpha.
struct ChiSquareRecord {
  double statistic = 0.0;
  unsigned dof = 0;
  double p_value = 1.0;
  bool rejected = false;
  unsigned merged_classes = 0;
  std::uint64_t samples = 0;
};

ChiSquareRecord mc_goodness_of_fit(const std::vector<std::uint64_t>& counts,
                                   const std::vector<double>& circle_prob,
                                   double alpha = 1e-3);

// ---------------------------------------------------------------------------
// Orchestration: the full diagnostic sweep across a level range.
// ---------------------------------------------------------------------------

struct ConvergenceConfig {
  std::uint64_t p = 2;
  Rat b{1};
  Rat D{1};
  unsigned m_lo = 3;
  unsigned m_hi = 8;
  std::vector<Rat> times = {Rat(1, 2), Rat(1), Rat(2)};
  std::vector<History> histories;  // defaults to the two standard ones
  std::vector<double> r_grid = {0.5};
  std::vector<double> s_grid = {0.5};
  std::uint64_t seed = 0;
  std::uint64_t samples = 1'000'000;
  unsigned workers = 1;
  unsigned tv_resolution = 2;
  double tol = 1e-12;
  bool literal_symbol = false;
};

struct FddRecord {
  std::string history;
  unsigned m = 0;
  double discrete = 0.0;
  double limit = 0.0;
  double gap = 0.0;
};

struct MomentRecord {
  std::string kind;  // "holder" | "scaling" | "chentsov"
  unsigned m = 0;
  std::string t;     // epoch or triple, as text
  double exponent = 0.0;  // s or r
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct TvRecord {
  unsigned m = 0;
  Rat t;
  unsigned resolution = 0;
  double tv = 0.0;
};

struct McRecord {
  unsigned m = 0;
  ChiSquareRecord chi2;
};

/// Every record carries the inputs that produced it; two runs with the same
/// config serialize byte-identically.
struct ConvergenceReport {
  ConvergenceConfig config;
  std::vector<EmGap> per_m;          // ordered by (t, m)
  std::vector<FddRecord> fdd;        // ordered by (history, m)
  std::vector<MomentRecord> moments;
  std::vector<TvRecord> tv;
  std::vector<McRecord> mc;
  std::vector<std::string> failures;       // failed decay/bound assertions
  std::vector<double> literal_offsets;     // |1 - e^(Dt/beta)| per time, literal mode
  bool all_pass = false;
};

std::vector<History> standard_histories(std::uint64_t p);

ConvergenceReport run_convergence(const ConvergenceConfig& config);

}  // namespace padic
