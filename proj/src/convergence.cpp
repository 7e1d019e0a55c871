#include "padic/convergence.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "padic/sampler.hpp"
#include "padic/step_law.hpp"
#include "padic/walk.hpp"

namespace padic {

double e_m(const Rat& t, unsigned norm_exp, const Params& params) {
  if (!(Rat(0) < t)) throw std::domain_error("e_m: t must be positive");
  if (norm_exp == 0) return 1.0;
  if (norm_exp > params.m()) return 0.0;
  const std::uint64_t n = steps_before(t, params);
  return std::pow(phi_compact_at(norm_exp, params), static_cast<double>(n));
}

EmGap epsilon_m(const Rat& t, const Params& params, SymbolConvention conv) {
  if (!(Rat(0) < t)) throw std::domain_error("epsilon_m: t must be positive");
  const Thresholds th = thresholds(params);
  if (params.m() < th.N)
    throw std::invalid_argument("epsilon_m: requires m >= N(p,b)");

  const unsigned m = params.m();
  const double td = t.to_double();
  const std::uint64_t n = steps_before(t, params);
  const std::vector<double> phi = phi_ladder(params);

  EmGap gap;
  gap.m = m;
  gap.t = t;

  // Zero class: both sides are 1 under the conservative convention; the
  // literal convention leaves a constant offset |1 - e^(Dt/beta)|.
  gap.eps_l1 = std::fabs(1.0 - char_function(td, 0, params, conv));

  for (unsigned k = 1; k <= m; ++k) {
    const double weight = params.pow_p(static_cast<int>(k)) -
                          params.pow_p(static_cast<int>(k) - 1);
    const double walk_side = std::pow(phi[k], static_cast<double>(n));
    gap.eps_l1 += weight * std::fabs(walk_side - char_function(td, k, params));
  }

  // Beyond the level-m dual E_m vanishes; the integrand is the limit
  // characteristic function alone, summed until terms drop below 1e-16.
  for (unsigned k = m + 1;; ++k) {
    const double weight = params.pow_p(static_cast<int>(k)) -
                          params.pow_p(static_cast<int>(k) - 1);
    const double term = weight * char_function(td, k, params);
    if (term < 1e-16) {
      const double ratio =
          static_cast<double>(params.p()) *
          std::exp(-params.D() * td * (params.pow_b(k + 1) - params.pow_b(k)));
      gap.tail_bound = ratio < 0.5 ? term / (1.0 - ratio) : term * 2.0;
      break;
    }
    gap.eps_l1 += term;
  }

  gap.sup_density_gap = sup_density_gap(t, params);
  return gap;
}

double sup_density_gap(const Rat& t, const Params& params) {
  if (!(Rat(0) < t)) throw std::domain_error("sup_density_gap: t must be positive");
  const unsigned m = params.m();
  const double td = t.to_double();
  const RadialProfile dens =
      nstep_density(static_cast<long long>(steps_before(t, params)), params);
  double gap = 0.0;
  for (unsigned j = 0; j < m; ++j)
    gap = std::max(gap,
                   std::fabs(dens.at_valuation(j) - radial_density(j, td, params)));
  // Inside the residual ball the walk's density is flat at its zero-class
  // value while the limit density keeps refining; 48 extra classes reach the
  // kernel's flat region at every tested scale.
  for (unsigned j = m; j <= m + 48; ++j)
    gap = std::max(gap,
                   std::fabs(dens.zero_class() - radial_density(j, td, params)));
  return gap;
}

double fdd_gap(const History& h, const Params& params) {
  return std::fabs(cylinder_prob_discrete(h, params) -
                   cylinder_prob_limit(h, params));
}

double marginal_tv(const Rat& t, const Params& params, unsigned j) {
  if (j > params.m())
    throw std::invalid_argument("marginal_tv: resolution exceeds level");
  const double td = t.to_double();
  const std::vector<double> pmf =
      nstep_pmf(static_cast<long long>(steps_before(t, params)), params);
  const std::uint64_t pj = pow_u64(params.p(), j);
  std::vector<double> walk_mass(pj, 0.0);
  for (std::uint64_t x = 0; x < pmf.size(); ++x) walk_mass[x % pj] += pmf[x];

  const double haar = params.pow_p(-static_cast<int>(j));
  double tv = std::fabs(walk_mass[0] - ball_mass(j, td, params));
  for (std::uint64_t c = 1; c < pj; ++c) {
    std::uint64_t x = c;
    unsigned v = 0;
    while (x % params.p() == 0) {
      x /= params.p();
      ++v;
    }
    tv += std::fabs(walk_mass[c] - radial_density(v, td, params) * haar);
  }
  return tv / 2.0;
}

BoundCheck holder_bound_check(double t, double s, const Params& params) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("holder_bound_check: s must lie in (0,1)");
  if (t < 0.0) throw std::domain_error("holder_bound_check: t must be >= 0");
  const Thresholds th = thresholds(params);
  if (!(params.m() > th.M_prime))
    throw std::invalid_argument("holder_bound_check: requires m > M'(p,b)");

  const double beta = beta_constant(params);
  const double sigma = params.D() / beta;
  const double pmb_inv = params.pow_b(-static_cast<double>(params.m()));
  const double base = 1.0 - beta * params.pow_b(1) * (1.0 + pmb_inv) * pmb_inv;
  BoundCheck check;
  check.lhs = t == 0.0 ? 0.0 : 1.0 - std::pow(base, t * sigma / pmb_inv);
  check.rhs = std::max(2.0 * params.pow_b(1) * beta * sigma, 1.0) * std::pow(t, s);
  return check;
}

namespace {

// Constant assembled from the moment certificate: bounds E[|Y_t|^r] by
// C t^(r/b) uniformly over t, through n = floor(t lambda) <= t lambda and
// the step-one value of the Wendel factor.
double scaling_constant(double r, const Params& params) {
  const double p = static_cast<double>(params.p());
  const double b = params.b();
  const double m = params.m();
  const double beta = beta_constant(params);
  const double sigma = params.D() / beta;
  const double pb = params.pow_b(1);
  const double pmb_inv = params.pow_b(-m);
  const double cm = beta * (pb - 1.0) *
                    (1.0 + pmb_inv + pmb_inv * pmb_inv / (1.0 - pmb_inv));
  const double K = cm * std::pow(p, r) * (p - 1.0) * pb *
                   std::pow(beta, (r - b) / b) * std::tgamma((b - r) / b) /
                   ((pb - 1.0) * (std::pow(p, r + 1.0) - 1.0));
  const double first = K * std::pow(sigma, r / b) * std::pow(1.0 + (b - r) / b, r / b);
  const double second = std::max(2.0 * pb * beta * sigma, 1.0) *
                        std::pow(p, r) * (p - 1.0) / (std::pow(p, r + 1.0) - 1.0);
  return first + second;
}

}  // namespace

BoundCheck moment_scaling_check(const Rat& t, double r, const Params& params) {
  if (!(Rat(0) < t)) throw std::domain_error("moment_scaling_check: t must be positive");
  const Thresholds th = thresholds(params);
  if (params.m() < th.N)
    throw std::invalid_argument("moment_scaling_check: requires m >= N(p,b)");
  BoundCheck check;
  check.lhs = exact_moment(static_cast<long long>(steps_before(t, params)), r, params);
  check.rhs = scaling_constant(r, params) * std::pow(t.to_double(), r / params.b());
  return check;
}

BoundCheck chentsov_product_check(const Rat& t1, const Rat& t2, const Rat& t3,
                                  double r, const Params& params) {
  if (!(t1 < t2 && t2 < t3))
    throw std::domain_error("chentsov_product_check: need t1 < t2 < t3");
  const Thresholds th = thresholds(params);
  if (params.m() < th.N)
    throw std::invalid_argument("chentsov_product_check: requires m >= N(p,b)");
  const std::uint64_t n1 = steps_before(t1, params);
  const std::uint64_t n2 = steps_before(t2, params);
  const std::uint64_t n3 = steps_before(t3, params);
  BoundCheck check;
  check.lhs = exact_moment(static_cast<long long>(n2 - n1), r, params) *
              exact_moment(static_cast<long long>(n3 - n2), r, params);
  const double c = scaling_constant(r, params);
  check.rhs = c * c * std::pow((t3 - t1).to_double(), 2.0 * r / params.b());
  return check;
}

ChiSquareRecord mc_goodness_of_fit(const std::vector<std::uint64_t>& counts,
                                   const std::vector<double>& circle_prob,
                                   double alpha) {
  if (counts.size() != circle_prob.size())
    throw std::invalid_argument("mc_goodness_of_fit: size mismatch");
  ChiSquareRecord rec;
  for (std::uint64_t c : counts) rec.samples += c;
  if (rec.samples < 10'000)
    throw std::domain_error("mc_goodness_of_fit: needs at least 10^4 samples");

  // The zero class has probability exactly 0; any observation there is an
  // immediate failure rather than a chi-square matter.
  if (counts[0] > 0) {
    rec.rejected = true;
    rec.p_value = 0.0;
    return rec;
  }

  std::vector<double> expected;
  std::vector<double> observed;
  for (std::size_t l = 1; l < counts.size(); ++l) {
    expected.push_back(static_cast<double>(rec.samples) * circle_prob[l]);
    observed.push_back(static_cast<double>(counts[l]));
  }
  // Circle probabilities decrease in l, so thin classes sit at the tail;
  // merge them into their neighbour until every expectation reaches 5.
  while (expected.size() > 1 && expected.back() < 5.0) {
    expected[expected.size() - 2] += expected.back();
    observed[observed.size() - 2] += observed.back();
    expected.pop_back();
    observed.pop_back();
    ++rec.merged_classes;
  }
  if (expected.size() < 2) {
    rec.dof = 0;
    return rec;  // degenerate: a single class cannot reject
  }
  rec.dof = static_cast<unsigned>(expected.size() - 1);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = observed[i] - expected[i];
    rec.statistic += d * d / expected[i];
  }
  const boost::math::chi_squared dist(rec.dof);
  rec.p_value = boost::math::cdf(boost::math::complement(dist, rec.statistic));
  rec.rejected = rec.p_value < alpha;
  return rec;
}

std::vector<History> standard_histories(std::uint64_t p) {
  History single;
  single.epochs = {Rat(0), Rat(1)};
  single.route = {Ball::whole(p), Ball(p, 1, 0)};
  History nested;
  nested.epochs = {Rat(0), Rat(1, 2), Rat(1)};
  nested.route = {Ball::whole(p), Ball(p, 1, 0), Ball(p, 2, 0)};
  return {single, nested};
}

ConvergenceReport run_convergence(const ConvergenceConfig& config) {
  ConvergenceReport report;
  report.config = config;
  const SymbolConvention conv = config.literal_symbol
                                    ? SymbolConvention::literal
                                    : SymbolConvention::conservative;
  auto fail = [&](const std::string& what) { report.failures.push_back(what); };

  std::vector<History> histories =
      config.histories.empty() ? standard_histories(config.p) : config.histories;

  auto level_params = [&](unsigned m) {
    return Params(config.p, m, config.b, config.D);
  };

  // epsilon_m / sup gap / marginal TV, ordered by (t, m)
  for (const Rat& t : config.times) {
    double prev_eps = 0.0;
    double prev_tv = 0.0;
    for (unsigned m = config.m_lo; m <= config.m_hi; ++m) {
      const Params pm = level_params(m);
      EmGap gap = epsilon_m(t, pm, conv);
      if (gap.sup_density_gap > gap.eps_l1 + config.tol)
        fail("sup_density_gap exceeds eps_l1 at m=" + std::to_string(m) +
             " t=" + t.to_string());
      if (m > config.m_lo && !config.literal_symbol && !(gap.eps_l1 < prev_eps))
        fail("eps_l1 not strictly decreasing at m=" + std::to_string(m) +
             " t=" + t.to_string());
      prev_eps = gap.eps_l1;
      report.per_m.push_back(gap);

      const unsigned j = std::min(config.tv_resolution, m);
      TvRecord tv{m, t, j, marginal_tv(t, pm, j)};
      if (tv.tv > gap.sup_density_gap + config.tol)
        fail("marginal TV exceeds sup density gap at m=" + std::to_string(m) +
             " t=" + t.to_string());
      if (m > config.m_lo && !(tv.tv < prev_tv + config.tol))
        fail("marginal TV not decreasing at m=" + std::to_string(m) +
             " t=" + t.to_string());
      prev_tv = tv.tv;
      report.tv.push_back(tv);
    }
  }

  if (config.literal_symbol) {
    const Params p0 = level_params(config.m_lo);
    for (const Rat& t : config.times)
      report.literal_offsets.push_back(std::fabs(
          1.0 - std::exp(config.D.to_double() * t.to_double() / beta_constant(p0))));
  }

  for (const History& h : histories) {
    double prev_gap = 0.0;
    for (unsigned m = config.m_lo; m <= config.m_hi; ++m) {
      const Params pm = level_params(m);
      FddRecord rec;
      rec.history = h.to_string();
      rec.m = m;
      rec.discrete = cylinder_prob_discrete(h, pm);
      rec.limit = cylinder_prob_limit(h, pm);
      rec.gap = std::fabs(rec.discrete - rec.limit);
      if (m > config.m_lo && !(rec.gap < prev_gap))
        fail("fdd gap not decreasing at m=" + std::to_string(m) + " history " +
             rec.history);
      prev_gap = rec.gap;
      report.fdd.push_back(rec);
    }
  }

  for (unsigned m = config.m_lo; m <= config.m_hi; ++m) {
    const Params pm = level_params(m);
    for (double s : config.s_grid) {
      for (const Rat& t : config.times) {
        const BoundCheck c = holder_bound_check(t.to_double(), s, pm);
        report.moments.push_back(
            {"holder", m, t.to_string(), s, c.lhs, c.rhs, c.pass()});
        if (!c.pass()) fail("holder bound fails at m=" + std::to_string(m));
      }
    }
    for (double r : config.r_grid) {
      for (const Rat& t : config.times) {
        const BoundCheck c = moment_scaling_check(t, r, pm);
        report.moments.push_back(
            {"scaling", m, t.to_string(), r, c.lhs, c.rhs, c.pass()});
        if (!c.pass()) fail("moment scaling fails at m=" + std::to_string(m));
      }
      std::vector<Rat> ts = config.times;
      std::sort(ts.begin(), ts.end());
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const Rat mid = (ts[i] + ts[i + 1]) / Rat(2);
        const BoundCheck c = chentsov_product_check(ts[i], mid, ts[i + 1], r, pm);
        report.moments.push_back({"chentsov", m,
                                  ts[i].to_string() + ".." + ts[i + 1].to_string(),
                                  r, c.lhs, c.rhs, c.pass()});
        if (!c.pass()) fail("chentsov product fails at m=" + std::to_string(m));
      }
    }
  }

  for (unsigned m = config.m_lo; m <= config.m_hi; ++m) {
    const Params pm = level_params(m);
    const StepLaw law = make_step_law(pm);
    // Seed offset by level keeps the per-m draws distinct and reproducible.
    const auto counts =
        sample_circle_counts(law, config.samples, config.seed + m, config.workers);
    McRecord rec{m, mc_goodness_of_fit(counts, law.circle_prob)};
    if (rec.chi2.rejected)
      fail("chi-square rejected at m=" + std::to_string(m));
    report.mc.push_back(rec);
  }

  report.all_pass = report.failures.empty();
  return report;
}

}  // namespace padic
