#include "padic/walk.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "padic/limit_kernel.hpp"
#include "padic/step_law.hpp"
#include "padic/volumes.hpp"

namespace padic {

namespace {

// Dense group-wide operations are desk-scale tools; past this the quadratic
// convolutions used by the cylinder recursion stop being sensible.
constexpr std::uint64_t kDenseLimit = 1ull << 13;

}  // namespace

TimeScale make_time_scale(const Params& params) {
  TimeScale ts;
  ts.sigma = params.D() / beta_constant(params);
  ts.lambda = ts.sigma * params.pow_b(params.m());
  ts.tau = 1.0 / ts.lambda;
  return ts;
}

std::uint64_t steps_before(const Rat& t, const Params& params) {
  if (t.num < 0) throw std::domain_error("steps_before: negative time");
  if (t.num == 0) return 0;

  if (params.b_exact() && params.b_exact()->is_integer() && params.D_exact()) {
    // lambda = D p^b (p-1) p^(mb) / (p^(b+1) - 1), all integers here.
    using boost::multiprecision::cpp_int;
    const unsigned b = static_cast<unsigned>(params.b_exact()->num);
    const cpp_int p = params.p();
    const cpp_int num = cpp_int(t.num) * params.D_exact()->num * (p - 1) *
                        pow(p, b * (params.m() + 1));
    const cpp_int den = cpp_int(t.den) * params.D_exact()->den * (pow(p, b + 1) - 1);
    return static_cast<std::uint64_t>(num / den);
  }

  // Guarded floating floor: values within 2^-46 (relative) of an integer are
  // snapped onto it, since t or D may carry decimal rounding.
  const long double sigma =
      static_cast<long double>(params.D()) / beta_constant(params);
  const long double lambda =
      sigma * std::pow(static_cast<long double>(params.p()),
                       static_cast<long double>(params.m()) * params.b());
  const long double x =
      (static_cast<long double>(t.num) / t.den) * lambda;
  const long double nearest = std::round(x);
  if (std::fabs(x - nearest) <= std::ldexp(std::fmax(x, 1.0L), -46))
    return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::floor(x));
}

RadialProfile nstep_density(long long n, const Params& params) {
  if (n < 0) throw std::domain_error("nstep_density: negative step count");
  const unsigned m = params.m();
  const std::vector<double> phi = phi_ladder(params);
  std::vector<double> phi_n(m + 1);
  for (unsigned i = 0; i <= m; ++i)
    phi_n[i] = std::pow(phi[i], static_cast<double>(n));

  RadialProfile out(params, Side::group);
  // Prefix sums of (phi(i)^n - phi(i+1)^n) p^i; circle k keeps i <= m-k.
  double acc = 0.0;
  std::vector<double> prefix(m + 1, 0.0);  // prefix[c] = sum_{i=0..c-1}
  for (unsigned i = 0; i < m; ++i) {
    acc += (phi_n[i] - phi_n[i + 1]) * params.pow_p(static_cast<int>(i));
    prefix[i + 1] = acc;
  }
  const double negative_floor = -1e-12 * params.pow_p(static_cast<int>(m));
  for (unsigned k = 0; k <= m; ++k) {
    double v = (k == 0)
                   ? prefix[m] + phi_n[m] * params.pow_p(static_cast<int>(m))
                   : prefix[m - k + 1];
    if (v < 0.0) {
      // The telescoped sum is exact; real negativity is a bug, not roundoff.
      if (v < negative_floor)
        throw std::logic_error("nstep_density: negative density beyond tolerance");
      v = 0.0;
    }
    out.at_circle(k) = v;
  }
  return out;
}

std::vector<double> nstep_pmf(long long n, const Params& params) {
  const std::uint64_t N = params.modulus();
  if (N > kDenseLimit)
    throw std::domain_error("nstep_pmf: p^m too large for dense enumeration");
  const RadialProfile density = nstep_density(n, params);
  const double haar = params.pow_p(-static_cast<int>(params.m()));
  std::vector<double> pmf(N);
  for (std::uint64_t x = 0; x < N; ++x)
    pmf[x] = density.value_at(x, params) * haar;
  return pmf;
}

double exact_moment(long long n, double r, const Params& params) {
  if (!(r > 0.0 && r < params.b()))
    throw std::domain_error("exact_moment: r must lie in (0, b)");
  if (n < 0) throw std::domain_error("exact_moment: negative step count");
  const RadialProfile density = nstep_density(n, params);
  const unsigned m = params.m();
  double acc = 0.0;
  for (unsigned k = 1; k <= m; ++k) {
    const double mass = density.at_circle(k) * circle_volume(k, params).to_double();
    acc += mass * std::pow(params.pow_p(static_cast<int>(k) - static_cast<int>(m)), r);
  }
  return acc;
}

double moment_bound(long long n, double r, const Params& params) {
  if (!(r > 0.0 && r < params.b()))
    throw std::domain_error("moment_bound: r must lie in (0, b)");
  const Thresholds th = thresholds(params);
  if (params.m() <= th.M)
    throw std::invalid_argument("moment_bound: requires m > M(p,b) = " +
                                std::to_string(th.M));
  if (n < 0) throw std::domain_error("moment_bound: negative step count");
  if (n == 0) return 0.0;

  const double p = static_cast<double>(params.p());
  const double b = params.b();
  const double m = params.m();
  const double beta = beta_constant(params);
  const double pb = params.pow_b(1);
  const double pmb_inv = params.pow_b(-m);
  const double cm = beta * (pb - 1.0) *
                    (1.0 + pmb_inv + pmb_inv * pmb_inv / (1.0 - pmb_inv));
  const double pr = std::pow(p, r);
  const double K = cm * pr * (p - 1.0) * pb * std::pow(beta, (r - b) / b) *
                   std::tgamma((b - r) / b) /
                   ((pb - 1.0) * (std::pow(p, r + 1.0) - 1.0));
  const double nn = static_cast<double>(n);
  const double mult = std::pow((nn + (b - r) / b) / nn, r / b);
  const double first = K * std::pow(nn, r / b) * std::pow(p, -m * r) * mult;

  const double base = 1.0 - beta * pb * (1.0 + pmb_inv) * pmb_inv;
  const double second =
      (1.0 - std::pow(base, nn)) * pr * (p - 1.0) / (std::pow(p, r + 1.0) - 1.0);
  return first + second;
}

Thresholds thresholds(const Params& params) {
  const double p = static_cast<double>(params.p());
  const double b = params.b();
  const auto lg = [&](double x) { return std::log(x) / std::log(p); };
  Thresholds th;
  // ceil with a small downward guard so integral arguments do not bump up a
  // whole level from representation noise.
  const double arg = lg((std::pow(p, b + 1.0) - 1.0) / (std::pow(p, b) - 1.0)) / b;
  th.M = 1 + static_cast<unsigned>(std::ceil(arg - 1e-12));
  th.M_prime = lg(2.0 * std::sqrt(2.0) * std::pow(p, b)) / b;
  th.N = std::max<double>(th.M, th.M_prime);
  return th;
}

double cylinder_prob_discrete(const History& h, const Params& params) {
  h.validate();
  for (const Ball& ball : h.route) {
    if (ball.prime() != params.p())
      throw std::invalid_argument("cylinder_prob_discrete: ball prime mismatch");
    if (ball.radius_exp() > params.m())
      throw std::invalid_argument(
          "cylinder_prob_discrete: ball finer than the level (radius_exp > m)");
  }
  if (!h.route[0].contains_zero()) return 0.0;

  const std::uint64_t N = params.modulus();
  if (N > kDenseLimit)
    throw std::domain_error("cylinder_prob_discrete: p^m too large for dense recursion");

  std::vector<double> mass(N, 0.0);
  mass[0] = 1.0;
  std::uint64_t steps_prev = 0;
  for (std::size_t i = 1; i < h.epochs.size(); ++i) {
    const std::uint64_t steps_i = steps_before(h.epochs[i], params);
    const std::vector<double> pmf =
        nstep_pmf(static_cast<long long>(steps_i - steps_prev), params);
    steps_prev = steps_i;

    std::vector<double> next(N, 0.0);
    for (std::uint64_t x = 0; x < N; ++x) {
      if (mass[x] == 0.0) continue;
      for (std::uint64_t z = 0; z < N; ++z) {
        const std::uint64_t y = x + z;
        next[y >= N ? y - N : y] += mass[x] * pmf[z];
      }
    }
    const Ball& ball = h.route[i];
    for (std::uint64_t x = 0; x < N; ++x)
      mass[x] = ball.contains(x) ? next[x] : 0.0;
  }
  double total = 0.0;
  for (double v : mass) total += v;
  return total;
}

}  // namespace padic
