#include "padic/limit_kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace padic {

double beta_constant(const Params& params) {
  const double p = static_cast<double>(params.p());
  return (std::pow(p, params.b() + 1.0) - 1.0) / (params.pow_b(1) * (p - 1.0));
}

double limit_symbol(unsigned k, const Params& params, SymbolConvention conv) {
  if (k == 0)
    return conv == SymbolConvention::conservative ? 0.0
                                                  : -1.0 / beta_constant(params);
  return params.pow_b(static_cast<double>(k)) - 1.0 / beta_constant(params);
}

double char_function(double t, unsigned k, const Params& params,
                     SymbolConvention conv) {
  return std::exp(-params.D() * limit_symbol(k, params, conv) * t);
}

double ball_mass(unsigned j, double t, const Params& params) {
  if (!(t > 0.0)) throw std::domain_error("ball_mass: t must be positive");
  double acc = 1.0;
  for (unsigned k = 1; k <= j; ++k)
    acc += (params.pow_p(static_cast<int>(k)) - params.pow_p(static_cast<int>(k) - 1)) *
           char_function(t, k, params);
  return acc * params.pow_p(-static_cast<int>(j));
}

double radial_density(unsigned j, double t, const Params& params) {
  if (!(t > 0.0)) throw std::domain_error("radial_density: t must be positive");
  double acc = 1.0;
  for (unsigned k = 1; k <= j; ++k)
    acc += (params.pow_p(static_cast<int>(k)) - params.pow_p(static_cast<int>(k) - 1)) *
           char_function(t, k, params);
  acc -= params.pow_p(static_cast<int>(j)) * char_function(t, j + 1, params);
  return acc;
}

ValueWithTail limit_moment(double t, double r, const Params& params,
                           double tail_tol) {
  if (!(r > 0.0 && r < params.b()))
    throw std::domain_error("limit_moment: r must lie in (0, b)");
  if (!(tail_tol > 0.0)) throw std::domain_error("limit_moment: tail_tol must be positive");
  ValueWithTail out;
  double bm = ball_mass(0, t, params);  // 1
  unsigned j = 0;
  for (;;) {
    const double weight = std::pow(params.pow_p(-static_cast<int>(j)), r);
    if (weight < tail_tol) {
      // Remaining circle masses sum to ball_mass(j), each weighted below
      // p^(-jr): the tail is at most that product.
      out.tail_bound = weight * bm;
      break;
    }
    const double bm_next = ball_mass(j + 1, t, params);
    out.value += weight * (bm - bm_next);
    bm = bm_next;
    ++j;
  }
  return out;
}

ValueWithTail qp_density(int j, double t, const Params& params, double tail_tol) {
  if (!(t > 0.0)) throw std::domain_error("qp_density: t must be positive");
  if (!(tail_tol > 0.0)) throw std::domain_error("qp_density: tail_tol must be positive");
  const double D = params.D();
  auto term = [&](int k) {
    const double a = std::exp(-D * t * params.pow_b(k));
    const double b = std::exp(-D * t * params.pow_b(k + 1));
    return params.pow_p(k) * (a - b);
  };
  ValueWithTail out;
  // Terms decay geometrically (ratio p^-(1+b)) towards k -> -infinity.
  for (int k = j;; --k) {
    const double v = term(k);
    if (v < tail_tol && k < j) {
      out.value += v;
      out.tail_bound =
          v / (params.pow_p(1) * params.pow_b(1) - 1.0) + tail_tol;
      break;
    }
    out.value += v;
  }
  return out;
}

RadialKernel make_radial_kernel(const Rat& t, unsigned max_j,
                                const Params& params) {
  RadialKernel kernel{t, params, {}, {}, 0.0};
  const double td = t.to_double();
  kernel.density.reserve(max_j + 1);
  kernel.ball_mass.reserve(max_j + 1);
  for (unsigned j = 0; j <= max_j; ++j) {
    kernel.density.push_back(radial_density(j, td, params));
    kernel.ball_mass.push_back(ball_mass(j, td, params));
  }
  return kernel;
}

std::shared_ptr<const RadialKernel> KernelCache::get(const Rat& t,
                                                     unsigned max_j,
                                                     const Params& params) {
  const Key key{t.num, t.den, max_j, params.p(), params.m(), params.b(),
                params.D()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto kernel = std::make_shared<const RadialKernel>(
      make_radial_kernel(t, max_j, params));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = entries_.emplace(key, std::move(kernel));
  return it->second;  // first writer wins; racers share its table
}

double cylinder_prob_limit(const History& h, const Params& params,
                           unsigned resolution) {
  h.validate();
  if (resolution == 0) resolution = std::max(1u, h.max_radius_exp());
  for (const Ball& ball : h.route) {
    if (ball.prime() != params.p())
      throw std::invalid_argument("cylinder_prob_limit: ball prime mismatch");
    if (ball.radius_exp() > resolution)
      throw std::invalid_argument(
          "cylinder_prob_limit: ball finer than the resolution");
  }
  if (!h.route[0].contains_zero()) return 0.0;

  const std::uint64_t N = pow_u64(params.p(), resolution);
  const double haar = params.pow_p(-static_cast<int>(resolution));

  // Valuation of each coset difference, fixed once.
  std::vector<unsigned> val(N, 0);
  for (std::uint64_t d = 1; d < N; ++d) {
    std::uint64_t x = d;
    unsigned v = 0;
    while (x % params.p() == 0) {
      x /= params.p();
      ++v;
    }
    val[d] = v;
  }

  std::vector<double> mass(N, 0.0);
  mass[0] = 1.0;
  for (std::size_t i = 1; i < h.epochs.size(); ++i) {
    const double dt = (h.epochs[i] - h.epochs[i - 1]).to_double();
    const double diag = ball_mass(resolution, dt, params);
    std::vector<double> dens(resolution);
    for (unsigned v = 0; v < resolution; ++v)
      dens[v] = radial_density(v, dt, params) * haar;

    std::vector<double> next(N, 0.0);
    for (std::uint64_t x = 0; x < N; ++x) {
      if (mass[x] == 0.0) continue;
      for (std::uint64_t z = 0; z < N; ++z) {
        const std::uint64_t y = x + z >= N ? x + z - N : x + z;
        next[y] += mass[x] * (z == 0 ? diag : dens[val[z]]);
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

double equilibrium_tv(double t, unsigned j, const Params& params) {
  // Radial grouping of the cosets mod p^j: valuation v < j occurs
  // p^(j-v) - p^(j-v-1) times, plus the zero coset.
  const double uniform = params.pow_p(-static_cast<int>(j));
  double tv = std::fabs(ball_mass(j, t, params) - uniform);
  for (unsigned v = 0; v < j; ++v) {
    const double count = params.pow_p(static_cast<int>(j - v)) -
                         params.pow_p(static_cast<int>(j - v) - 1);
    tv += count * std::fabs(radial_density(v, t, params) * uniform - uniform);
  }
  return tv / 2.0;
}

}  // namespace padic
