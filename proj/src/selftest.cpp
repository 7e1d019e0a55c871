#include "padic/selftest.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <vector>

#include "padic/convergence.hpp"
#include "padic/elements.hpp"
#include "padic/limit_kernel.hpp"
#include "padic/radial.hpp"
#include "padic/rng.hpp"
#include "padic/sampler.hpp"
#include "padic/step_law.hpp"
#include "padic/volumes.hpp"
#include "padic/walk.hpp"

namespace padic {

namespace {

struct Runner {
  const SelftestOptions& opts;
  SelftestResult& result;

  void check(const std::string& name, bool ok) {
    ++result.checks;
    if (!ok) {
      ++result.failures;
      result.failed.push_back(name);
    }
    if (opts.verbose)
      std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name.c_str());
  }
};

std::vector<Params> desk_grid() {
  std::vector<Params> grid;
  for (std::uint64_t p : {2ull, 3ull, 5ull})
    for (Rat b : {Rat(1, 2), Rat(1), Rat(2)})
      for (unsigned m : {2u, 3u, 4u})
        grid.emplace_back(p, m, b, Rat(1));
  return grid;
}

// n-fold dense self-convolution of the step pmf; the independent oracle for
// the telescoped density formula.
std::vector<double> convolution_oracle(const StepLaw& law, unsigned n) {
  const std::uint64_t N = law.params.modulus();
  std::vector<double> base(N, 0.0);
  for (std::uint64_t x = 1; x < N; ++x)
    base[x] = law.density.value_at(x, law.params) *
              law.params.pow_p(-static_cast<int>(law.params.m()));
  std::vector<double> cur(N, 0.0);
  cur[0] = 1.0;
  for (unsigned step = 0; step < n; ++step) {
    std::vector<double> next(N, 0.0);
    for (std::uint64_t x = 0; x < N; ++x) {
      if (cur[x] == 0.0) continue;
      for (std::uint64_t z = 1; z < N; ++z) {
        const std::uint64_t y = x + z;
        next[y >= N ? y - N : y] += cur[x] * base[z];
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

SelftestResult run_selftest(const SelftestOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  SelftestResult result;
  Runner t{opts, result};

  // --- characteristic function: closed forms vs brute-force character sum
  {
    double worst = 0.0;
    for (const Params& pr : desk_grid()) {
      for (unsigned k = 0; k <= pr.m(); ++k) {
        double closed = phi_closed_at(k, pr);
        if (opts.inject_phi_sign_flip && k == 1) closed = -closed;
        const double compact = phi_compact_at(k, pr);
        const std::uint64_t res =
            k == 0 ? 0 : pow_u64(pr.p(), pr.m() - k);
        const double oracle = phi_dft_oracle(DualElement(res, pr), pr);
        worst = std::max({worst, std::fabs(closed - oracle),
                          std::fabs(closed - compact)});
      }
    }
    t.check("phi closed form == dft oracle (grid, 1e-12)", worst <= 1e-12);
  }

  // --- hand ladder at p=2, b=1, m=2
  {
    const Params pr(2, 2, Rat(1), Rat(1));
    const auto phi = phi_ladder(pr);
    t.check("phi ladder (1, 1/3, -2/3)",
            std::fabs(phi[0] - 1.0) < 1e-15 &&
                std::fabs(phi[1] - 1.0 / 3.0) < 1e-15 &&
                std::fabs(phi[2] + 2.0 / 3.0) < 1e-15);
  }

  // --- n-step density vs dense convolution, pinned pmf
  {
    double worst = 0.0;
    for (const Params& pr : desk_grid()) {
      const StepLaw law = make_step_law(pr);
      for (unsigned n : {0u, 1u, 2u, 4u}) {
        const auto pmf = nstep_pmf(n, pr);
        const auto oracle = convolution_oracle(law, n);
        double sum = 0.0;
        for (std::uint64_t x = 0; x < pmf.size(); ++x) {
          worst = std::max(worst, std::fabs(pmf[x] - oracle[x]));
          sum += pmf[x];
        }
        worst = std::max(worst, std::fabs(sum - 1.0));
      }
    }
    t.check("n-step density == dense convolution, mass 1 (grid, 1e-12)",
            worst <= 1e-12);

    const Params pr(2, 2, Rat(1), Rat(1));
    const auto pmf = nstep_pmf(2, pr);
    t.check("two-step pmf (1/2, 2/9, 1/18, 2/9)",
            std::fabs(pmf[0] - 0.5) < 1e-15 &&
                std::fabs(pmf[1] - 2.0 / 9.0) < 1e-15 &&
                std::fabs(pmf[2] - 1.0 / 18.0) < 1e-15 &&
                std::fabs(pmf[3] - 2.0 / 9.0) < 1e-15);
  }

  // --- moment certificate on a reduced grid
  {
    bool ok = true;
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
      for (Rat b : {Rat(1, 2), Rat(1), Rat(2)}) {
        const Thresholds th = thresholds(Params(p, 2, b, Rat(1)));
        const Params pr(p, th.M + 1, b, Rat(1));
        for (double rf : {0.25, 0.5, 0.75}) {
          const double r = rf * pr.b();
          for (long long n : {1ll, 2ll, 5ll, 16ll, 64ll})
            ok = ok && exact_moment(n, r, pr) <= moment_bound(n, r, pr);
        }
      }
    }
    t.check("exact moment <= certified bound (reduced grid)", ok);
  }

  // --- embedding is an isometry (exhaustive at p=2, m=3)
  {
    const Params pr(2, 3, Rat(1), Rat(1));
    bool ok = true;
    for (std::uint64_t g = 0; g < 8 && ok; ++g) {
      for (std::uint64_t h = 0; h < 8 && ok; ++h) {
        const GroupElement diff((g + 8 - h) % 8, pr);
        const std::uint64_t dg = gamma_embed(GroupElement(g, pr)).value();
        const std::uint64_t dh = gamma_embed(GroupElement(h, pr)).value();
        const GroupElement emb_diff((dg + 8 - dh) % 8, pr);
        ok = std::fabs(diff.norm() - emb_diff.norm()) == 0.0;
      }
    }
    t.check("digit embedding is an isometry (p=2, m=3)", ok);
  }

  // --- radial transform round trip and dense agreement
  {
    const Params pr(3, 3, Rat(1), Rat(1));
    RngStream rng(7, 0);
    RadialProfile f(pr, Side::group);
    for (unsigned k = 0; k <= pr.m(); ++k)
      f.at_circle(k) = rng.next_double() * 2.0 - 1.0;
    const RadialProfile g = radial_fourier(f, pr);
    const RadialProfile back = radial_fourier_inv(g, pr);
    double worst = 0.0;
    for (unsigned k = 0; k <= pr.m(); ++k)
      worst = std::max(worst, std::fabs(back.at_circle(k) - f.at_circle(k)));
    // dense character sum at each dual circle
    for (unsigned kd = 0; kd <= pr.m(); ++kd) {
      const DualElement y(kd == 0 ? 0 : pow_u64(pr.p(), pr.m() - kd), pr);
      std::complex<double> acc = 0.0;
      for (std::uint64_t x = 0; x < pr.modulus(); ++x)
        acc += f.value_at(x, pr) * char_pairing(GroupElement(x, pr), y) *
               pr.pow_p(-static_cast<int>(pr.m()));
      worst = std::max(worst, std::abs(acc - std::complex<double>(g.at_circle(kd))));
    }
    t.check("radial transform: round trip and dense sum (1e-12)", worst <= 1e-12);
  }

  // --- volumes and thresholds
  {
    bool ok = true;
    for (const Params& pr : desk_grid()) {
      Rat total(0);
      for (unsigned k = 0; k <= pr.m(); ++k)
        total = total + circle_volume(k, pr);
      ok = ok && total == Rat(1) && ball_volume(pr.m(), pr) == Rat(1);
    }
    const Thresholds th = thresholds(Params(2, 4, Rat(1), Rat(1)));
    ok = ok && th.M == 3 && std::fabs(th.M_prime - 2.5) < 1e-12;
    t.check("circle volumes sum to 1; thresholds M=3, M'=2.5 at p=2,b=1", ok);
  }

  // --- limit kernel: mass, positivity, semigroup, equilibrium
  {
    const Params pr(2, 4, Rat(1), Rat(1));
    bool ok = true;
    for (double tt : {0.25, 1.0, 4.0}) {
      ok = ok && std::fabs(ball_mass(0, tt, pr) - 1.0) <= 1e-12;
      for (unsigned j = 0; j <= 8; ++j) {
        ok = ok && radial_density(j, tt, pr) >= -1e-12;
        ok = ok && ball_mass(j, tt, pr) - ball_mass(j + 1, tt, pr) >= -1e-12;
      }
      for (unsigned k = 1; k <= 4; ++k) {
        const double lhs = char_function(tt, k, pr) * char_function(2 * tt, k, pr);
        const double rhs = char_function(3 * tt, k, pr);
        // exp's roundoff grows with |D symbol t|; 1e-13 relative is a few ulp
        // across the tested exponent range.
        ok = ok && std::fabs(lhs - rhs) <= 1e-13 * std::fabs(rhs);
      }
    }
    ok = ok && equilibrium_tv(10.0, 4, pr) < 1e-4;
    t.check("limit kernel: mass, positivity, semigroup, equilibrium TV", ok);
  }

  // --- convergence diagnostics at the hand-checked point
  {
    const Params pr(2, 2, Rat(1), Rat(1));
    const History h = standard_histories(2)[0];
    const double gap = fdd_gap(h, pr);
    t.check("single-ball fdd gap at m=2 is 0.076243",
            std::fabs(gap - 0.0762430135) < 1e-6);

    bool decay = true;
    double prev = 0.0;
    for (unsigned m = 3; m <= 6; ++m) {
      const Params pm(2, m, Rat(1), Rat(1));
      const EmGap eg = epsilon_m(Rat(1), pm);
      decay = decay && eg.sup_density_gap <= eg.eps_l1 + 1e-12 &&
              (m == 3 || eg.eps_l1 < prev);
      prev = eg.eps_l1;
    }
    t.check("eps_m decays and dominates the sup density gap (m=3..6)", decay);
  }

  // --- sampler: determinism and statistics
  {
    const Params pr(2, 3, Rat(1), Rat(1));
    const StepLaw law = make_step_law(pr);
    const auto c1 = sample_circle_counts(law, 100'000, 12345, 1);
    const auto c2 = sample_circle_counts(law, 100'000, 12345, 3);
    bool ok = c1 == c2;
    const auto chi2 = mc_goodness_of_fit(c1, law.circle_prob);
    ok = ok && !chi2.rejected;
    for (unsigned l = 1; l <= pr.m(); ++l) {
      const double n = 100'000.0;
      const double sd = std::sqrt(n * law.circle_prob[l] * (1 - law.circle_prob[l]));
      ok = ok && std::fabs(static_cast<double>(c1[l]) - n * law.circle_prob[l]) <=
                     4.0 * sd;
    }
    t.check("sampler: worker-count invariance, 4-sigma frequencies, chi-square", ok);
  }

  const auto end = std::chrono::steady_clock::now();
  result.seconds = std::chrono::duration<double>(end - start).count();
  if (opts.verbose)
    std::printf("%u checks, %u failures (%.2f s)\n", result.checks,
                result.failures, result.seconds);
  return result;
}

}  // namespace padic
