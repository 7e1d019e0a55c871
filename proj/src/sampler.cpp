#include "padic/sampler.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

namespace padic {

namespace {

unsigned draw_circle_index(const StepLaw& law, RngStream& rng) {
  const double u = rng.next_double();
  const unsigned m = law.params.m();
  for (unsigned l = 1; l < m; ++l)
    if (u < law.circle_cdf[l]) return l;
  return m;
}

}  // namespace

GroupElement sample_step(const StepLaw& law, RngStream& rng) {
  const Params& pr = law.params;
  const unsigned l = draw_circle_index(law, rng);
  const unsigned v = pr.m() - l;  // leading digit position
  std::uint64_t residue = 0;
  std::uint64_t scale = pow_u64(pr.p(), v);
  residue += (1 + rng.next_below(pr.p() - 1)) * scale;
  for (unsigned i = v + 1; i < pr.m(); ++i) {
    scale *= pr.p();
    residue += rng.next_below(pr.p()) * scale;
  }
  return GroupElement(residue, pr);
}

Digits PathSample::point_at(std::uint64_t k) const {
  return gamma_embed(GroupElement(partial_sums.at(k), params));
}

PathSample sample_embedded_path(const Rat& horizon, const StepLaw& law,
                                RngStream& rng) {
  if (!(Rat(0) < horizon))
    throw std::domain_error("sample_embedded_path: horizon must be positive");
  PathSample path{rng.seed(), rng.stream(), law.params,
                  make_time_scale(law.params), {}};
  const std::uint64_t n = steps_before(horizon, law.params);
  path.partial_sums.reserve(n + 1);
  std::uint64_t sum = 0;
  const std::uint64_t N = law.params.modulus();
  path.partial_sums.push_back(sum);
  for (std::uint64_t i = 0; i < n; ++i) {
    sum += sample_step(law, rng).residue();
    if (sum >= N) sum -= N;
    path.partial_sums.push_back(sum);
  }
  return path;
}

void write_path_csv(std::ostream& os, const PathSample& path) {
  os << "stepIndex,time,residue,digitString\n";
  char buf[64];
  for (std::uint64_t k = 0; k < path.partial_sums.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", path.time_at(k));
    os << k << ',' << buf << ',' << path.partial_sums[k] << ','
       << path.point_at(k).to_string() << '\n';
  }
}

std::vector<std::uint64_t> sample_circle_counts(const StepLaw& law,
                                                std::uint64_t n_samples,
                                                std::uint64_t seed,
                                                unsigned workers) {
  const unsigned m = law.params.m();
  // Fixed partition over kMcStreams streams; stream s draws quota(s) samples
  // regardless of how many threads service the streams.
  std::vector<std::vector<std::uint64_t>> per_stream(
      kMcStreams, std::vector<std::uint64_t>(m + 1, 0));
  const std::uint64_t quota = n_samples / kMcStreams;
  const std::uint64_t remainder = n_samples % kMcStreams;

  auto run_stream = [&](unsigned s) {
    RngStream rng(seed, s);
    const std::uint64_t n = quota + (s < remainder ? 1 : 0);
    auto& counts = per_stream[s];
    for (std::uint64_t i = 0; i < n; ++i)
      ++counts[draw_circle_index(law, rng)];
  };

  workers = std::max(1u, std::min(workers, kMcStreams));
  if (workers == 1) {
    for (unsigned s = 0; s < kMcStreams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (unsigned s = w; s < kMcStreams; s += workers) run_stream(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge in stream order: associative sums, so the result is independent of
  // scheduling.
  std::vector<std::uint64_t> total(m + 1, 0);
  for (unsigned s = 0; s < kMcStreams; ++s)
    for (unsigned l = 0; l <= m; ++l) total[l] += per_stream[s][l];
  return total;
}

}  // namespace padic
