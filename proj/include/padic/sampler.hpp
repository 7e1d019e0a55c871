#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "padic/elements.hpp"
#include "padic/rng.hpp"
#include "padic/step_law.hpp"
#include "padic/walk.hpp"

namespace padic {

/// One step of the walk: the circle index is drawn by inverse CDF over the m
/// circle probabilities, then the element uniformly within the circle (digit
/// m-l drawn in 1..p-1, higher digits in 0..p-1, lower digits zero).
GroupElement sample_step(const StepLaw& law, RngStream& rng);

/// A sampled path, embedded in Z_p: partial sums S_0 = 0, S_1, ..., S_n with
/// n = floor(T*lambda); at times in [k tau, (k+1) tau) the embedded path sits
/// at the digit expansion of S_k.
struct PathSample {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  Params params;
  TimeScale scale;
  std::vector<std::uint64_t> partial_sums;

  std::uint64_t step_count() const { return partial_sums.size() - 1; }
  double time_at(std::uint64_t k) const { return static_cast<double>(k) * scale.tau; }
  Digits point_at(std::uint64_t k) const;
};

PathSample sample_embedded_path(const Rat& horizon, const StepLaw& law,
                                RngStream& rng);

/// CSV columns: stepIndex,time,residue,digitString.
void write_path_csv(std::ostream& os, const PathSample& path);

/// Number of fixed streams Monte Carlo work is partitioned over. Counts are
/// accumulated per stream and merged in stream order, so totals depend only
/// on (seed, n_samples), never on the worker count.
inline constexpr unsigned kMcStreams = 64;

/// Circle-index frequencies (index 0..m, 0 stays empty) over n_samples draws,
/// fanned out over `workers` threads.
std::vector<std::uint64_t> sample_circle_counts(const StepLaw& law,
                                                std::uint64_t n_samples,
                                                std::uint64_t seed,
                                                unsigned workers = 1);

}  // namespace padic
