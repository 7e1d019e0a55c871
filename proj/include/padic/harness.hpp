#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padic/params.hpp"

namespace padic {

/// Default seed, fixed so runs are reproducible out of the box: the first 16
/// hex digits of the fractional part of pi.
inline constexpr std::uint64_t kDefaultSeed = 0x243F6A8885A308D3ull;

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Parsed command configuration. Times, b and D are kept as text until
/// command execution so exact rationals stay exact; decimal time inputs are
/// converted with a warning (floor boundaries are sensitive to rounding).
struct RunConfig {
  std::uint64_t p = 2;
  unsigned m = 3;
  std::optional<std::pair<unsigned, unsigned>> m_range;
  std::string b_text = "1";
  std::string D_text = "1";
  std::vector<std::string> time_texts;
  std::vector<std::uint64_t> steps;
  std::vector<double> r_grid;
  std::vector<double> s_grid;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t samples = 1'000'000;
  unsigned workers = 1;
  unsigned jmax = 8;
  double tol = 1e-12;
  std::string out;             // output path; empty writes to stdout
  std::string format = "csv";  // "csv" | "json"
  bool literal_symbol = false;
  bool inject_phi_flip = false;
};

/// Builds validated Params from the config's p, m, b, D. Throws
/// std::invalid_argument with a readable message on bad input.
Params params_from_config(const RunConfig& config, unsigned level);

// Commands. Each returns one of the exit codes above; all output is a pure
// function of the config (identical configs give byte-identical files).
// Precondition violations are emitted as one-line JSON error records on
// stderr before the nonzero exit.
int cmd_step_law(const RunConfig& config);
int cmd_walk(const RunConfig& config);
int cmd_pmf(const RunConfig& config);
int cmd_kernel(const RunConfig& config);
int cmd_moments(const RunConfig& config);
int cmd_converge(const RunConfig& config);
int cmd_selftest(const RunConfig& config);

}  // namespace padic
