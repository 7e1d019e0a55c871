// Command line front end: every subcommand is a thin wrapper over the
// library, emitting CSV or JSON. Exit codes: 0 success, 1 assertion
// failure, 2 configuration error.

#include <CLI11.hpp>

#include <string>
#include <vector>

#include "padic/harness.hpp"

namespace {

void add_shared_flags(CLI::App* cmd, padic::RunConfig& config,
                      std::string& m_range_text) {
  cmd->add_option("--p", config.p, "prime base");
  cmd->add_option("--m", config.m, "precision level");
  cmd->add_option("--m-range", m_range_text, "level range A..B");
  cmd->add_option("--b", config.b_text, "Vladimirov exponent (rational or decimal)");
  cmd->add_option("--diffusion", config.D_text, "diffusion coefficient");
  cmd->add_option("--time", config.time_texts,
                  "epoch times, exact rationals like 3/2 (repeatable)");
  cmd->add_option("--steps", config.steps, "step counts n (repeatable)");
  cmd->add_option("--r", config.r_grid, "moment exponents r in (0,b)");
  cmd->add_option("--s", config.s_grid, "Holder exponents s in (0,1)");
  cmd->add_option("--seed", config.seed, "64-bit seed");
  cmd->add_option("--samples", config.samples, "Monte Carlo sample count");
  cmd->add_option("--workers", config.workers, "worker threads for sampling");
  cmd->add_option("--jmax", config.jmax, "kernel table depth");
  cmd->add_option("--tol", config.tol, "comparison tolerance");
  cmd->add_option("--out", config.out, "output path (stdout when omitted)");
  cmd->add_option("--format", config.format, "csv | json");
}

bool parse_m_range(const std::string& text, padic::RunConfig& config) {
  if (text.empty()) return true;
  const auto sep = text.find("..");
  if (sep == std::string::npos) return false;
  try {
    const unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, sep)));
    const unsigned hi = static_cast<unsigned>(std::stoul(text.substr(sep + 2)));
    config.m_range = {lo, hi};
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete random walks on Z_p/p^mZ_p, the Z_p heat kernel, "
               "and convergence diagnostics"};
  app.require_subcommand(1);

  padic::RunConfig config;
  std::string m_range_text;

  CLI::App* step_law = app.add_subcommand(
      "step-law", "step distribution and characteristic function tables");
  CLI::App* walk = app.add_subcommand("walk", "sample one embedded path");
  CLI::App* pmf = app.add_subcommand("pmf", "n-step radial pmf table");
  CLI::App* kernel = app.add_subcommand("kernel", "limit kernel table");
  CLI::App* moments =
      app.add_subcommand("moments", "exact moments against the certified bound");
  CLI::App* converge =
      app.add_subcommand("converge", "full convergence diagnostic report");
  CLI::App* selftest =
      app.add_subcommand("selftest", "oracle-equivalence and invariant suite");

  for (CLI::App* cmd : {step_law, walk, pmf, kernel, moments, converge, selftest})
    add_shared_flags(cmd, config, m_range_text);
  converge->add_flag("--literal-symbol", config.literal_symbol,
                     "use the literal symbol value at the trivial character "
                     "(documentation runs; skips the eps decay assertion)");
  selftest->add_flag("--inject-phi-flip", config.inject_phi_flip,
                     "fault injection: flip a closed-form sign and require "
                     "the suite to notice");

  CLI11_PARSE(app, argc, argv);

  if (!parse_m_range(m_range_text, config)) {
    std::fprintf(stderr, "{\"error\":\"config\",\"detail\":\"bad --m-range, expected A..B\"}\n");
    return padic::kExitConfigError;
  }

  if (step_law->parsed()) return padic::cmd_step_law(config);
  if (walk->parsed()) return padic::cmd_walk(config);
  if (pmf->parsed()) return padic::cmd_pmf(config);
  if (kernel->parsed()) return padic::cmd_kernel(config);
  if (moments->parsed()) return padic::cmd_moments(config);
  if (converge->parsed()) return padic::cmd_converge(config);
  if (selftest->parsed()) return padic::cmd_selftest(config);
  return padic::kExitConfigError;
}
