#include "padic/harness.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "padic/convergence.hpp"
#include "padic/limit_kernel.hpp"
#include "padic/sampler.hpp"
#include "padic/selftest.hpp"
#include "padic/step_law.hpp"
#include "padic/volumes.hpp"
#include "padic/walk.hpp"

namespace padic {

namespace {

// ---------------------------------------------------------------------------
// Formatting: CSV and JSON are the output contract. Numbers are printed with
// 17 significant digits ('.' decimal, no locale) so a written report is a
// faithful image of the doubles that produced it.
// ---------------------------------------------------------------------------

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(std::string_view k) {
    comma();
    write_string(k);
    os_ << ':';
    fresh_ = true;  // the value slot is open
  }

  void value(double v) {
    comma();
    os_ << g17(v);
  }
  void value(std::uint64_t v) {
    comma();
    os_ << v;
  }
  void value(unsigned v) {
    comma();
    os_ << v;
  }
  void value(bool v) {
    comma();
    os_ << (v ? "true" : "false");
  }
  void value(std::string_view s) {
    comma();
    write_string(s);
  }

 private:
  void open(char c) {
    comma();
    os_ << c;
    fresh_ = true;
  }
  void close(char c) {
    os_ << c;
    fresh_ = false;
  }
  void comma() {
    if (!fresh_) os_ << ',';
    fresh_ = false;
  }
  void write_string(std::string_view s) {
    os_ << '"';
    for (char c : s) {
      if (c == '"' || c == '\\') os_ << '\\';
      os_ << c;
    }
    os_ << '"';
  }

  std::ostream& os_;
  bool fresh_ = true;
};

struct Output {
  std::ofstream file;
  std::ostream* os = nullptr;

  static Output open(const std::string& path) {
    Output out;
    if (path.empty()) {
      out.os = &std::cout;
      return out;
    }
    out.file.open(path, std::ios::binary);
    if (!out.file) throw std::invalid_argument("cannot open output file " + path);
    out.os = &out.file;
    return out;
  }
};

/// "x.csv" -> "x.phi.csv"; no extension -> append ".phi".
std::string sibling_path(const std::string& path, const std::string& tag) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
    return path + "." + tag;
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

void emit_error(const std::string& kind, const std::string& detail) {
  JsonWriter w(std::cerr);
  w.begin_object();
  w.key("error");
  w.value(std::string_view(kind));
  w.key("detail");
  w.value(std::string_view(detail));
  w.end_object();
  std::cerr << '\n';
}

std::vector<Rat> parse_times(const RunConfig& config,
                             std::vector<std::string> defaults) {
  std::vector<std::string> texts =
      config.time_texts.empty() ? std::move(defaults) : config.time_texts;
  std::vector<Rat> times;
  for (const auto& text : texts) {
    bool was_decimal = false;
    times.push_back(parse_rational(text, &was_decimal));
    if (was_decimal)
      std::cerr << "warning: decimal time '" << text << "' converted to "
                << times.back().to_string()
                << "; step counts floor(t*lambda) are sensitive to decimal rounding\n";
  }
  return times;
}

void params_json(JsonWriter& w, const Params& pr) {
  w.key("params");
  w.begin_object();
  w.key("p");
  w.value(pr.p());
  w.key("m");
  w.value(pr.m());
  w.key("b");
  w.value(pr.b());
  w.key("D");
  w.value(pr.D());
  w.end_object();
}

// Radial pmf table, rows l = 0..m. Works for the step law (zero class mass
// exactly 0) and for any n-step law (zero class is a single point).
void radial_table_csv(std::ostream& os, const Params& pr,
                      const RadialProfile& density,
                      const std::vector<double>& circle_mass) {
  os << "ell,circleProb,densityValue,pmfPerElement\n";
  for (unsigned l = 0; l <= pr.m(); ++l) {
    const double pmf = circle_mass[l] / static_cast<double>(circle_count(l, pr));
    os << l << ',' << g17(circle_mass[l]) << ',' << g17(density.at_circle(l))
       << ',' << g17(pmf) << '\n';
  }
}

}  // namespace

Params params_from_config(const RunConfig& config, unsigned level) {
  const Rat b = parse_rational(config.b_text);
  const Rat D = parse_rational(config.D_text);
  return Params(config.p, level, b, D);
}

// ---------------------------------------------------------------------------
// step-law
// ---------------------------------------------------------------------------

int cmd_step_law(const RunConfig& config) {
  try {
    const Params pr = params_from_config(config, config.m);
    const StepLaw law = make_step_law(pr);

    std::vector<double> phi_closed_col, phi_oracle_col;
    for (unsigned k = 0; k <= pr.m(); ++k) {
      phi_closed_col.push_back(phi_closed_at(k, pr));
      const std::uint64_t res = k == 0 ? 0 : pow_u64(pr.p(), pr.m() - k);
      phi_oracle_col.push_back(phi_dft_oracle(DualElement(res, pr), pr));
    }

    if (config.format == "json") {
      Output out = Output::open(config.out);
      JsonWriter w(*out.os);
      w.begin_object();
      params_json(w, pr);
      w.key("cM");
      w.value(law.c_m);
      w.key("stepLaw");
      w.begin_array();
      for (unsigned l = 0; l <= pr.m(); ++l) {
        w.begin_object();
        w.key("ell");
        w.value(l);
        w.key("circleProb");
        w.value(law.circle_prob[l]);
        w.key("densityValue");
        w.value(law.density.at_circle(l));
        w.key("pmfPerElement");
        w.value(law.pmf_per_element(l));
        w.end_object();
      }
      w.end_array();
      w.key("phi");
      w.begin_array();
      for (unsigned k = 0; k <= pr.m(); ++k) {
        w.begin_object();
        w.key("dualNormExp");
        w.value(k);
        w.key("phiClosed");
        w.value(phi_closed_col[k]);
        w.key("phiOracle");
        w.value(phi_oracle_col[k]);
        w.key("absDiff");
        w.value(std::fabs(phi_closed_col[k] - phi_oracle_col[k]));
        w.end_object();
      }
      w.end_array();
      w.end_object();
      *out.os << '\n';
      return kExitOk;
    }

    if (config.format != "csv") {
      emit_error("config", "unknown format " + config.format);
      return kExitConfigError;
    }
    const auto emit_phi = [&](std::ostream& os) {
      os << "dualNormExp,phiClosed,phiOracle,absDiff\n";
      for (unsigned k = 0; k <= pr.m(); ++k)
        os << k << ',' << g17(phi_closed_col[k]) << ',' << g17(phi_oracle_col[k])
           << ',' << g17(std::fabs(phi_closed_col[k] - phi_oracle_col[k]))
           << '\n';
    };
    {
      Output out = Output::open(config.out);
      radial_table_csv(*out.os, pr, law.density, law.circle_prob);
      if (config.out.empty()) {
        *out.os << '\n';  // stdout: separate the two tables
        emit_phi(*out.os);
      } else {
        Output phi_out = Output::open(sibling_path(config.out, "phi"));
        emit_phi(*phi_out.os);
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    emit_error("config", e.what());
    return kExitConfigError;
  }
}

// ---------------------------------------------------------------------------
// pmf
// ---------------------------------------------------------------------------

int cmd_pmf(const RunConfig& config) {
  try {
    const Params pr = params_from_config(config, config.m);
    const long long n =
        config.steps.empty() ? 1 : static_cast<long long>(config.steps.front());
    const RadialProfile density = nstep_density(n, pr);
    std::vector<double> circle_mass(pr.m() + 1, 0.0);
    for (unsigned l = 0; l <= pr.m(); ++l)
      circle_mass[l] = density.at_circle(l) * circle_volume(l, pr).to_double();

    Output out = Output::open(config.out);
    if (config.format == "json") {
      JsonWriter w(*out.os);
      w.begin_object();
      params_json(w, pr);
      w.key("steps");
      w.value(static_cast<std::uint64_t>(n));
      w.key("pmf");
      w.begin_array();
      for (unsigned l = 0; l <= pr.m(); ++l) {
        w.begin_object();
        w.key("ell");
        w.value(l);
        w.key("circleProb");
        w.value(circle_mass[l]);
        w.key("densityValue");
        w.value(density.at_circle(l));
        w.key("pmfPerElement");
        w.value(l == 0 ? circle_mass[0]
                       : circle_mass[l] / static_cast<double>(circle_count(l, pr)));
        w.end_object();
      }
      w.end_array();
      w.end_object();
      *out.os << '\n';
    } else if (config.format == "csv") {
      radial_table_csv(*out.os, pr, density, circle_mass);
    } else {
      emit_error("config", "unknown format " + config.format);
      return kExitConfigError;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    emit_error("config", e.what());
    return kExitConfigError;
  }
}

// ---------------------------------------------------------------------------
// walk
// ---------------------------------------------------------------------------

int cmd_walk(const RunConfig& config) {
  try {
    const Params pr = params_from_config(config, config.m);
    const std::vector<Rat> times = parse_times(config, {"1"});
    const StepLaw law = make_step_law(pr);
    RngStream rng(config.seed, 0);
    const PathSample path = sample_embedded_path(times.front(), law, rng);

    Output out = Output::open(config.out);
    if (config.format == "json") {
      JsonWriter w(*out.os);
      w.begin_object();
      params_json(w, pr);
      w.key("seed");
      w.value(path.seed);
      w.key("horizon");
      w.value(std::string_view(times.front().to_string()));
      w.key("path");
      w.begin_array();
      for (std::uint64_t k = 0; k < path.partial_sums.size(); ++k) {
        w.begin_object();
        w.key("stepIndex");
        w.value(k);
        w.key("time");
        w.value(path.time_at(k));
        w.key("residue");
        w.value(path.partial_sums[k]);
        w.key("digitString");
        w.value(std::string_view(path.point_at(k).to_string()));
        w.end_object();
      }
      w.end_array();
      w.end_object();
      *out.os << '\n';
    } else if (config.format == "csv") {
      write_path_csv(*out.os, path);
    } else {
      emit_error("config", "unknown format " + config.format);
      return kExitConfigError;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    emit_error("config", e.what());
    return kExitConfigError;
  }
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

int cmd_kernel(const RunConfig& config) {
  try {
    const Params pr = params_from_config(config, config.m);
    const std::vector<Rat> times = parse_times(config, {"1"});
    const RadialKernel kernel = make_radial_kernel(times.front(), config.jmax, pr);

    Output out = Output::open(config.out);
    if (config.format == "json") {
      JsonWriter w(*out.os);
      w.begin_object();
      params_json(w, pr);
      w.key("t");
      w.value(std::string_view(kernel.t.to_string()));
      w.key("kernel");
      w.begin_array();
      for (unsigned j = 0; j <= config.jmax; ++j) {
        w.begin_object();
        w.key("j");
        w.value(j);
        w.key("density");
        w.value(kernel.density[j]);
        w.key("ballMass");
        w.value(kernel.ball_mass[j]);
        w.key("tailBound");
        w.value(kernel.tail_bound);
        w.end_object();
      }
      w.end_array();
      w.end_object();
      *out.os << '\n';
    } else if (config.format == "csv") {
      *out.os << "j,density,ballMass,tailBound\n";
      for (unsigned j = 0; j <= config.jmax; ++j)
        *out.os << j << ',' << g17(kernel.density[j]) << ','
                << g17(kernel.ball_mass[j]) << ',' << g17(kernel.tail_bound)
                << '\n';
    } else {
      emit_error("config", "unknown format " + config.format);
      return kExitConfigError;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    emit_error("config", e.what());
    return kExitConfigError;
  }
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

int cmd_moments(const RunConfig& config) {
  try {
    const Params pr = params_from_config(config, config.m);
    const Thresholds th = thresholds(pr);
    if (pr.m() <= th.M) {
      std::ostringstream detail;
      detail << "moment certificate requires m > M(p,b) = " << th.M
             << " (got m = " << pr.m() << ")";
      emit_error("precondition", detail.str());
      return kExitConfigError;
    }
    const std::vector<std::uint64_t> ns =
        config.steps.empty() ? std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32, 64}
                             : config.steps;
    const std::vector<double> rs =
        config.r_grid.empty() ? std::vector<double>{pr.b() / 2.0} : config.r_grid;

    bool all_pass = true;
    Output out = Output::open(config.out);
    if (config.format == "json") {
      JsonWriter w(*out.os);
      w.begin_object();
      params_json(w, pr);
      w.key("moments");
      w.begin_array();
      for (double r : rs) {
        for (std::uint64_t n : ns) {
          const double e = exact_moment(static_cast<long long>(n), r, pr);
          const double bound = moment_bound(static_cast<long long>(n), r, pr);
          all_pass = all_pass && e <= bound;
          w.begin_object();
          w.key("n");
          w.value(n);
          w.key("r");
          w.value(r);
          w.key("exactMoment");
          w.value(e);
          w.key("bound");
          w.value(bound);
          w.key("pass");
          w.value(e <= bound);
          w.end_object();
        }
      }
      w.end_array();
      w.end_object();
      *out.os << '\n';
    } else if (config.format == "csv") {
      *out.os << "n,r,exactMoment,bound,pass\n";
      for (double r : rs) {
        for (std::uint64_t n : ns) {
          const double e = exact_moment(static_cast<long long>(n), r, pr);
          const double bound = moment_bound(static_cast<long long>(n), r, pr);
          all_pass = all_pass && e <= bound;
          *out.os << n << ',' << g17(r) << ',' << g17(e) << ',' << g17(bound)
                  << ',' << (e <= bound ? 1 : 0) << '\n';
        }
      }
    } else {
      emit_error("config", "unknown format " + config.format);
      return kExitConfigError;
    }
    return all_pass ? kExitOk : kExitAssertionFailure;
  } catch (const std::exception& e) {
    emit_error("config", e.what());
    return kExitConfigError;
  }
}

// ---------------------------------------------------------------------------
// converge
// ---------------------------------------------------------------------------

namespace {

void report_json(std::ostream& os, const ConvergenceReport& report) {
  const ConvergenceConfig& cfg = report.config;
  JsonWriter w(os);
  w.begin_object();
  w.key("params");
  w.begin_object();
  w.key("p");
  w.value(cfg.p);
  w.key("b");
  w.value(std::string_view(cfg.b.to_string()));
  w.key("D");
  w.value(std::string_view(cfg.D.to_string()));
  w.end_object();
  w.key("grid");
  w.begin_object();
  w.key("mRange");
  w.begin_array();
  w.value(cfg.m_lo);
  w.value(cfg.m_hi);
  w.end_array();
  w.key("times");
  w.begin_array();
  for (const Rat& t : cfg.times) w.value(std::string_view(t.to_string()));
  w.end_array();
  w.key("r");
  w.begin_array();
  for (double r : cfg.r_grid) w.value(r);
  w.end_array();
  w.key("s");
  w.begin_array();
  for (double s : cfg.s_grid) w.value(s);
  w.end_array();
  w.key("tvResolution");
  w.value(cfg.tv_resolution);
  w.key("samples");
  w.value(cfg.samples);
  w.key("tol");
  w.value(cfg.tol);
  w.key("literalSymbol");
  w.value(cfg.literal_symbol);
  w.end_object();
  w.key("seed");
  w.value(cfg.seed);

  w.key("perM");
  w.begin_array();
  for (const EmGap& g : report.per_m) {
    w.begin_object();
    w.key("m");
    w.value(g.m);
    w.key("t");
    w.value(std::string_view(g.t.to_string()));
    w.key("epsL1");
    w.value(g.eps_l1);
    w.key("tailBound");
    w.value(g.tail_bound);
    w.key("supGap");
    w.value(g.sup_density_gap);
    w.end_object();
  }
  w.end_array();

  w.key("fdd");
  w.begin_array();
  for (const FddRecord& r : report.fdd) {
    w.begin_object();
    w.key("history");
    w.value(std::string_view(r.history));
    w.key("m");
    w.value(r.m);
    w.key("discrete");
    w.value(r.discrete);
    w.key("limit");
    w.value(r.limit);
    w.key("gap");
    w.value(r.gap);
    w.end_object();
  }
  w.end_array();

  w.key("moments");
  w.begin_array();
  for (const MomentRecord& r : report.moments) {
    w.begin_object();
    w.key("kind");
    w.value(std::string_view(r.kind));
    w.key("m");
    w.value(r.m);
    w.key("t");
    w.value(std::string_view(r.t));
    w.key("exponent");
    w.value(r.exponent);
    w.key("lhs");
    w.value(r.lhs);
    w.key("rhs");
    w.value(r.rhs);
    w.key("pass");
    w.value(r.pass);
    w.end_object();
  }
  w.end_array();

  w.key("tv");
  w.begin_array();
  for (const TvRecord& r : report.tv) {
    w.begin_object();
    w.key("m");
    w.value(r.m);
    w.key("t");
    w.value(std::string_view(r.t.to_string()));
    w.key("resolution");
    w.value(r.resolution);
    w.key("tv");
    w.value(r.tv);
    w.end_object();
  }
  w.end_array();

  w.key("mc");
  w.begin_array();
  for (const McRecord& r : report.mc) {
    w.begin_object();
    w.key("m");
    w.value(r.m);
    w.key("samples");
    w.value(r.chi2.samples);
    w.key("statistic");
    w.value(r.chi2.statistic);
    w.key("dof");
    w.value(r.chi2.dof);
    w.key("pValue");
    w.value(r.chi2.p_value);
    w.key("rejected");
    w.value(r.chi2.rejected);
    w.key("mergedClasses");
    w.value(r.chi2.merged_classes);
    w.end_object();
  }
  w.end_array();

  if (cfg.literal_symbol) {
    w.key("literalZeroClassOffsets");
    w.begin_array();
    for (double v : report.literal_offsets) w.value(v);
    w.end_array();
  }

  w.key("failures");
  w.begin_array();
  for (const std::string& f : report.failures) w.value(std::string_view(f));
  w.end_array();
  w.key("allPass");
  w.value(report.all_pass);
  w.end_object();
  os << '\n';
}

void report_csv_tables(const std::string& prefix, const ConvergenceReport& report) {
  {
    std::ofstream os(prefix + ".perM.csv", std::ios::binary);
    os << "m,t,epsL1,tailBound,supGap\n";
    for (const EmGap& g : report.per_m)
      os << g.m << ',' << g.t.to_string() << ',' << g17(g.eps_l1) << ','
         << g17(g.tail_bound) << ',' << g17(g.sup_density_gap) << '\n';
  }
  {
    std::ofstream os(prefix + ".fdd.csv", std::ios::binary);
    os << "history,m,discrete,limit,gap\n";
    for (const FddRecord& r : report.fdd)
      os << '"' << r.history << '"' << ',' << r.m << ',' << g17(r.discrete)
         << ',' << g17(r.limit) << ',' << g17(r.gap) << '\n';
  }
  {
    std::ofstream os(prefix + ".moments.csv", std::ios::binary);
    os << "kind,m,t,exponent,lhs,rhs,pass\n";
    for (const MomentRecord& r : report.moments)
      os << r.kind << ',' << r.m << ',' << r.t << ',' << g17(r.exponent) << ','
         << g17(r.lhs) << ',' << g17(r.rhs) << ',' << (r.pass ? 1 : 0) << '\n';
  }
  {
    std::ofstream os(prefix + ".mc.csv", std::ios::binary);
    os << "m,samples,statistic,dof,pValue,rejected,mergedClasses\n";
    for (const McRecord& r : report.mc)
      os << r.m << ',' << r.chi2.samples << ',' << g17(r.chi2.statistic) << ','
         << r.chi2.dof << ',' << g17(r.chi2.p_value) << ','
         << (r.chi2.rejected ? 1 : 0) << ',' << r.chi2.merged_classes << '\n';
  }
}

}  // namespace

int cmd_converge(const RunConfig& config) {
  try {
    ConvergenceConfig cc;
    cc.p = config.p;
    cc.b = parse_rational(config.b_text);
    cc.D = parse_rational(config.D_text);
    if (config.m_range) {
      cc.m_lo = config.m_range->first;
      cc.m_hi = config.m_range->second;
    }
    if (cc.m_lo > cc.m_hi)
      throw std::invalid_argument("m-range: lower bound exceeds upper bound");
    cc.times = parse_times(config, {"1/2", "1", "2"});
    const Params probe(cc.p, cc.m_lo, cc.b, cc.D);
    const Thresholds th = thresholds(probe);
    if (cc.m_lo < th.N)
      throw std::invalid_argument("converge requires m >= N(p,b) = " +
                                  std::to_string(th.N));
    if (!config.r_grid.empty()) cc.r_grid = config.r_grid;
    else cc.r_grid = {probe.b() / 2.0};
    if (!config.s_grid.empty()) cc.s_grid = config.s_grid;
    cc.seed = config.seed;
    cc.samples = config.samples;
    cc.workers = config.workers;
    cc.tv_resolution = std::min(2u, cc.m_lo);
    cc.tol = config.tol;
    cc.literal_symbol = config.literal_symbol;

    const ConvergenceReport report = run_convergence(cc);

    Output out = Output::open(config.out);
    report_json(*out.os, report);
    if (config.format == "csv" && !config.out.empty())
      report_csv_tables(config.out, report);
    return report.all_pass ? kExitOk : kExitAssertionFailure;
  } catch (const std::exception& e) {
    emit_error("config", e.what());
    return kExitConfigError;
  }
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

int cmd_selftest(const RunConfig& config) {
  SelftestOptions opts;
  opts.inject_phi_sign_flip = config.inject_phi_flip;
  const SelftestResult result = run_selftest(opts);
  return result.ok() ? kExitOk : kExitAssertionFailure;
}

}  // namespace padic
