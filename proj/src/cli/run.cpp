#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "asymptolim/cli.hpp"
#include "asymptolim/convergence.hpp"
#include "asymptolim/errors.hpp"
#include "asymptolim/problems.hpp"
#include "asymptolim/special.hpp"

namespace asymptolim::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json solve_json(const SolveResult& r) {
  Json j;
  j["n"] = r.n;
  j["empirical"] = r.empirical;
  if (r.verdict == Verdict::divergent) {
    j["closed_form"] = "+inf";
    j["abs_error"] = "+inf";
  } else {
    j["closed_form"] = r.closed_form;
    j["abs_error"] = r.abs_error;
  }
  j["verdict"] = r.verdict == Verdict::divergent ? "divergent" : "finite";
  j["meta"] = r.meta;
  return j;
}

SolveResult solve_one(const RunConfig& c, std::uint64_t n, unsigned threads) {
  const std::string& id = c.problem;
  if (id == "example1") return sequence_average(n, lookup_function(c.f, c.f_coeffs).f, threads);
  if (id == "example2") {
    return interval_proportion_sin(n, c.lo.value_or(-0.5), c.hi.value_or(0.5), threads);
  }
  if (id == "example3") return frac_n_over_i_cdf(n, c.t.value_or(0.5), threads);
  if (id == "example4") {
    if (c.f == "id") return frac_n_over_i_mean(n, std::nullopt, threads);
    return frac_n_over_i_mean(n, lookup_function(c.f, c.f_coeffs).f, threads);
  }
  if (id == "dirichlet") return dirichlet_weak(n, threads);
  if (id == "poly") {
    if (c.p_coeffs.empty()) throw DomainError("poly requires --coeffs");
    PolySpec spec{c.p_coeffs, c.norm_r, c.norm_b, lookup_function(c.f, c.f_coeffs).f};
    return polynomial_family(spec, n, threads);
  }
  if (id == "canonical-uniform") {
    const RealFn f = lookup_function(c.f, c.f_coeffs).f;
    const auto m = canonical_uniform_family().generator(n);
    QuadratureOptions opts;
    opts.abs_tol = c.tolerance;
    const double limit = integrate_smooth(f, SmoothCdf::uniform(), 0.0, 1.0, opts).value;
    const double empirical = m.expectation(f);
    return {empirical, limit, std::abs(empirical - limit), n,
            "(1/n) sum f(i/n) vs integral of f over [0,1]", Verdict::finite};
  }
  throw DomainError("unknown problem id '" + id + "'");
}

struct ProbeSetup {
  MeasureFamily family;
  SmoothCdf target;
};

ProbeSetup probe_setup(const std::string& id) {
  if (id == "canonical-uniform") return {canonical_uniform_family(), SmoothCdf::uniform()};
  if (id == "example1") return {sqrt_frac_family(), SmoothCdf::uniform()};
  if (id == "example2") return {sin_sqrt_frac_family(), arcsine_law()};
  if (id == "example3" || id == "example4") return {frac_n_over_i_family(), frac_limit_law()};
  throw DomainError("unknown problem id '" + id + "'");
}

SmoothCdf law_for(const RunConfig& c) {
  if (c.problem == "uniform") return SmoothCdf::uniform();
  if (c.problem == "frac-limit") return frac_limit_law();
  if (c.problem == "arcsine") return arcsine_law();
  if (c.problem == "root") {
    if (c.norm_r < 1) throw DomainError("root law requires --r >= 1");
    const double inv_q = 1.0 / c.norm_r;
    return SmoothCdf::on_interval(
        [inv_q](double x) { return std::pow(std::max(x, 0.0), inv_q); },
        RealFn([inv_q](double x) { return inv_q * std::pow(x, inv_q - 1.0); }), 0.0, 1.0);
  }
  throw DomainError("unknown limit law '" + c.problem + "'");
}

double require_arg(const std::optional<double>& v, const char* flag) {
  if (!v) throw DomainError(std::string("missing ") + flag);
  return *v;
}

void emit_csv_header(std::ostream& out, const RunConfig& c) {
  out << "# schema=" << kSchema << " version=" << kVersion << " config=" << to_json(c).dump() << "\n";
}

void run_solve(const RunConfig& c, unsigned threads, Json& report, std::ostream& csv) {
  Json results = Json::array();
  csv << "problem,n,empirical,closed_form,abs_error,verdict\n";
  for (auto n : c.n) {
    const SolveResult r = solve_one(c, n, threads);
    results.push_back(solve_json(r));
    csv << c.problem << ',' << r.n << ',' << fmt17(r.empirical) << ','
        << (r.verdict == Verdict::divergent ? "inf" : fmt17(r.closed_form)) << ','
        << (r.verdict == Verdict::divergent ? "inf" : fmt17(r.abs_error)) << ','
        << (r.verdict == Verdict::divergent ? "divergent" : "finite") << "\n";
  }
  report["results"] = std::move(results);
}

void run_probe(const RunConfig& c, unsigned threads, Json& report, std::ostream& csv) {
  const ProbeSetup setup = probe_setup(c.problem);
  ProbeOptions opts;
  opts.threads = threads;
  const ConvergenceReport r = cdf_sequence_probe(setup.family, setup.target, c.grid, c.n, opts);
  Json j;
  j["description"] = setup.family.description;
  j["grid"] = r.grid;
  j["n_list"] = r.n_list;
  j["cdf_values"] = r.cdf_values;
  j["target_values"] = r.target_values;
  j["sup_errors"] = r.sup_errors;
  Json decay = Json::array();
  for (bool b : r.monotone_decay) decay.push_back(b);
  j["monotone_decay"] = std::move(decay);
  j["excluded"] = r.excluded;
  j["converged"] = converged(r, c.tolerance);
  report["result"] = std::move(j);

  csv << "n,x,cdf,target,abs_error,sup_error,excluded\n";
  for (std::size_t k = 0; k < r.n_list.size(); ++k) {
    for (std::size_t g = 0; g < r.grid.size(); ++g) {
      const bool excluded = std::find(r.excluded.begin(), r.excluded.end(), g) != r.excluded.end();
      csv << r.n_list[k] << ',' << fmt17(r.grid[g]) << ',' << fmt17(r.cdf_values[k][g]) << ','
          << fmt17(r.target_values[g]) << ','
          << fmt17(std::abs(r.cdf_values[k][g] - r.target_values[g])) << ','
          << fmt17(r.sup_errors[k]) << ',' << (excluded ? 1 : 0) << "\n";
    }
  }
}

void run_integrate(const RunConfig& c, Json& report, std::ostream& csv) {
  const SmoothCdf law = law_for(c);
  const double lo = c.lo.value_or(law.support.lower()[0]);
  const double hi = c.hi.value_or(law.support.upper()[0]);
  const NamedFunction fn = lookup_function(c.f, c.f_coeffs);
  QuadratureOptions opts;
  opts.abs_tol = c.tolerance;
  Json j;
  j["law"] = c.problem;
  j["method"] = c.method;
  j["lo"] = lo;
  j["hi"] = hi;
  csv << "quantity,value\n";
  if (c.method == "oracle") {
    const int levels = std::min(c.k_max, 24);
    const auto sums = riemann_stieltjes_oracle(fn.f, [&law](double t) { return law(t); },
                                               Interval{lo, hi}, levels);
    j["value"] = sums.back();
    j["sums"] = sums;
    csv << "value," << fmt17(sums.back()) << "\n";
  } else {
    const QuadratureResult r =
        c.method == "by-parts"
            ? integrate_by_parts(fn.f, fn.derivative, [&law](double t) { return law(t); },
                                 Interval{lo, hi}, opts)
            : integrate_smooth(fn.f, law, lo, hi, opts);
    j["value"] = r.value;
    j["error"] = r.error;
    j["panels"] = r.panels;
    csv << "value," << fmt17(r.value) << "\nerror," << fmt17(r.error) << "\n";
  }
  report["result"] = std::move(j);
}

void run_special(const RunConfig& c, Json& report, std::ostream& csv) {
  const std::string& name = c.problem;
  Json j;
  j["function"] = name;
  double value = 0.0;
  // The limit-law functions take a threshold; --t and --x are both accepted.
  const std::optional<double> t = c.t ? c.t : c.x;
  if (name == "digamma") {
    value = digamma(require_arg(c.x, "--x"));
  } else if (name == "trigamma") {
    value = trigamma(require_arg(c.x, "--x"));
  } else if (name == "hurwitz") {
    value = hurwitz_zeta(require_arg(c.s, "--s"), require_arg(c.x, "--x"));
  } else if (name == "harmonic") {
    if (c.n.empty()) throw DomainError("missing --n");
    value = harmonic(c.n.front());
  } else if (name == "frac-cdf") {
    value = frac_limit_cdf(require_arg(t, "--t"));
  } else if (name == "frac-density") {
    value = frac_limit_density(require_arg(t, "--t"));
  } else if (name == "frac-series") {
    const SeriesValue sv = frac_limit_cdf_series(require_arg(t, "--t"), c.k_max);
    value = sv.value;
    j["truncation_bound"] = sv.truncation_bound;
  } else if (name == "euler-gamma") {
    value = constants::euler_gamma;
  } else {
    throw DomainError("unknown special function '" + name + "'");
  }
  j["value"] = value;
  csv << "function,value\n" << name << ',' << fmt17(value) << "\n";
  report["result"] = std::move(j);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream body;
  try {
    validate(config);
    const unsigned threads = effective_threads(config);
    Json report;
    report["schema"] = kSchema;
    report["version"] = kVersion;
    report["timestamp"] = utc_timestamp();
    report["config"] = to_json(config);

    std::ostringstream csv;
    emit_csv_header(csv, config);
    switch (config.command) {
      case Command::solve: run_solve(config, threads, report, csv); break;
      case Command::probe: run_probe(config, threads, report, csv); break;
      case Command::integrate: run_integrate(config, report, csv); break;
      case Command::special: run_special(config, report, csv); break;
    }
    if (config.output_format == OutputFormat::json) {
      body << report.dump(2) << "\n";
    } else {
      body << csv.str();
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::validation);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return static_cast<int>(ExitCode::numerical);
  }

  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot write '" << *config.output_path << "'\n";
      return static_cast<int>(ExitCode::validation);
    }
    file << body.str();
    if (!file.flush()) {
      err << "error: cannot write '" << *config.output_path << "'\n";
      return static_cast<int>(ExitCode::validation);
    }
  } else {
    out << body.str();
  }
  return static_cast<int>(ExitCode::ok);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_command_line(argc, argv);
  } catch (const CLI::Success&) {
    // --help / --version: CLI11 prints these itself.
    return static_cast<int>(ExitCode::ok);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::validation);
  }
  return run(config, out, err);
}

}  // namespace asymptolim::cli
