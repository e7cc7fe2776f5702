#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "asymptolim/cli.hpp"
#include "asymptolim/convergence.hpp"
#include "asymptolim/errors.hpp"

namespace asymptolim::cli {

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::probe: return "probe";
    case Command::integrate: return "integrate";
    case Command::special: return "special";
  }
  return "solve";
}

Command command_from_name(const std::string& name) {
  if (name == "solve") return Command::solve;
  if (name == "probe" || name == "sweep") return Command::probe;
  if (name == "integrate") return Command::integrate;
  if (name == "special") return Command::special;
  throw DomainError("unknown command '" + name + "'");
}

const char* format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat format_from_name(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw DomainError("unknown output format '" + name + "'");
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("malformed number '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw DomainError("malformed number '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    parts.push_back(item);
  }
  return parts;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_real(p));
  return out;
}

const std::set<std::string>& solve_problems() {
  static const std::set<std::string> ids = {"example1", "example2", "example3", "example4",
                                            "dirichlet", "poly", "canonical-uniform"};
  return ids;
}

const std::set<std::string>& probe_problems() {
  static const std::set<std::string> ids = {"example1", "example2", "example3", "example4",
                                            "canonical-uniform"};
  return ids;
}

const std::set<std::string>& special_functions() {
  static const std::set<std::string> ids = {"digamma",      "trigamma",     "hurwitz",
                                            "harmonic",     "frac-cdf",     "frac-density",
                                            "frac-series",  "euler-gamma"};
  return ids;
}

const std::set<std::string>& integrate_laws() {
  static const std::set<std::string> ids = {"uniform", "frac-limit", "root", "arcsine"};
  return ids;
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = command_name(c.command);
  j["problem"] = c.problem;
  j["n"] = c.n;
  j["grid"] = c.grid;
  j["tolerance"] = c.tolerance;
  j["output_format"] = format_name(c.output_format);
  j["output_path"] = optional_json(c.output_path);
  j["threads"] = optional_json(c.threads);
  j["f"] = c.f;
  j["f_coeffs"] = c.f_coeffs;
  j["t"] = optional_json(c.t);
  j["lo"] = optional_json(c.lo);
  j["hi"] = optional_json(c.hi);
  j["x"] = optional_json(c.x);
  j["s"] = optional_json(c.s);
  j["p_coeffs"] = c.p_coeffs;
  j["norm_r"] = c.norm_r;
  j["norm_b"] = c.norm_b;
  j["k_max"] = c.k_max;
  j["method"] = c.method;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.command = command_from_name(j.at("command").get<std::string>());
    c.problem = j.at("problem").get<std::string>();
    c.n = j.at("n").get<std::vector<std::uint64_t>>();
    c.grid = j.at("grid").get<std::vector<double>>();
    c.tolerance = j.at("tolerance").get<double>();
    c.output_format = format_from_name(j.at("output_format").get<std::string>());
    c.output_path = optional_from<std::string>(j, "output_path");
    c.threads = optional_from<unsigned>(j, "threads");
    c.f = j.at("f").get<std::string>();
    c.f_coeffs = j.at("f_coeffs").get<std::vector<double>>();
    c.t = optional_from<double>(j, "t");
    c.lo = optional_from<double>(j, "lo");
    c.hi = optional_from<double>(j, "hi");
    c.x = optional_from<double>(j, "x");
    c.s = optional_from<double>(j, "s");
    c.p_coeffs = j.at("p_coeffs").get<std::vector<double>>();
    c.norm_r = j.at("norm_r").get<int>();
    c.norm_b = j.at("norm_b").get<double>();
    c.k_max = j.at("k_max").get<int>();
    c.method = j.at("method").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  return c;
}

NamedFunction lookup_function(const std::string& name, const std::vector<double>& coeffs) {
  if (name == "sin") return {[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); }};
  if (name == "cos") return {[](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); }};
  if (name == "id") return {[](double t) { return t; }, [](double) { return 1.0; }};
  if (name == "const1") return {[](double) { return 1.0; }, [](double) { return 0.0; }};
  if (name == "poly") {
    if (coeffs.empty()) throw DomainError("f = poly requires --f-coeffs");
    std::vector<double> d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(static_cast<double>(i) * coeffs[i]);
    auto horner = [](const std::vector<double>& c) {
      return [c](double t) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
        return acc;
      };
    };
    return {horner(coeffs), horner(d)};
  }
  throw DomainError("unknown function '" + name + "' (expected sin, cos, id, const1, poly)");
}

std::vector<double> parse_grid(const std::string& text) {
  if (text.find_first_not_of(" \t") == std::string::npos) throw DomainError("empty grid");
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw DomainError("grid range must be lo:hi:step");
    return make_grid(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
  }
  return parse_reals(text);
}

std::vector<std::uint64_t> parse_n_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& p : split(text, ',')) {
    const double v = parse_real(p);
    if (v < 1.0 || v != std::floor(v) || v > 4.5e15) {
      throw DomainError("n must be a positive integer, got '" + p + "'");
    }
    out.push_back(static_cast<std::uint64_t>(v));
  }
  if (out.empty()) throw DomainError("empty n list");
  return out;
}

void validate(const RunConfig& c) {
  if (!(c.tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  for (auto n : c.n) {
    if (n < 1) throw DomainError("n must be >= 1");
  }
  if (c.threads && *c.threads == 0) throw DomainError("threads must be >= 1");
  switch (c.command) {
    case Command::solve:
      if (!solve_problems().count(c.problem)) throw DomainError("unknown problem id '" + c.problem + "'");
      if (c.n.empty()) throw DomainError("solve requires --n");
      break;
    case Command::probe: {
      if (!probe_problems().count(c.problem)) throw DomainError("unknown problem id '" + c.problem + "'");
      if (c.n.empty()) throw DomainError("sweep requires --n");
      for (std::size_t i = 1; i < c.n.size(); ++i) {
        if (c.n[i] <= c.n[i - 1]) throw DomainError("n list must be strictly increasing");
      }
      if (c.grid.empty()) throw DomainError("empty grid");
      const double lo = c.problem == "example2" ? -1.0 : 0.0;
      for (double g : c.grid) {
        if (!(g >= lo && g <= 1.0)) throw DomainError("grid point outside the problem's domain");
      }
      break;
    }
    case Command::integrate:
      if (!integrate_laws().count(c.problem)) throw DomainError("unknown limit law '" + c.problem + "'");
      if (c.method != "density" && c.method != "by-parts" && c.method != "oracle") {
        throw DomainError("unknown integration method '" + c.method + "'");
      }
      break;
    case Command::special:
      if (!special_functions().count(c.problem)) {
        throw DomainError("unknown special function '" + c.problem + "'");
      }
      break;
  }
  if (c.f != "sin" && c.f != "cos" && c.f != "id" && c.f != "const1" && c.f != "poly") {
    throw DomainError("unknown function '" + c.f + "'");
  }
  if (c.f == "poly" && c.f_coeffs.empty()) throw DomainError("f = poly requires --f-coeffs");
}

unsigned effective_threads(const RunConfig& c) {
  if (c.threads) return *c.threads;
  if (const char* env = std::getenv("ASYMPTOLIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

RunConfig parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"asymptolim: limits of sums via convergence in distribution"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string problem;
  std::string n_text;
  std::string grid_text;
  bool grid_given = false;
  double tolerance = 1e-9;
  std::string format = "json";
  std::string output;
  unsigned threads = 0;
  std::string f = "id";
  std::string f_coeffs_text;
  std::string p_coeffs_text;
  double t = 0, lo = 0, hi = 0, x = 0, s = 0, b = 1.0;
  int r = 1;
  int k_max = 60;
  std::string method = "density";

  std::vector<CLI::App*> subs;
  subs.push_back(app.add_subcommand("solve", "Solve a worked limit problem at finite n"));
  subs.push_back(app.add_subcommand("sweep", "Probe CDF convergence across an n-sweep"));
  subs.back()->alias("probe");
  subs.push_back(app.add_subcommand("integrate", "Stieltjes integral against a limit law"));
  subs.push_back(app.add_subcommand("special", "Evaluate a special function"));

  std::vector<CLI::Option*> t_opt, lo_opt, hi_opt, x_opt, s_opt, out_opt, threads_opt, grid_opt;
  for (auto* sub : subs) {
    sub->add_option("problem", problem, "Problem id, law id, or function name")->required();
    sub->add_option("--n", n_text, "n or comma-separated n list");
    grid_opt.push_back(sub->add_option("--grid", grid_text, "lo:hi:step or comma list"));
    sub->add_option("--tol,--tolerance", tolerance, "Absolute tolerance");
    sub->add_option("--format", format, "json or csv");
    out_opt.push_back(sub->add_option("--output", output, "Write the report to a file"));
    threads_opt.push_back(sub->add_option("--threads", threads, "Worker threads"));
    sub->add_option("--f", f, "Integrand: sin, cos, id, const1, poly");
    sub->add_option("--f-coeffs", f_coeffs_text, "Coefficients of f = poly, constant first");
    t_opt.push_back(sub->add_option("--t", t, "CDF threshold"));
    lo_opt.push_back(sub->add_option("--lo", lo, "Lower bound"));
    hi_opt.push_back(sub->add_option("--hi", hi, "Upper bound"));
    x_opt.push_back(sub->add_option("--x", x, "Argument"));
    s_opt.push_back(sub->add_option("--s", s, "Hurwitz zeta exponent"));
    sub->add_option("--coeffs", p_coeffs_text, "Coefficients of P, constant first");
    sub->add_option("--r", r, "Normalizer exponent");
    sub->add_option("--b", b, "Normalizer coefficient");
    sub->add_option("--k", k_max, "Series truncation order");
    sub->add_option("--method", method, "density, by-parts, or oracle");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e);
    throw;
  } catch (const CLI::ParseError& e) {
    throw DomainError(e.what());
  }

  RunConfig c;
  CLI::App* chosen = app.get_subcommands().front();
  const std::size_t idx = static_cast<std::size_t>(
      std::find(subs.begin(), subs.end(), chosen) - subs.begin());
  c.command = command_from_name(chosen->get_name());
  c.problem = problem;
  if (!n_text.empty()) c.n = parse_n_list(n_text);
  grid_given = grid_opt[idx]->count() > 0;
  if (grid_given) {
    c.grid = parse_grid(grid_text);
  } else if (c.command == Command::probe) {
    c.grid = problem == "example2" ? make_grid(-0.9, 0.9, 0.1) : default_unit_grid();
  }
  c.tolerance = tolerance;
  c.output_format = format_from_name(format);
  if (out_opt[idx]->count() > 0) c.output_path = output;
  if (threads_opt[idx]->count() > 0) c.threads = threads;
  c.f = f;
  if (!f_coeffs_text.empty()) c.f_coeffs = parse_reals(f_coeffs_text);
  if (!p_coeffs_text.empty()) c.p_coeffs = parse_reals(p_coeffs_text);
  if (t_opt[idx]->count() > 0) c.t = t;
  if (lo_opt[idx]->count() > 0) c.lo = lo;
  if (hi_opt[idx]->count() > 0) c.hi = hi;
  if (x_opt[idx]->count() > 0) c.x = x;
  if (s_opt[idx]->count() > 0) c.s = s;
  c.norm_r = r;
  c.norm_b = b;
  c.k_max = k_max;
  c.method = method;
  validate(c);
  return c;
}

}  // namespace asymptolim::cli
