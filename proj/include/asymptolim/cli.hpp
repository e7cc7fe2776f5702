#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptolim/stieltjes.hpp"

namespace asymptolim::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

enum class ExitCode : int {
  ok = 0,
  validation = 2,
  numerical = 3,
};

enum class Command { solve, probe, integrate, special };
enum class OutputFormat { json, csv };

struct RunConfig {
  Command command = Command::solve;
  /// Problem id, special-function name, or limit-law id for `integrate`.
  std::string problem;
  std::vector<std::uint64_t> n;
  std::vector<double> grid;
  double tolerance = 1e-9;
  OutputFormat output_format = OutputFormat::json;
  std::optional<std::string> output_path;
  std::optional<unsigned> threads;

  /// Named integrand from the registry and its coefficients (for `poly`).
  std::string f = "id";
  std::vector<double> f_coeffs;
  std::optional<double> t;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<double> x;
  std::optional<double> s;
  std::vector<double> p_coeffs;
  int norm_r = 1;
  double norm_b = 1.0;
  int k_max = 60;
  /// `integrate` only: density, by-parts, or oracle.
  std::string method = "density";

  bool operator==(const RunConfig&) const = default;
};

nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// An integrand with its derivative, selected by name.
struct NamedFunction {
  RealFn f;
  RealFn derivative;
};

/// Registry: sin, cos, id, const1, poly (coefficients constant term first).
NamedFunction lookup_function(const std::string& name, const std::vector<double>& coeffs = {});

/// "a:b:step" or a comma-separated list. Throws DomainError when malformed.
std::vector<double> parse_grid(const std::string& text);
/// Comma-separated positive integers; accepts 1e6-style literals.
std::vector<std::uint64_t> parse_n_list(const std::string& text);

/// Parses argv into a validated config. Throws DomainError on bad input.
RunConfig parse_command_line(int argc, const char* const* argv);

/// Checks invariants of a config (n >= 1, tolerance > 0, known problem,
/// grid inside the problem's domain). Throws DomainError.
void validate(const RunConfig& config);

/// Thread count from the config, else ASYMPTOLIM_THREADS, else 1.
unsigned effective_threads(const RunConfig& config);

/// Executes the config and writes the report to `out` (or output_path).
/// Returns the process exit code; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line + run with exit-code mapping.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asymptolim::cli
