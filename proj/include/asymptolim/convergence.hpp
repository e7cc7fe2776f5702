#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "asymptolim/measure.hpp"
#include "asymptolim/stieltjes.hpp"

namespace asymptolim {

/// The sequence (mu_n) of atomic measures indexed by n >= 1.
struct MeasureFamily {
  std::function<AtomicMeasure(std::uint64_t)> generator;
  std::string description;
};

/// n -> uniform measure on {i/n : 1 <= i <= n}.
MeasureFamily canonical_uniform_family();

struct ConvergenceReport {
  std::vector<double> grid;
  std::vector<std::uint64_t> n_list;
  /// cdf_values[j][g]: CDF of the j-th measure at grid[g].
  std::vector<std::vector<double>> cdf_values;
  std::vector<double> target_values;
  /// Sup over the non-excluded grid points of |cdf - target|, per n.
  std::vector<double> sup_errors;
  /// monotone_decay[j] is sup_errors[j+1] <= sup_errors[j].
  std::vector<bool> monotone_decay;
  /// Grid indices where the target appears to jump; left out of sup_errors.
  std::vector<std::size_t> excluded;
};

struct ProbeOptions {
  /// Half-width of the jump detector target(x+h) - target(x-h).
  double jump_step = 1e-9;
  double jump_tol = 1e-6;
  unsigned threads = 1;
};

/// CDFs of the family on a grid across an n-sweep, compared with the target
/// CDF. Non-decay is recorded but does not fail the probe.
ConvergenceReport cdf_sequence_probe(const MeasureFamily& family, const SmoothCdf& target,
                                     std::span<const double> grid,
                                     std::span<const std::uint64_t> n_list,
                                     const ProbeOptions& options = {});

/// Verdict on a report: the last sup error is at most abs_tol and at least
/// decay_fraction of the consecutive steps are non-increasing.
bool converged(const ConvergenceReport& report, double abs_tol, double decay_fraction = 0.8);

/// Evenly spaced points lo, lo+step, ..., up to hi (inclusive within 1e-9).
std::vector<double> make_grid(double lo, double hi, double step);
/// 0.05, 0.10, ..., 0.95.
std::vector<double> default_unit_grid();

using CharFn = std::function<std::complex<double>(std::span<const double>)>;

/// Empirical characteristic function sum w exp(i <t, e>).
std::complex<double> empirical_charfn(const AtomicMeasure& m, std::span<const double> t);

/// Max over t of |empirical_charfn(m, t) - target(t)|.
double charfn_compare(const AtomicMeasure& m, const CharFn& target, std::span<const Point> t_list);
double charfn_compare(const AtomicMeasure& m,
                      const std::function<std::complex<double>(double)>& target,
                      std::span<const double> t_list);

/// Caller-declared structure of a set's boundary. Null-ness of an arbitrary
/// Borel boundary is undecidable here; the caller states what it is.
struct BoundaryDescription {
  enum class Kind {
    finite_points,      ///< `points` lists the whole boundary
    countable_union,    ///< countably many points, e.g. {1/m, 1/(m+t)}
    declared_non_null,  ///< e.g. an interval
  };
  Kind kind = Kind::finite_points;
  std::vector<Point> points;
  std::string description;
};

/// A set is a continuity set of an absolutely continuous measure when its
/// boundary is finite or countable. Requires a density and a finite density
/// value at every listed boundary point.
bool continuity_set_check(const ScalarField& target_density, const BoundaryDescription& boundary);

struct VariationLimitReport {
  std::vector<double> var_n;
  double var_limit = 0.0;
  bool converged = false;
};

/// Variations of phi_n and of the limit on the same probe partition;
/// converged when |var_n.back() - var_limit| <= tol.
VariationLimitReport variation_limit_check(std::span<const RealFn> cdf_sequence, const RealFn& limit,
                                           const Partition1D& probe_partition, double tol = 1e-9,
                                           const RefinementControl& control = {});

}  // namespace asymptolim
