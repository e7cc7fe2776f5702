#include "asymptolim/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "asymptolim/errors.hpp"
#include "asymptolim/summation.hpp"

namespace asymptolim {

MeasureFamily canonical_uniform_family() {
  return {[](std::uint64_t n) {
            std::vector<double> values(n);
            for (std::uint64_t i = 1; i <= n; ++i) {
              values[i - 1] = static_cast<double>(i) / static_cast<double>(n);
            }
            return AtomicMeasure::from_values(values);
          },
          "uniform on {i/n : 1 <= i <= n}"};
}

ConvergenceReport cdf_sequence_probe(const MeasureFamily& family, const SmoothCdf& target,
                                     std::span<const double> grid,
                                     std::span<const std::uint64_t> n_list,
                                     const ProbeOptions& options) {
  if (target.dim() != 1) throw DomainError("cdf_sequence_probe: target must be one-dimensional");
  if (grid.empty()) throw DomainError("cdf_sequence_probe: empty grid");
  if (n_list.empty()) throw DomainError("cdf_sequence_probe: empty n list");
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    if (n_list[j] == 0) throw DomainError("cdf_sequence_probe: n must be >= 1");
    if (j > 0 && n_list[j] <= n_list[j - 1]) {
      throw DomainError("cdf_sequence_probe: n list must be strictly increasing");
    }
  }

  ConvergenceReport report;
  report.grid.assign(grid.begin(), grid.end());
  report.n_list.assign(n_list.begin(), n_list.end());

  std::vector<bool> excluded(grid.size(), false);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double x = grid[g];
    report.target_values.push_back(target(x));
    const double jump = target(x + options.jump_step) - target(x - options.jump_step);
    if (std::abs(jump) > options.jump_tol) {
      excluded[g] = true;
      report.excluded.push_back(g);
    }
  }

  report.cdf_values.assign(n_list.size(), std::vector<double>(grid.size(), 0.0));
  parallel_for(
      n_list.size(),
      [&](std::size_t j) {
        const AtomicMeasure m = family.generator(n_list[j]);
        if (m.dim() != 1) throw DomainError("cdf_sequence_probe: family must be one-dimensional");
        for (std::size_t g = 0; g < grid.size(); ++g) report.cdf_values[j][g] = m.cdf(grid[g]);
      },
      options.threads);

  for (std::size_t j = 0; j < n_list.size(); ++j) {
    double sup = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (excluded[g]) continue;
      sup = std::max(sup, std::abs(report.cdf_values[j][g] - report.target_values[g]));
    }
    report.sup_errors.push_back(sup);
  }
  for (std::size_t j = 0; j + 1 < n_list.size(); ++j) {
    report.monotone_decay.push_back(report.sup_errors[j + 1] <= report.sup_errors[j]);
  }
  return report;
}

bool converged(const ConvergenceReport& report, double abs_tol, double decay_fraction) {
  if (report.sup_errors.empty()) return false;
  if (report.sup_errors.back() > abs_tol) return false;
  if (report.monotone_decay.empty()) return true;
  const auto decaying = std::count(report.monotone_decay.begin(), report.monotone_decay.end(), true);
  return static_cast<double>(decaying) >=
         decay_fraction * static_cast<double>(report.monotone_decay.size());
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || lo > hi) {
    throw DomainError("make_grid: need finite lo <= hi and step > 0");
  }
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    // Multiply rather than accumulate so 0.1:0.9:0.1 lands on 0.9.
    const double x = lo + static_cast<double>(i) * step;
    if (x > hi + 1e-9 * std::max(1.0, std::abs(hi))) break;
    grid.push_back(x);
    if (grid.size() > 10'000'000) throw DomainError("make_grid: too many points");
  }
  return grid;
}

std::vector<double> default_unit_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 19; ++i) grid.push_back(i / 20.0);
  return grid;
}

std::complex<double> empirical_charfn(const AtomicMeasure& m, std::span<const double> t) {
  if (t.size() != m.dim()) throw DomainError("empirical_charfn: dimension mismatch");
  CompensatedSum re;
  CompensatedSum im;
  for (const auto& a : m.atoms()) {
    CompensatedSum phase;
    for (std::size_t i = 0; i < t.size(); ++i) phase += t[i] * a.point[i];
    const double p = phase.value();
    re += a.weight * std::cos(p);
    im += a.weight * std::sin(p);
  }
  return {re.value(), im.value()};
}

double charfn_compare(const AtomicMeasure& m, const CharFn& target, std::span<const Point> t_list) {
  double worst = 0.0;
  for (const auto& t : t_list) {
    worst = std::max(worst, std::abs(empirical_charfn(m, t) - target(t)));
  }
  return worst;
}

double charfn_compare(const AtomicMeasure& m,
                      const std::function<std::complex<double>(double)>& target,
                      std::span<const double> t_list) {
  double worst = 0.0;
  for (double t : t_list) {
    worst = std::max(worst, std::abs(empirical_charfn(m, std::span<const double>(&t, 1)) - target(t)));
  }
  return worst;
}

bool continuity_set_check(const ScalarField& target_density, const BoundaryDescription& boundary) {
  if (!target_density) throw DomainError("continuity_set_check: target density required");
  switch (boundary.kind) {
    case BoundaryDescription::Kind::declared_non_null:
      return false;
    case BoundaryDescription::Kind::countable_union:
      return true;
    case BoundaryDescription::Kind::finite_points:
      // A finite density at each point rules out an atom hidden there.
      return std::all_of(boundary.points.begin(), boundary.points.end(),
                         [&](const Point& p) { return std::isfinite(target_density(p)); });
  }
  return false;
}

VariationLimitReport variation_limit_check(std::span<const RealFn> cdf_sequence, const RealFn& limit,
                                           const Partition1D& probe_partition, double tol,
                                           const RefinementControl& control) {
  if (cdf_sequence.empty()) throw DomainError("variation_limit_check: empty sequence");
  VariationLimitReport report;
  for (const auto& phi : cdf_sequence) {
    report.var_n.push_back(variation(phi, probe_partition, control).value);
  }
  report.var_limit = variation(limit, probe_partition, control).value;
  report.converged = std::abs(report.var_n.back() - report.var_limit) <= tol;
  return report;
}

}  // namespace asymptolim
