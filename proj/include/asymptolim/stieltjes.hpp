#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "asymptolim/measure.hpp"
#include "asymptolim/quadrature.hpp"

namespace asymptolim {

using RealFn = std::function<double(double)>;

struct Interval {
  double lo;
  double hi;
};

/// Non-overlapping closed intervals ordered left to right.
class Partition1D {
 public:
  explicit Partition1D(std::vector<Interval> intervals);
  static Partition1D single(double lo, double hi) { return Partition1D({{lo, hi}}); }

  [[nodiscard]] std::span<const Interval> intervals() const noexcept { return intervals_; }

 private:
  std::vector<Interval> intervals_;
};

/// CDF of an atomic measure: a finitely supported step function.
class StepCdf {
 public:
  explicit StepCdf(AtomicMeasure source) : source_(std::move(source)) {}

  [[nodiscard]] const AtomicMeasure& source() const noexcept { return source_; }
  [[nodiscard]] std::size_t dim() const noexcept { return source_.dim(); }

  double operator()(double x) const { return source_.cdf(x); }
  double operator()(std::span<const double> x) const { return source_.cdf(x); }

  /// Smallest closed box holding every atom.
  [[nodiscard]] HyperBox atom_hull() const;

 private:
  AtomicMeasure source_;
};

/// A limit CDF given by callbacks. `density` is phi' in 1D and the mixed
/// partial d^k phi / dx_1 ... dx_k in kD. Outside `support` the CDF is
/// extended by constants: 0 below, and the value at the clamped point above.
struct SmoothCdf {
  ScalarField value;
  std::optional<ScalarField> density;
  HyperBox support;

  /// 1D constructor from scalar callbacks on [lo, hi].
  static SmoothCdf on_interval(RealFn value, std::optional<RealFn> density, double lo, double hi);
  /// Uniform law on [lo, hi].
  static SmoothCdf uniform(double lo = 0.0, double hi = 1.0);

  [[nodiscard]] std::size_t dim() const noexcept { return support.dim(); }
  /// Value with the constant extension applied outside the support.
  [[nodiscard]] double operator()(std::span<const double> x) const;
  [[nodiscard]] double operator()(double x) const;
};

/// Alternating sum of phi over the 2^k vertices of a finite box: vertices
/// taking the lower bound in j coordinates carry sign (-1)^j.
double delta_box(const ScalarField& phi, const HyperBox& box);

struct RefinementControl {
  double tol = 1e-12;
  int min_level = 4;
  int max_level = 24;
};

struct VariationResult {
  double value = 0.0;
  int level = 0;
};

/// Total variation of phi on [lo, hi] estimated on nested dyadic partitions.
/// Each level is a lower bound of the true variation; iteration stops once
/// two successive levels agree to tol * max(1, value). Throws NumericalError
/// ("variation did not stabilize") past max_level.
VariationResult variation(const RealFn& phi, Interval domain, const RefinementControl& control = {});
VariationResult variation(const RealFn& phi, const Partition1D& partition,
                          const RefinementControl& control = {});
/// Variation of a step CDF over a window enclosing all atoms.
VariationResult variation(const StepCdf& cdf, const RefinementControl& control = {});

/// Multidimensional (Vitali) variation: sums of |delta_box| over dyadic grids
/// of a finite box, refined until stable.
VariationResult variation_nd(const ScalarField& phi, const HyperBox& box,
                             const RefinementControl& control = {});

/// Integral of f against a step CDF: the weighted sum over atoms.
double integrate_step(const ScalarField& f, const StepCdf& cdf);
double integrate_step(const RealFn& f, const StepCdf& cdf);

/// Integral of f d(phi) over `box`, reduced to f * density and integrated by
/// adaptive Gauss-Kronrod (tensorized in kD). Requires phi.density.
QuadratureResult integrate_smooth(const ScalarField& f, const SmoothCdf& phi, const HyperBox& box,
                                  const QuadratureOptions& options = {});
QuadratureResult integrate_smooth(const RealFn& f, const SmoothCdf& phi, double lo, double hi,
                                  const QuadratureOptions& options = {});

/// [f phi] from lo to hi minus the integral of phi f'. Both endpoints must be
/// finite; phi is extended by constants outside them.
QuadratureResult integrate_by_parts(const RealFn& f, const RealFn& f_prime, const RealFn& phi,
                                    Interval domain, const QuadratureOptions& options = {});

/// Raw Riemann-Stieltjes sums sum f(mid) * (phi(right) - phi(left)) on the
/// uniform partitions with 2^level cells, for level = 0..levels.
std::vector<double> riemann_stieltjes_oracle(const RealFn& f, const RealFn& phi, Interval domain,
                                             int levels);

/// kD analogue on uniform grids of a finite box, with delta_box increments.
std::vector<double> riemann_stieltjes_oracle_nd(const ScalarField& f, const ScalarField& phi,
                                                const HyperBox& box, int levels);

}  // namespace asymptolim
