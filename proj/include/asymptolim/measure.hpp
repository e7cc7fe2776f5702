#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace asymptolim {

using Point = std::vector<double>;

/// Map from R^k to R^v.
using VectorMap = std::function<Point(std::span<const double>)>;
/// Map from R^k to R.
using ScalarField = std::function<double(std::span<const double>)>;

/// Axis-aligned box {x : lower[i] < x[i] <= upper[i] for all i}.
/// Lower entries may be -inf and upper entries +inf.
class HyperBox {
 public:
  HyperBox(Point lower, Point upper);

  /// 1D interval (lo, hi].
  static HyperBox interval(double lo, double hi);
  /// (-inf, x] in every coordinate.
  static HyperBox orthant(std::span<const double> x);

  [[nodiscard]] std::size_t dim() const noexcept { return lower_.size(); }
  [[nodiscard]] const Point& lower() const noexcept { return lower_; }
  [[nodiscard]] const Point& upper() const noexcept { return upper_; }
  [[nodiscard]] bool contains(std::span<const double> x) const;
  [[nodiscard]] bool is_finite() const noexcept;

 private:
  Point lower_;
  Point upper_;
};

struct Atom {
  Point point;
  double weight;
};

/// A probability concentrated on finitely many points of R^k.
///
/// Atoms are stored folded (no two share a bit-identical point) and sorted
/// lexicographically, so every evaluation is independent of the order in
/// which the multiset was supplied. `multiset_size()` keeps the count of the
/// input multiset before folding.
class AtomicMeasure {
 public:
  /// Uniform weights 1/size when `weights` is empty.
  static AtomicMeasure from_points(std::span<const Point> points,
                                   std::span<const double> weights = {});
  /// One-dimensional convenience overload.
  static AtomicMeasure from_values(std::span<const double> values,
                                   std::span<const double> weights = {});

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t multiset_size() const noexcept { return multiset_size_; }
  [[nodiscard]] std::span<const Atom> atoms() const noexcept { return atoms_; }
  [[nodiscard]] double total_weight() const;

  /// Sum of weights of atoms in `box` (lower bound exclusive).
  [[nodiscard]] double measure_box(const HyperBox& box) const;
  /// Cumulative distribution: the measure of (-inf, x].
  [[nodiscard]] double cdf(std::span<const double> x) const;
  [[nodiscard]] double cdf(double x) const;

  /// Image measure under g. Weights are inherited and equal images folded.
  [[nodiscard]] AtomicMeasure pushforward(const VectorMap& g) const;
  [[nodiscard]] AtomicMeasure pushforward(const std::function<double(double)>& g) const;

  /// Sum of weight * f(point), per output component, compensated.
  [[nodiscard]] Point expectation(const VectorMap& f) const;
  [[nodiscard]] double expectation(const ScalarField& f) const;
  [[nodiscard]] double expectation(const std::function<double(double)>& f) const;

 private:
  AtomicMeasure(std::size_t dim, std::size_t multiset_size, std::vector<Atom> atoms);
  static AtomicMeasure build(std::size_t dim, std::vector<Atom> raw, std::size_t multiset_size);

  std::size_t dim_ = 0;
  std::size_t multiset_size_ = 0;
  std::vector<Atom> atoms_;
  // 1D only: cumulative weights aligned with atoms_, for O(log n) cdf.
  std::vector<double> cumulative_;
};

}  // namespace asymptolim
