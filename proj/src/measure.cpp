#include "asymptolim/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "asymptolim/errors.hpp"
#include "asymptolim/summation.hpp"

namespace asymptolim {

HyperBox::HyperBox(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw DomainError("HyperBox: dimension must be positive");
  if (lower_.size() != upper_.size()) throw DomainError("HyperBox: lower/upper dimension mismatch");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (std::isnan(lower_[i]) || std::isnan(upper_[i])) throw DomainError("HyperBox: NaN bound");
    if (lower_[i] > upper_[i]) throw DomainError("HyperBox: lower bound exceeds upper bound");
  }
}

HyperBox HyperBox::interval(double lo, double hi) { return HyperBox({lo}, {hi}); }

HyperBox HyperBox::orthant(std::span<const double> x) {
  return HyperBox(Point(x.size(), -std::numeric_limits<double>::infinity()),
                  Point(x.begin(), x.end()));
}

bool HyperBox::contains(std::span<const double> x) const {
  if (x.size() != dim()) throw DomainError("HyperBox::contains: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(lower_[i] < x[i] && x[i] <= upper_[i])) return false;
  }
  return true;
}

bool HyperBox::is_finite() const noexcept {
  return std::all_of(lower_.begin(), lower_.end(), [](double v) { return std::isfinite(v); }) &&
         std::all_of(upper_.begin(), upper_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

// Orders points by the raw bit patterns of their coordinates; two points are
// equivalent under this order exactly when they are bit-identical.
bool bitwise_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [](double x, double y) {
        return std::bit_cast<std::uint64_t>(x) < std::bit_cast<std::uint64_t>(y);
      });
}

bool bitwise_equal(const Point& a, const Point& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](double x, double y) {
    return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
  });
}

void require_finite_point(const Point& p, const char* where) {
  for (double v : p) {
    if (!std::isfinite(v)) throw NumericalError(std::string(where) + ": non-finite coordinate");
  }
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::size_t dim, std::size_t multiset_size, std::vector<Atom> atoms)
    : dim_(dim), multiset_size_(multiset_size), atoms_(std::move(atoms)) {
  if (dim_ == 1) {
    cumulative_.reserve(atoms_.size());
    CompensatedSum acc;
    for (const auto& a : atoms_) {
      acc += a.weight;
      cumulative_.push_back(acc.value());
    }
  }
}

AtomicMeasure AtomicMeasure::build(std::size_t dim, std::vector<Atom> raw,
                                   std::size_t multiset_size) {
  // Sorting ties by weight makes the folded sums independent of input order.
  std::sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) {
    if (bitwise_less(a.point, b.point)) return true;
    if (bitwise_less(b.point, a.point)) return false;
    return a.weight < b.weight;
  });

  std::vector<Atom> folded;
  CompensatedSum total;
  for (std::size_t i = 0; i < raw.size();) {
    CompensatedSum w;
    std::size_t j = i;
    for (; j < raw.size() && bitwise_equal(raw[j].point, raw[i].point); ++j) w += raw[j].weight;
    const double weight = w.value();
    total += weight;
    if (weight > 0.0) folded.push_back({std::move(raw[i].point), weight});
    i = j;
  }
  const double norm = total.value();
  if (!(norm > 0.0)) throw DomainError("AtomicMeasure: all weights are zero");
  for (auto& a : folded) a.weight /= norm;

  std::stable_sort(folded.begin(), folded.end(), [](const Atom& a, const Atom& b) {
    return std::lexicographical_compare(a.point.begin(), a.point.end(), b.point.begin(),
                                        b.point.end());
  });
  return AtomicMeasure(dim, multiset_size, std::move(folded));
}

AtomicMeasure AtomicMeasure::from_points(std::span<const Point> points,
                                         std::span<const double> weights) {
  if (points.empty()) throw DomainError("from_points: empty multiset");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw DomainError("from_points: points must have positive dimension");
  if (!weights.empty() && weights.size() != points.size()) {
    throw DomainError("from_points: weights and points differ in length");
  }

  std::vector<Atom> raw;
  raw.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw DomainError("from_points: dimension mismatch");
    for (double v : points[i]) {
      if (!std::isfinite(v)) throw DomainError("from_points: non-finite coordinate");
    }
    const double w = weights.empty() ? 1.0 : weights[i];
    if (!std::isfinite(w) || w < 0.0) throw DomainError("from_points: negative or non-finite weight");
    raw.push_back({points[i], w});
  }
  return build(dim, std::move(raw), points.size());
}

AtomicMeasure AtomicMeasure::from_values(std::span<const double> values,
                                         std::span<const double> weights) {
  std::vector<Point> points;
  points.reserve(values.size());
  for (double v : values) points.push_back({v});
  return from_points(points, weights);
}

double AtomicMeasure::total_weight() const {
  CompensatedSum acc;
  for (const auto& a : atoms_) acc += a.weight;
  return acc.value();
}

double AtomicMeasure::measure_box(const HyperBox& box) const {
  if (box.dim() != dim_) throw DomainError("measure_box: dimension mismatch");
  CompensatedSum acc;
  for (const auto& a : atoms_) {
    if (box.contains(a.point)) acc += a.weight;
  }
  return acc.value();
}

double AtomicMeasure::cdf(double x) const {
  if (dim_ != 1) throw DomainError("cdf: scalar argument requires a 1D measure");
  if (std::isnan(x)) throw DomainError("cdf: NaN argument");
  const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                                   [](double v, const Atom& a) { return v < a.point[0]; });
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double AtomicMeasure::cdf(std::span<const double> x) const {
  if (x.size() != dim_) throw DomainError("cdf: dimension mismatch");
  if (dim_ == 1) return cdf(x[0]);
  for (double v : x) {
    if (std::isnan(v)) throw DomainError("cdf: NaN argument");
  }
  CompensatedSum acc;
  for (const auto& a : atoms_) {
    bool inside = true;
    for (std::size_t i = 0; i < dim_ && inside; ++i) inside = a.point[i] <= x[i];
    if (inside) acc += a.weight;
  }
  return acc.value();
}

AtomicMeasure AtomicMeasure::pushforward(const VectorMap& g) const {
  std::vector<Atom> raw;
  raw.reserve(atoms_.size());
  std::size_t out_dim = 0;
  for (const auto& a : atoms_) {
    Point image = g(a.point);
    require_finite_point(image, "pushforward");
    if (raw.empty()) {
      out_dim = image.size();
      if (out_dim == 0) throw DomainError("pushforward: map has zero-dimensional image");
    } else if (image.size() != out_dim) {
      throw DomainError("pushforward: map image dimension varies between atoms");
    }
    raw.push_back({std::move(image), a.weight});
  }
  return build(out_dim, std::move(raw), multiset_size_);
}

AtomicMeasure AtomicMeasure::pushforward(const std::function<double(double)>& g) const {
  if (dim_ != 1) throw DomainError("pushforward: scalar map requires a 1D measure");
  return pushforward(VectorMap([&g](std::span<const double> x) { return Point{g(x[0])}; }));
}

Point AtomicMeasure::expectation(const VectorMap& f) const {
  std::vector<CompensatedSum> acc;
  for (const auto& a : atoms_) {
    const Point v = f(a.point);
    require_finite_point(v, "expectation");
    if (acc.empty()) {
      acc.resize(v.size());
    } else if (v.size() != acc.size()) {
      throw DomainError("expectation: map image dimension varies between atoms");
    }
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += a.weight * v[i];
  }
  Point out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = acc[i].value();
  return out;
}

double AtomicMeasure::expectation(const ScalarField& f) const {
  CompensatedSum acc;
  for (const auto& a : atoms_) {
    const double v = f(a.point);
    if (!std::isfinite(v)) throw NumericalError("expectation: non-finite integrand value");
    acc += a.weight * v;
  }
  return acc.value();
}

double AtomicMeasure::expectation(const std::function<double(double)>& f) const {
  if (dim_ != 1) throw DomainError("expectation: scalar integrand requires a 1D measure");
  return expectation(ScalarField([&f](std::span<const double> x) { return f(x[0]); }));
}

}  // namespace asymptolim
