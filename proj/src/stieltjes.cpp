#include "asymptolim/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "asymptolim/errors.hpp"
#include "asymptolim/summation.hpp"

namespace asymptolim {

Partition1D::Partition1D(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw DomainError("Partition1D: no intervals");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& iv = intervals_[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
      throw DomainError("Partition1D: intervals must be finite with lo <= hi");
    }
    if (i > 0 && intervals_[i - 1].hi > iv.lo) throw DomainError("Partition1D: overlapping intervals");
  }
}

HyperBox StepCdf::atom_hull() const {
  const auto atoms = source_.atoms();
  Point lo = atoms.front().point;
  Point hi = lo;
  for (const auto& a : atoms) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], a.point[i]);
      hi[i] = std::max(hi[i], a.point[i]);
    }
  }
  return HyperBox(std::move(lo), std::move(hi));
}

SmoothCdf SmoothCdf::on_interval(RealFn value, std::optional<RealFn> density, double lo, double hi) {
  std::optional<ScalarField> dens;
  if (density) {
    dens = [d = std::move(*density)](std::span<const double> x) { return d(x[0]); };
  }
  return SmoothCdf{[v = std::move(value)](std::span<const double> x) { return v(x[0]); },
                   std::move(dens), HyperBox::interval(lo, hi)};
}

SmoothCdf SmoothCdf::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("SmoothCdf::uniform: need finite lo < hi");
  }
  const double width = hi - lo;
  return on_interval([lo, width](double t) { return (t - lo) / width; },
                     RealFn([width](double) { return 1.0 / width; }), lo, hi);
}

double SmoothCdf::operator()(std::span<const double> x) const {
  if (x.size() != dim()) throw DomainError("SmoothCdf: dimension mismatch");
  Point clamped(x.begin(), x.end());
  for (std::size_t i = 0; i < clamped.size(); ++i) {
    if (std::isnan(clamped[i])) throw DomainError("SmoothCdf: NaN argument");
    if (clamped[i] <= support.lower()[i]) return 0.0;
    clamped[i] = std::min(clamped[i], support.upper()[i]);
  }
  return value(clamped);
}

double SmoothCdf::operator()(double x) const { return (*this)(std::span<const double>(&x, 1)); }

double delta_box(const ScalarField& phi, const HyperBox& box) {
  if (!box.is_finite()) throw DomainError("delta_box: box must be finite");
  const std::size_t k = box.dim();
  if (k >= 31) throw DomainError("delta_box: dimension too large");
  CompensatedSum acc;
  Point vertex(k);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    int lower_count = 0;
    for (std::size_t i = 0; i < k; ++i) {
      // Bit i set selects the upper bound in coordinate i.
      if (mask & (1u << i)) {
        vertex[i] = box.upper()[i];
      } else {
        vertex[i] = box.lower()[i];
        ++lower_count;
      }
    }
    const double v = phi(vertex);
    if (!std::isfinite(v)) throw NumericalError("delta_box: non-finite value at a vertex");
    acc += (lower_count % 2 == 0) ? v : -v;
  }
  return acc.value();
}

namespace {

bool stable(double current, double previous, double tol) {
  return std::abs(current - previous) <= tol * std::max(1.0, std::abs(current));
}

double checked(double v, const char* where) {
  if (!std::isfinite(v)) throw NumericalError(std::string(where) + ": non-finite function value");
  return v;
}

}  // namespace

VariationResult variation(const RealFn& phi, Interval domain, const RefinementControl& control) {
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || domain.lo > domain.hi) {
    throw DomainError("variation: domain must be a finite interval");
  }
  if (domain.lo == domain.hi) return {0.0, 0};

  // Values at the dyadic points of the current level, reused when refining.
  std::vector<double> values = {checked(phi(domain.lo), "variation"),
                                checked(phi(domain.hi), "variation")};
  const double width = domain.hi - domain.lo;
  double previous = std::abs(values[1] - values[0]);
  for (int level = 1; level <= control.max_level; ++level) {
    const std::size_t cells = std::size_t{1} << level;
    std::vector<double> next(cells + 1);
    for (std::size_t j = 0; j <= cells; ++j) {
      if (j % 2 == 0) {
        next[j] = values[j / 2];
      } else {
        const double x = domain.lo + width * (static_cast<double>(j) / static_cast<double>(cells));
        next[j] = checked(phi(x), "variation");
      }
    }
    CompensatedSum acc;
    for (std::size_t j = 0; j < cells; ++j) acc += std::abs(next[j + 1] - next[j]);
    const double current = acc.value();
    values = std::move(next);
    if (level >= control.min_level && stable(current, previous, control.tol)) {
      return {current, level};
    }
    previous = current;
  }
  throw NumericalError("variation did not stabilize");
}

VariationResult variation(const RealFn& phi, const Partition1D& partition,
                          const RefinementControl& control) {
  CompensatedSum acc;
  int deepest = 0;
  for (const auto& iv : partition.intervals()) {
    const auto r = variation(phi, iv, control);
    acc += r.value;
    deepest = std::max(deepest, r.level);
  }
  return {acc.value(), deepest};
}

VariationResult variation(const StepCdf& cdf, const RefinementControl& control) {
  const HyperBox hull = cdf.atom_hull();
  if (cdf.dim() == 1) {
    const double lo = hull.lower()[0];
    const double hi = hull.upper()[0];
    const double pad = std::max(1.0, hi - lo);
    return variation([&cdf](double x) { return cdf(x); }, Interval{lo - pad, hi + pad}, control);
  }
  Point lo = hull.lower();
  Point hi = hull.upper();
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double pad = std::max(1.0, hi[i] - lo[i]);
    lo[i] -= pad;
    hi[i] += pad;
  }
  return variation_nd([&cdf](std::span<const double> x) { return cdf(x); },
                      HyperBox(std::move(lo), std::move(hi)), control);
}

namespace {

// Sum of |delta| over the uniform grid with 2^level cells per axis.
double grid_variation(const ScalarField& phi, const HyperBox& box, int level) {
  const std::size_t k = box.dim();
  const std::size_t per_axis = std::size_t{1} << level;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < k; ++i) cells *= per_axis;

  CompensatedSum acc;
  std::vector<std::size_t> index(k, 0);
  Point lo(k);
  Point hi(k);
  for (std::size_t c = 0; c < cells; ++c) {
    std::size_t rest = c;
    for (std::size_t i = 0; i < k; ++i) {
      index[i] = rest % per_axis;
      rest /= per_axis;
      const double a = box.lower()[i];
      const double w = box.upper()[i] - a;
      lo[i] = a + w * (static_cast<double>(index[i]) / static_cast<double>(per_axis));
      hi[i] = a + w * (static_cast<double>(index[i] + 1) / static_cast<double>(per_axis));
    }
    acc += std::abs(delta_box(phi, HyperBox(lo, hi)));
  }
  return acc.value();
}

}  // namespace

VariationResult variation_nd(const ScalarField& phi, const HyperBox& box,
                             const RefinementControl& control) {
  if (!box.is_finite()) throw DomainError("variation_nd: box must be finite");
  // Keep the grid below ~2^24 cells.
  const int level_cap =
      std::min(control.max_level, static_cast<int>(24 / std::max<std::size_t>(1, box.dim())));
  double previous = grid_variation(phi, box, 0);
  for (int level = 1; level <= level_cap; ++level) {
    const double current = grid_variation(phi, box, level);
    if (level >= std::min(control.min_level, level_cap) && stable(current, previous, control.tol)) {
      return {current, level};
    }
    previous = current;
  }
  throw NumericalError("variation did not stabilize");
}

double integrate_step(const ScalarField& f, const StepCdf& cdf) {
  return cdf.source().expectation(f);
}

double integrate_step(const RealFn& f, const StepCdf& cdf) { return cdf.source().expectation(f); }

namespace {

QuadratureResult integrate_nested(const ScalarField& g, const HyperBox& box, std::size_t axis,
                                  Point& prefix, const QuadratureOptions& options) {
  const double a = box.lower()[axis];
  const double b = box.upper()[axis];
  if (axis + 1 == box.dim()) {
    return integrate_adaptive(
        [&](double x) {
          prefix[axis] = x;
          return g(prefix);
        },
        a, b, options);
  }

  const double width = std::isfinite(b - a) ? std::max(1.0, b - a) : 1.0;
  QuadratureOptions inner = options;
  inner.abs_tol = 0.1 * options.abs_tol / width;
  double worst_inner = 0.0;
  QuadratureResult outer = integrate_adaptive(
      [&](double x) {
        Point local = prefix;
        local[axis] = x;
        const QuadratureResult r = integrate_nested(g, box, axis + 1, local, inner);
        worst_inner = std::max(worst_inner, r.error);
        return r.value;
      },
      a, b, options);
  outer.error += width * worst_inner;
  return outer;
}

void require_inside_support(const SmoothCdf& phi, const HyperBox& box) {
  if (box.dim() != phi.dim()) throw DomainError("integrate_smooth: dimension mismatch");
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (box.lower()[i] < phi.support.lower()[i] || box.upper()[i] > phi.support.upper()[i]) {
      throw DomainError("integrate_smooth: box extends beyond the CDF support");
    }
  }
}

}  // namespace

QuadratureResult integrate_smooth(const ScalarField& f, const SmoothCdf& phi, const HyperBox& box,
                                  const QuadratureOptions& options) {
  if (!phi.density) throw DomainError("integrate_smooth: CDF has no density");
  require_inside_support(phi, box);
  const ScalarField& density = *phi.density;
  ScalarField integrand = [&](std::span<const double> x) { return f(x) * density(x); };
  Point prefix(box.dim());
  return integrate_nested(integrand, box, 0, prefix, options);
}

QuadratureResult integrate_smooth(const RealFn& f, const SmoothCdf& phi, double lo, double hi,
                                  const QuadratureOptions& options) {
  return integrate_smooth([&f](std::span<const double> x) { return f(x[0]); }, phi,
                          HyperBox::interval(lo, hi), options);
}

QuadratureResult integrate_by_parts(const RealFn& f, const RealFn& f_prime, const RealFn& phi,
                                    Interval domain, const QuadratureOptions& options) {
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || domain.lo > domain.hi) {
    throw DomainError("integrate_by_parts: domain must be a finite interval");
  }
  const double boundary = checked(f(domain.hi) * phi(domain.hi), "integrate_by_parts") -
                          checked(f(domain.lo) * phi(domain.lo), "integrate_by_parts");
  QuadratureResult r = integrate_adaptive([&](double t) { return phi(t) * f_prime(t); }, domain.lo,
                                          domain.hi, options);
  r.value = boundary - r.value;
  return r;
}

std::vector<double> riemann_stieltjes_oracle(const RealFn& f, const RealFn& phi, Interval domain,
                                             int levels) {
  if (levels < 0 || levels > 30) throw DomainError("riemann_stieltjes_oracle: levels out of range");
  std::vector<double> sums;
  const double width = domain.hi - domain.lo;
  for (int level = 0; level <= levels; ++level) {
    const std::size_t cells = std::size_t{1} << level;
    const auto node = [&](std::size_t j) {
      return domain.lo + width * (static_cast<double>(j) / static_cast<double>(cells));
    };
    CompensatedSum acc;
    double left = phi(node(0));
    for (std::size_t j = 0; j < cells; ++j) {
      const double right = phi(node(j + 1));
      acc += f(0.5 * (node(j) + node(j + 1))) * (right - left);
      left = right;
    }
    sums.push_back(acc.value());
  }
  return sums;
}

std::vector<double> riemann_stieltjes_oracle_nd(const ScalarField& f, const ScalarField& phi,
                                                const HyperBox& box, int levels) {
  if (!box.is_finite()) throw DomainError("riemann_stieltjes_oracle_nd: box must be finite");
  const std::size_t k = box.dim();
  std::vector<double> sums;
  for (int level = 0; level <= levels; ++level) {
    const std::size_t per_axis = std::size_t{1} << level;
    std::size_t cells = 1;
    for (std::size_t i = 0; i < k; ++i) cells *= per_axis;
    CompensatedSum acc;
    Point lo(k);
    Point hi(k);
    Point mid(k);
    for (std::size_t c = 0; c < cells; ++c) {
      std::size_t rest = c;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = rest % per_axis;
        rest /= per_axis;
        const double a = box.lower()[i];
        const double w = box.upper()[i] - a;
        lo[i] = a + w * (static_cast<double>(j) / static_cast<double>(per_axis));
        hi[i] = a + w * (static_cast<double>(j + 1) / static_cast<double>(per_axis));
        mid[i] = 0.5 * (lo[i] + hi[i]);
      }
      acc += f(mid) * delta_box(phi, HyperBox(lo, hi));
    }
    sums.push_back(acc.value());
  }
  return sums;
}

}  // namespace asymptolim
