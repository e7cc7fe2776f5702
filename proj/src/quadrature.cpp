#include "asymptolim/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "asymptolim/errors.hpp"
#include "asymptolim/summation.hpp"

namespace asymptolim {

namespace {

// Abscissae and weights of the 15-point Kronrod rule and its 7-point Gauss
// subset (QUADPACK qk15 values).
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double checked(double v) {
  if (!std::isfinite(v)) throw NumericalError("quadrature: integrand returned a non-finite value");
  return v;
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b) {
  const PanelEstimate e = gauss_kronrod_15(f, a, b);
  double err = std::abs(e.kronrod - e.gauss);
  // Roundoff floor so panels at machine resolution stop being refined.
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(e.kronrod));
  return {a, b, e.kronrod, err};
}

QuadratureResult integrate_finite(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& options) {
  if (a == b) return {0.0, 0.0, 0};
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  heap.push(make_panel(f, a, b));
  CompensatedSum total_err(heap.top().error);
  CompensatedSum running_value(heap.top().value);

  auto summarize = [&heap]() {
    std::vector<Panel> panels;
    while (!heap.empty()) {
      panels.push_back(heap.top());
      heap.pop();
    }
    // Sum in position order so the value does not depend on heap layout.
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    CompensatedSum v;
    CompensatedSum e;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return QuadratureResult{v.value(), e.value(), panels.size()};
  };

  for (;;) {
    const double err = total_err.value();
    if (err <= std::max(options.abs_tol, options.rel_tol * std::abs(running_value.value()))) {
      return summarize();
    }
    if (heap.size() >= options.max_panels) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3g", err);
      throw NumericalError(std::string("quadrature: tolerance not reached within panel budget (error estimate ") +
                           buf + ")");
    }
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      throw NumericalError("quadrature: panel width reached machine resolution");
    }
    heap.pop();
    const Panel left = make_panel(f, worst.a, mid);
    const Panel right = make_panel(f, mid, worst.b);
    total_err -= worst.error;
    total_err += left.error;
    total_err += right.error;
    running_value -= worst.value;
    running_value += left.value;
    running_value += right.value;
    heap.push(left);
    heap.push(right);
  }
}

}  // namespace

PanelEstimate gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f(center));
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = checked(f(center - dx)) + checked(f(center + dx));
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {kronrod * half, gauss * half};
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options) {
  if (std::isnan(a) || std::isnan(b)) throw DomainError("quadrature: NaN bound");
  if (!(options.abs_tol > 0.0) && !(options.rel_tol > 0.0)) {
    throw DomainError("quadrature: tolerance must be positive");
  }
  if (a > b) {
    QuadratureResult r = integrate_adaptive(f, b, a, options);
    r.value = -r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (!lo_inf && !hi_inf) return integrate_finite(f, a, b, options);

  if (lo_inf && hi_inf) {
    // x = t / (1 - t^2) on (-1, 1)
    auto g = [&f](double t) {
      const double d = 1.0 - t * t;
      return f(t / d) * (1.0 + t * t) / (d * d);
    };
    return integrate_finite(g, -1.0, 1.0, options);
  }
  if (hi_inf) {
    // x = a + t / (1 - t) on [0, 1)
    auto g = [&f, a](double t) {
      const double d = 1.0 - t;
      return f(a + t / d) / (d * d);
    };
    return integrate_finite(g, 0.0, 1.0, options);
  }
  // x = b - t / (1 - t)
  auto g = [&f, b](double t) {
    const double d = 1.0 - t;
    return f(b - t / d) / (d * d);
  };
  return integrate_finite(g, 0.0, 1.0, options);
}

}  // namespace asymptolim
