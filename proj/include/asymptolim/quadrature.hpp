#pragma once

#include <cstddef>
#include <functional>

namespace asymptolim {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  /// Maximum number of panels kept by the adaptive bisection.
  std::size_t max_panels = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// The panel with the largest error estimate is bisected until the summed
/// estimate meets max(abs_tol, rel_tol*|value|). Infinite endpoints are
/// mapped onto a finite interval first. Throws NumericalError when the
/// budget runs out or f returns a non-finite value.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options = {});

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
struct PanelEstimate {
  double kronrod;
  double gauss;
};
PanelEstimate gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

}  // namespace asymptolim
