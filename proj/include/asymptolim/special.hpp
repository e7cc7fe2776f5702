#pragma once

#include <cstdint>

namespace asymptolim {

namespace constants {
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double zeta2 = 1.64493406684822643647241516664602519;  // pi^2 / 6
}  // namespace constants

/// Digamma psi(x) for x > 0: upward recurrence to x >= 6, then the
/// asymptotic expansion with Bernoulli terms through B_14.
double digamma(double x);

/// Trigamma psi'(x) for x > 0, same scheme as digamma.
double trigamma(double x);

/// Hurwitz zeta sum_{m>=0} (m + x)^(-s) for s > 1, x > 0, by Euler-Maclaurin
/// summation. The head length grows until the first omitted correction term
/// is below 1e-16 of the result.
double hurwitz_zeta(double s, double x);

/// Riemann zeta for s > 1.
inline double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

/// H_n = sum_{i<=n} 1/i, compensated. n >= 1.
double harmonic(std::uint64_t n);

/// Limit CDF of the fractional parts {n/i}: psi(t) + 1/t + gamma on (0,1),
/// 0 for t <= 0 and 1 for t >= 1. Evaluated as psi(1 + t) + gamma.
double frac_limit_cdf(double t);

/// Its density psi'(t) - 1/t^2 = psi'(1 + t) on (0,1), 0 elsewhere.
double frac_limit_density(double t);

struct SeriesValue {
  double value;
  /// Bound on the discarded tail.
  double truncation_bound;
};

/// Partial sum -sum_{k=1}^{k_max} zeta(k+1) (-t)^k of the power series of
/// frac_limit_cdf about 0. Requires |t| < 1.
SeriesValue frac_limit_cdf_series(double t, int k_max);

}  // namespace asymptolim
