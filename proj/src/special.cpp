#include "asymptolim/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "asymptolim/errors.hpp"
#include "asymptolim/summation.hpp"

namespace asymptolim {

namespace {

// B_2, B_4, ..., B_16.
constexpr std::array<double, 8> kBernoulliEven = {
    1.0 / 6.0,  -1.0 / 30.0,    1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0};

constexpr double kAsymptoticThreshold = 6.0;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + ": argument must be finite and > 0");
  }
}

}  // namespace

double digamma(double x) {
  require_positive(x, "digamma");
  CompensatedSum shift;
  while (x < kAsymptoticThreshold) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum_{k=1}^{7} B_{2k} / (2k x^{2k})
  const double inv2 = 1.0 / (x * x);
  double tail = 0.0;
  for (int k = 7; k >= 1; --k) {
    tail = (tail + kBernoulliEven[k - 1] / (2.0 * k)) * inv2;
  }
  CompensatedSum acc;
  acc += std::log(x);
  acc -= 0.5 / x;
  acc -= tail;
  acc += shift;
  return acc.value();
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  CompensatedSum shift;
  while (x < kAsymptoticThreshold) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  // psi'(x) ~ 1/x + 1/(2x^2) + sum_{k=1}^{7} B_{2k} / x^{2k+1}
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double tail = 0.0;
  for (int k = 7; k >= 1; --k) tail = (tail + kBernoulliEven[k - 1]) * inv2;
  CompensatedSum acc;
  acc += inv;
  acc += 0.5 * inv2;
  acc += tail * inv;
  acc += shift;
  return acc.value();
}

double hurwitz_zeta(double s, double x) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("hurwitz_zeta: s must be finite and > 1");
  require_positive(x, "hurwitz_zeta");

  // Euler-Maclaurin with head length n:
  //   sum_{m<n} (m+x)^-s + (n+x)^(1-s)/(s-1) + (n+x)^-s / 2
  //   + sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) (n+x)^(-s-2k+1)
  // The corrections decrease while (s+2k)/(n+x) is small, so n is raised
  // until the first omitted correction is negligible.
  const int corrections = 7;
  std::uint64_t n = static_cast<std::uint64_t>(std::max(9.0, std::ceil(s))) + 1;
  for (;;) {
    const double w = static_cast<double>(n) + x;
    CompensatedSum acc;
    for (std::uint64_t m = n; m-- > 0;) acc += std::pow(static_cast<double>(m) + x, -s);
    acc += std::pow(w, 1.0 - s) / (s - 1.0);
    const double w_s = std::pow(w, -s);
    acc += 0.5 * w_s;

    // term_k = B_2k / (2k)! * rising(s, 2k-1) * w^(-s-2k+1)
    double factor = s / w * w_s;  // rising(s,1) w^(-s-1)
    double factorial = 2.0;       // (2k)!
    double omitted = 0.0;
    for (int k = 1; k <= corrections + 1; ++k) {
      const double term = kBernoulliEven[k - 1] / factorial * factor;
      if (k <= corrections) {
        acc += term;
      } else {
        omitted = std::abs(term);
      }
      // Advance to k+1: multiply by (s+2k-1)(s+2k)/w^2 and the factorial.
      factor *= (s + 2.0 * k - 1.0) * (s + 2.0 * k) / (w * w);
      factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    const double value = acc.value();
    if (omitted <= 1e-16 * std::abs(value) || n > (std::uint64_t{1} << 20)) return value;
    n *= 2;
  }
}

double harmonic(std::uint64_t n) {
  if (n == 0) throw DomainError("harmonic: n must be >= 1");
  CompensatedSum acc;
  for (std::uint64_t i = n; i >= 1; --i) acc += 1.0 / static_cast<double>(i);
  return acc.value();
}

double frac_limit_cdf(double t) {
  if (std::isnan(t)) throw DomainError("frac_limit_cdf: NaN argument");
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // psi(t) + 1/t = psi(1 + t)
  return digamma(1.0 + t) + constants::euler_gamma;
}

double frac_limit_density(double t) {
  if (std::isnan(t)) throw DomainError("frac_limit_density: NaN argument");
  if (t < 0.0 || t > 1.0) return 0.0;
  // psi'(t) - 1/t^2 = psi'(1 + t)
  return trigamma(1.0 + t);
}

SeriesValue frac_limit_cdf_series(double t, int k_max) {
  if (!(std::abs(t) < 1.0)) throw DomainError("frac_limit_cdf_series: requires |t| < 1");
  if (k_max < 0) throw DomainError("frac_limit_cdf_series: k_max must be >= 0");
  CompensatedSum acc;
  double power = 1.0;  // (-t)^k
  for (int k = 1; k <= k_max; ++k) {
    power *= -t;
    acc -= riemann_zeta(k + 1.0) * power;
  }
  const double next = riemann_zeta(k_max + 2.0) * std::pow(std::abs(t), k_max + 1);
  // For t >= 0 the terms alternate with decreasing magnitude; for t < 0 they
  // share a sign and the tail is dominated by a geometric series.
  const double bound = t >= 0.0 ? next : next / (1.0 - std::abs(t));
  return {acc.value(), bound};
}

}  // namespace asymptolim
