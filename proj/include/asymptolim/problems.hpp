#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asymptolim/convergence.hpp"
#include "asymptolim/stieltjes.hpp"

namespace asymptolim {

enum class Verdict {
  finite,     ///< closed_form holds the limit
  divergent,  ///< the normalized sum grows without bound; closed_form is +inf
};

struct SolveResult {
  double empirical = 0.0;
  double closed_form = 0.0;
  double abs_error = 0.0;
  std::uint64_t n = 0;
  std::string meta;
  Verdict verdict = Verdict::finite;
};

/// floor(sqrt(k)), exact for every 64-bit k.
std::uint64_t isqrt(std::uint64_t k);

/// {sqrt(k)}: exact integer floor, one floating square root for the rest.
double sqrt_frac(std::uint64_t k);

/// {n/i} = (n mod i) / i, with a single rounding at the final division.
double frac_ratio(std::uint64_t n, std::uint64_t i);

/// Proportion of k <= n with {sqrt(k)} <= t.
double sqrt_frac_cdf(std::uint64_t n, double t, unsigned threads = 1);

/// (1/n) sum_{k<=n} f({sqrt k}) against the integral of f over [0,1].
SolveResult sequence_average(std::uint64_t n, const RealFn& f, unsigned threads = 1);

/// Proportion of sin(2 pi {sqrt k}), k <= n, inside [lo, hi] against the
/// arcsine-law mass arcsin(hi)/pi - arcsin(lo)/pi.
SolveResult interval_proportion_sin(std::uint64_t n, double lo, double hi, unsigned threads = 1);

/// (1/n) |{i <= n : {n/i} <= t}| against psi(t) + 1/t + gamma. The
/// comparison n mod i <= t*i is decided exactly.
SolveResult frac_n_over_i_cdf(std::uint64_t n, double t, unsigned threads = 1);

/// (1/n) sum f({n/i}) against the integral of f (psi'(t) - 1/t^2) over
/// (0,1). With no f the identity is used and the limit is 1 - gamma.
SolveResult frac_n_over_i_mean(std::uint64_t n, const std::optional<RealFn>& f = std::nullopt,
                               unsigned threads = 1);

/// (1/n) sum floor(n/i) - ln n against 2 gamma - 1.
SolveResult dirichlet_weak(std::uint64_t n, unsigned threads = 1);

/// Exact sum_{i<=n} floor(n/i).
std::uint64_t floor_quotient_sum(std::uint64_t n, unsigned threads = 1);

/// Sums (1/g(n)) sum_{i<=N(n)} f(P(i)/n) with N(n) the largest i such that
/// P(i) <= n and normalizer g(n) = (n/b)^(1/r).
struct PolySpec {
  /// P's coefficients, constant term first. The leading one must be > 0.
  std::vector<double> p_coeffs;
  int norm_r = 1;
  double norm_b = 1.0;
  RealFn f;

  [[nodiscard]] int degree() const;
  [[nodiscard]] double leading() const;
  [[nodiscard]] double evaluate(double x) const;
  void validate() const;
};

/// Largest i >= 1 with P(i) <= n, or 0 when P(1) > n.
std::uint64_t polynomial_count(const PolySpec& spec, std::uint64_t n);

/// For deg P = r the limit is (b/a)^(1/q) times the integral of f against
/// x^(1/q) on (0,1]; for deg P > r it is 0; for deg P < r the result is
/// tagged Verdict::divergent.
SolveResult polynomial_family(const PolySpec& spec, std::uint64_t n, unsigned threads = 1);

/// Limit laws.
SmoothCdf frac_limit_law();
/// CDF arcsin(t)/pi + 1/2 of sin(X), X uniform on a period.
SmoothCdf arcsine_law();

/// Measure families behind the worked problems.
MeasureFamily sqrt_frac_family();
MeasureFamily sin_sqrt_frac_family();
MeasureFamily frac_n_over_i_family();

}  // namespace asymptolim
