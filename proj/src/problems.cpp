#include "asymptolim/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "asymptolim/errors.hpp"
#include "asymptolim/special.hpp"
#include "asymptolim/summation.hpp"

namespace asymptolim {

namespace {

constexpr double kTwoPi = 2.0 * constants::pi;

void require_n(std::uint64_t n, const char* where) {
  if (n == 0) throw DomainError(std::string(where) + ": n must be >= 1");
  if (n > (std::uint64_t{1} << 52)) throw DomainError(std::string(where) + ": n exceeds 2^52");
}

SolveResult make_result(double empirical, double closed_form, std::uint64_t n, std::string meta) {
  return {empirical, closed_form, std::abs(empirical - closed_form), n, std::move(meta),
          Verdict::finite};
}

double as_double(std::uint64_t v) { return static_cast<double>(v); }

}  // namespace

std::uint64_t isqrt(std::uint64_t k) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
  // The floating estimate can be off by one either way near perfect squares.
  while (r > 0 && (r > k / r)) --r;
  while ((r + 1) <= k / (r + 1)) ++r;
  return r;
}

double sqrt_frac(std::uint64_t k) {
  const std::uint64_t m = isqrt(k);
  if (m * m == k) return 0.0;
  const double u = std::sqrt(as_double(k)) - as_double(m);
  return std::clamp(u, 0.0, std::nextafter(1.0, 0.0));
}

double frac_ratio(std::uint64_t n, std::uint64_t i) {
  if (i == 0) throw DomainError("frac_ratio: zero denominator");
  return as_double(n % i) / as_double(i);
}

double sqrt_frac_cdf(std::uint64_t n, double t, unsigned threads) {
  require_n(n, "sqrt_frac_cdf");
  if (std::isnan(t)) throw DomainError("sqrt_frac_cdf: NaN threshold");
  if (t < 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const std::uint64_t hits =
      parallel_count(1, n + 1, [t](std::uint64_t k) { return sqrt_frac(k) <= t; }, threads);
  return as_double(hits) / as_double(n);
}

SolveResult sequence_average(std::uint64_t n, const RealFn& f, unsigned threads) {
  require_n(n, "sequence_average");
  const double sum = parallel_sum(1, n + 1, [&f](std::uint64_t k) { return f(sqrt_frac(k)); }, threads);
  QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  const double limit = integrate_smooth(f, SmoothCdf::uniform(), 0.0, 1.0, opts).value;
  return make_result(sum / as_double(n), limit, n, "(1/n) sum f({sqrt k}) vs integral of f over [0,1]");
}

SolveResult interval_proportion_sin(std::uint64_t n, double lo, double hi, unsigned threads) {
  require_n(n, "interval_proportion_sin");
  if (!(-1.0 <= lo && lo <= hi && hi <= 1.0)) {
    throw DomainError("interval_proportion_sin: need -1 <= lo <= hi <= 1");
  }

  // {sin(2 pi x) <= c} has finitely many boundary points in [0,1).
  BoundaryDescription boundary;
  boundary.kind = BoundaryDescription::Kind::finite_points;
  boundary.description = "{x in [0,1) : sin(2 pi x) in {lo, hi}}";
  for (double c : {lo, hi}) {
    const double base = std::asin(c) / kTwoPi;
    for (double x : {base, 0.5 - base}) {
      x -= std::floor(x);
      boundary.points.push_back({x});
    }
  }
  const auto uniform_density = [](std::span<const double> x) {
    return (x[0] >= 0.0 && x[0] <= 1.0) ? 1.0 : 0.0;
  };
  if (!continuity_set_check(uniform_density, boundary)) {
    throw NumericalError("interval_proportion_sin: preimage is not a continuity set");
  }

  const std::uint64_t hits = parallel_count(
      1, n + 1,
      [lo, hi](std::uint64_t k) {
        const double v = std::sin(kTwoPi * sqrt_frac(k));
        return lo <= v && v <= hi;
      },
      threads);
  const SmoothCdf law = arcsine_law();
  const double closed = law(hi) - law(lo);
  std::ostringstream meta;
  meta.precision(17);
  meta << "proportion of sin(2 pi {sqrt k}) in [" << lo << ", " << hi << "]";
  return make_result(as_double(hits) / as_double(n), closed, n, meta.str());
}

SolveResult frac_n_over_i_cdf(std::uint64_t n, double t, unsigned threads) {
  require_n(n, "frac_n_over_i_cdf");
  if (std::isnan(t)) throw DomainError("frac_n_over_i_cdf: NaN threshold");
  const std::uint64_t hits = parallel_count(
      1, n + 1,
      [n, t](std::uint64_t i) {
        // fma rounds t*i - r once, so its sign is the sign of the exact value.
        return std::fma(t, as_double(i), -as_double(n % i)) >= 0.0;
      },
      threads);
  return make_result(as_double(hits) / as_double(n), frac_limit_cdf(t), n,
                     "(1/n) |{i <= n : {n/i} <= t}| vs psi(t) + 1/t + gamma");
}

SolveResult frac_n_over_i_mean(std::uint64_t n, const std::optional<RealFn>& f, unsigned threads) {
  require_n(n, "frac_n_over_i_mean");
  if (!f) {
    const double sum =
        parallel_sum(1, n + 1, [n](std::uint64_t i) { return frac_ratio(n, i); }, threads);
    return make_result(sum / as_double(n), 1.0 - constants::euler_gamma, n,
                       "(1/n) sum {n/i} vs 1 - gamma");
  }
  const RealFn& fn = *f;
  const double sum =
      parallel_sum(1, n + 1, [n, &fn](std::uint64_t i) { return fn(frac_ratio(n, i)); }, threads);
  QuadratureOptions opts;
  opts.abs_tol = 1e-9;
  const double limit = integrate_smooth(fn, frac_limit_law(), 0.0, 1.0, opts).value;
  return make_result(sum / as_double(n), limit, n,
                     "(1/n) sum f({n/i}) vs integral of f (psi'(t) - 1/t^2) over (0,1)");
}

std::uint64_t floor_quotient_sum(std::uint64_t n, unsigned threads) {
  // Chunked integer sums; exact, so the order is irrelevant.
  const std::size_t chunks = static_cast<std::size_t>((n + kReductionChunk - 1) / kReductionChunk);
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        const std::uint64_t lo = 1 + c * kReductionChunk;
        const std::uint64_t hi = std::min(n + 1, lo + kReductionChunk);
        std::uint64_t s = 0;
        for (std::uint64_t i = lo; i < hi; ++i) s += n / i;
        partial[c] = s;
      },
      threads);
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

SolveResult dirichlet_weak(std::uint64_t n, unsigned threads) {
  require_n(n, "dirichlet_weak");
  const std::uint64_t total = floor_quotient_sum(n, threads);
  const double empirical = as_double(total) / as_double(n) - std::log(as_double(n));
  return make_result(empirical, 2.0 * constants::euler_gamma - 1.0, n,
                     "(1/n) sum floor(n/i) - ln n vs 2 gamma - 1");
}

int PolySpec::degree() const {
  int d = static_cast<int>(p_coeffs.size()) - 1;
  while (d > 0 && p_coeffs[static_cast<std::size_t>(d)] == 0.0) --d;
  return d;
}

double PolySpec::leading() const {
  return p_coeffs.empty() ? 0.0 : p_coeffs[static_cast<std::size_t>(degree())];
}

double PolySpec::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = p_coeffs.rbegin(); it != p_coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void PolySpec::validate() const {
  if (p_coeffs.empty()) throw DomainError("PolySpec: no coefficients");
  for (double c : p_coeffs) {
    if (!std::isfinite(c)) throw DomainError("PolySpec: non-finite coefficient");
  }
  if (degree() < 1) throw DomainError("PolySpec: P must have degree >= 1");
  if (!(leading() > 0.0)) throw DomainError("PolySpec: leading coefficient must be > 0");
  if (norm_r < 1) throw DomainError("PolySpec: normalizer exponent r must be >= 1");
  if (!(norm_b > 0.0) || !std::isfinite(norm_b)) throw DomainError("PolySpec: normalizer b must be > 0");
  if (!f) throw DomainError("PolySpec: missing f");
}

std::uint64_t polynomial_count(const PolySpec& spec, std::uint64_t n) {
  spec.validate();
  const double nd = as_double(n);
  const double q = spec.degree();
  const double guess = std::ceil(std::pow(nd / spec.leading(), 1.0 / q));
  if (!std::isfinite(guess) || guess > 9e15) throw DomainError("polynomial_count: n too large");
  auto i = static_cast<std::uint64_t>(std::max(1.0, guess));
  while (i > 0 && spec.evaluate(as_double(i)) > nd) --i;
  while (spec.evaluate(as_double(i + 1)) <= nd) ++i;
  return i;
}

SolveResult polynomial_family(const PolySpec& spec, std::uint64_t n, unsigned threads) {
  require_n(n, "polynomial_family");
  const std::uint64_t count = polynomial_count(spec, n);
  if (count == 0) throw DomainError("polynomial_family: N(n) = 0, increase n");

  const double nd = as_double(n);
  const double normalizer = std::pow(nd / spec.norm_b, 1.0 / spec.norm_r);
  const double sum = parallel_sum(
      1, count + 1, [&](std::uint64_t i) { return spec.f(spec.evaluate(as_double(i)) / nd); },
      threads);
  const double empirical = sum / normalizer;

  const int q = spec.degree();
  std::ostringstream meta;
  meta << "(1/g(n)) sum_{i<=N(n)} f(P(i)/n), deg P = " << q << ", r = " << spec.norm_r
       << ", N(n) = " << count;
  // N(n) / g(n) grows like n^(1/q - 1/r).
  if (q < spec.norm_r) {
    const double inf = std::numeric_limits<double>::infinity();
    return {empirical, inf, inf, n, meta.str() + ", diverges", Verdict::divergent};
  }
  if (q > spec.norm_r) return make_result(empirical, 0.0, n, meta.str());

  const double inv_q = 1.0 / q;
  const SmoothCdf root_law = SmoothCdf::on_interval(
      [inv_q](double x) { return std::pow(x, inv_q); },
      RealFn([inv_q](double x) { return inv_q * std::pow(x, inv_q - 1.0); }), 0.0, 1.0);
  // The density is singular at 0 for q > 1 and the panel error estimate runs
  // optimistic there, so ask for more than the 1e-9 the result promises.
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  const double integral = integrate_smooth(spec.f, root_law, 0.0, 1.0, opts).value;
  const double closed = std::pow(spec.norm_b / spec.leading(), inv_q) * integral;
  return make_result(empirical, closed, n, meta.str());
}

SmoothCdf frac_limit_law() {
  return SmoothCdf::on_interval(frac_limit_cdf, RealFn(frac_limit_density), 0.0, 1.0);
}

SmoothCdf arcsine_law() {
  return SmoothCdf::on_interval(
      [](double t) { return std::asin(std::clamp(t, -1.0, 1.0)) / constants::pi + 0.5; },
      RealFn([](double t) { return 1.0 / (constants::pi * std::sqrt(1.0 - t * t)); }), -1.0, 1.0);
}

namespace {

MeasureFamily values_family(std::function<double(std::uint64_t, std::uint64_t)> term,
                            std::string description) {
  return {[term = std::move(term)](std::uint64_t n) {
            std::vector<double> values(n);
            for (std::uint64_t k = 1; k <= n; ++k) values[k - 1] = term(n, k);
            return AtomicMeasure::from_values(values);
          },
          std::move(description)};
}

}  // namespace

MeasureFamily sqrt_frac_family() {
  return values_family([](std::uint64_t, std::uint64_t k) { return sqrt_frac(k); },
                       "uniform on {{sqrt k} : k <= n}");
}

MeasureFamily sin_sqrt_frac_family() {
  return values_family(
      [](std::uint64_t, std::uint64_t k) { return std::sin(kTwoPi * sqrt_frac(k)); },
      "uniform on {sin(2 pi {sqrt k}) : k <= n}");
}

MeasureFamily frac_n_over_i_family() {
  return values_family([](std::uint64_t n, std::uint64_t i) { return frac_ratio(n, i); },
                       "uniform on {{n/i} : i <= n}");
}

}  // namespace asymptolim
