#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "asymptolim/errors.hpp"
#include "asymptolim/special.hpp"
#include "asymptolim/stieltjes.hpp"

namespace asymptolim {
namespace {

constexpr double kPi = constants::pi;

AtomicMeasure random_lattice_measure(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<int> count(1, 30);
  std::uniform_int_distribution<int> lattice(-4, 4);
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  std::vector<Point> pts;
  std::vector<double> ws;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Point p(k);
    for (auto& c : p) c = lattice(rng) * 0.5;
    pts.push_back(p);
    ws.push_back(weight(rng) + 1e-3);
  }
  return AtomicMeasure::from_points(pts, ws);
}

HyperBox random_box(std::mt19937_64& rng, std::size_t k) {
  // Edges on the same lattice as the atoms so boundary cases are exercised.
  std::uniform_int_distribution<int> edge(-5, 5);
  Point lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    const int a = edge(rng), b = edge(rng);
    lo[i] = std::min(a, b) * 0.5;
    hi[i] = std::max(a, b) * 0.5;
  }
  return HyperBox(lo, hi);
}

TEST(DeltaBox, ProductPrimitive) {
  const ScalarField xy = [](std::span<const double> x) { return x[0] * x[1]; };
  EXPECT_DOUBLE_EQ(delta_box(xy, HyperBox({0, 0}, {1, 1})), 1.0);
  const ScalarField constant = [](std::span<const double>) { return 3.5; };
  EXPECT_EQ(delta_box(constant, HyperBox({-1, 2, 0}, {4, 5, 1})), 0.0);
}

TEST(DeltaBox, MatchesIntegralOfMixedPartial) {
  // phi = x^2 y, d2phi/dxdy = 2x. Oracle: midpoint double sum of 2x.
  const ScalarField phi = [](std::span<const double> x) { return x[0] * x[0] * x[1]; };
  const int cells = 400;
  double oracle = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = 1.0 + (i + 0.5) / cells;
    for (int j = 0; j < cells; ++j) oracle += 2.0 * x * (1.0 / cells) * (3.0 / cells);
  }
  EXPECT_NEAR(oracle, 9.0, 1e-10);
  EXPECT_NEAR(delta_box(phi, HyperBox({1, 0}, {2, 3})), 9.0, 1e-14);
}

TEST(DeltaBox, RejectsInfiniteBoxAndNonFiniteValues) {
  const ScalarField phi = [](std::span<const double> x) { return x[0]; };
  EXPECT_THROW(delta_box(phi, HyperBox::interval(-INFINITY, 0)), DomainError);
  const ScalarField bad = [](std::span<const double> x) { return 1.0 / x[0]; };
  EXPECT_THROW(delta_box(bad, HyperBox::interval(0, 1)), NumericalError);
}

TEST(DeltaBox, AdditiveUnderSplitting) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ScalarField phi = [](std::span<const double> x) {
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) v *= std::atan(x[i] + 0.3 * i) + x[i] * x[i];
    return v;
  };
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + trial % 3;
    Point lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
      lo[i] = u(rng);
      hi[i] = lo[i] + 0.1 + std::abs(u(rng));
    }
    const std::size_t axis = static_cast<std::size_t>(trial) % k;
    const double cut = lo[axis] + (hi[axis] - lo[axis]) * (0.5 + 0.4 * u(rng));
    Point mid_hi = hi, mid_lo = lo;
    mid_hi[axis] = cut;
    mid_lo[axis] = cut;
    const double whole = delta_box(phi, HyperBox(lo, hi));
    const double parts = delta_box(phi, HyperBox(lo, mid_hi)) + delta_box(phi, HyperBox(mid_lo, hi));
    EXPECT_NEAR(whole, parts, 1e-12);
  }
  // With dyadic data every operation is exact and the split is exact too.
  const ScalarField dyadic = [](std::span<const double> x) { return x[0] * x[1] + x[0]; };
  EXPECT_EQ(delta_box(dyadic, HyperBox({0, 0}, {1, 2})),
            delta_box(dyadic, HyperBox({0, 0}, {0.5, 2})) + delta_box(dyadic, HyperBox({0.5, 0}, {1, 2})));
}

TEST(DeltaBox, EqualsAtomicBoxMeasure) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto m = random_lattice_measure(rng, k);
    const auto box = random_box(rng, k);
    const ScalarField cdf = [&m](std::span<const double> x) { return m.cdf(x); };
    EXPECT_NEAR(delta_box(cdf, box), m.measure_box(box), 1e-12);
  }
}

TEST(Variation, StepCdfIsOne) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const StepCdf cdf(random_lattice_measure(rng, 1));
    EXPECT_NEAR(variation(cdf).value, 1.0, 1e-12);
  }
}

TEST(Variation, StepCdfIsOneIn2D) {
  // The "corner point" claim for k = 2, checked numerically.
  std::mt19937_64 rng(53);
  RefinementControl control;
  control.min_level = 2;
  control.max_level = 6;
  for (int trial = 0; trial < 10; ++trial) {
    const StepCdf cdf(random_lattice_measure(rng, 2));
    EXPECT_NEAR(variation(cdf, control).value, 1.0, 1e-12);
  }
}

TEST(Variation, SineOverPeriod) {
  // Oracle: total of |rises| across monotone pieces [0,pi/2], [pi/2,3pi/2], [3pi/2,2pi].
  const auto s = [](double t) { return std::sin(t); };
  const double oracle = std::abs(s(kPi / 2) - s(0)) + std::abs(s(1.5 * kPi) - s(kPi / 2)) +
                        std::abs(s(2 * kPi) - s(1.5 * kPi));
  EXPECT_NEAR(oracle, 4.0, 1e-15);
  EXPECT_NEAR(variation(s, Interval{0, 2 * kPi}).value, oracle, 1e-12);
}

TEST(Variation, ConstantAndNonDyadicExtremum) {
  EXPECT_EQ(variation([](double) { return 2.0; }, Interval{-3, 5}).value, 0.0);
  // Maximum at t = 1/3 (not dyadic): variation = 2 * (1/9) + (4/9 - ... ) computed below.
  const auto g = [](double t) { return -(t - 1.0 / 3.0) * (t - 1.0 / 3.0); };
  const double oracle = std::abs(g(1.0 / 3.0) - g(0)) + std::abs(g(1) - g(1.0 / 3.0));
  EXPECT_NEAR(variation(g, Interval{0, 1}).value, oracle, 1e-10);
}

TEST(Variation, NonStabilizationIsReported) {
  // sin(1/t) has unbounded variation near 0.
  RefinementControl control;
  control.max_level = 12;
  EXPECT_THROW(variation([](double t) { return t > 0 ? std::sin(1.0 / t) : 0.0; }, Interval{0, 1},
                         control),
               NumericalError);
}

TEST(Variation, OverPartition) {
  const Partition1D p({{0, 1}, {2, 3}});
  EXPECT_NEAR(variation([](double t) { return t * t; }, p).value, 1.0 + 5.0, 1e-12);
  EXPECT_THROW(Partition1D({{0, 2}, {1, 3}}), DomainError);
}

TEST(IntegrateStep, MatchesExpectationExactly) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto m = random_lattice_measure(rng, k);
    const ScalarField f = [](std::span<const double> x) { return std::exp(x[0]) - x.back(); };
    EXPECT_EQ(integrate_step(f, StepCdf(m)), m.expectation(f));
  }
}

TEST(IntegrateStep, Examples) {
  std::vector<double> four = {0.25, 0.5, 0.75, 1.0};
  const StepCdf cdf4(AtomicMeasure::from_values(four));
  EXPECT_NEAR(integrate_step([](double) { return 1.0; }, cdf4), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(integrate_step([](double x) { return x; }, cdf4), 0.625);

  std::vector<double> grid(10000);
  for (int i = 1; i <= 10000; ++i) grid[i - 1] = i / 10000.0;
  const StepCdf fine(AtomicMeasure::from_values(grid));
  EXPECT_NEAR(integrate_step([](double x) { return std::sin(x); }, fine), 1.0 - std::cos(1.0), 2e-4);
}

TEST(IntegrateSmooth, UniformLaw) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  const auto uni = SmoothCdf::uniform();
  EXPECT_NEAR(integrate_smooth([](double t) { return t; }, uni, 0, 1, opts).value, 0.5, 1e-12);
  EXPECT_NEAR(integrate_smooth([](double t) { return std::sin(t); }, uni, 0, 1, opts).value,
              1.0 - std::cos(1.0), 1e-12);
}

TEST(IntegrateSmooth, SquareRootLawAgainstBruteForceSums) {
  const auto sqrt_law = SmoothCdf::on_interval([](double t) { return std::sqrt(t); },
                                               RealFn([](double t) { return 0.5 / std::sqrt(t); }),
                                               0.0, 1.0);
  // Oracle: Riemann-Stieltjes sums of t d(sqrt t) on refining partitions.
  // Cells near 0 contribute O(h^1.5) error, so the sums settle slowly.
  double previous = 0.0;
  double oracle = 0.0;
  for (int cells : {10000, 100000, 1000000}) {
    double s = 0.0;
    for (int j = 0; j < cells; ++j) {
      const double a = static_cast<double>(j) / cells, b = static_cast<double>(j + 1) / cells;
      s += 0.5 * (a + b) * (std::sqrt(b) - std::sqrt(a));
    }
    previous = oracle;
    oracle = s;
  }
  EXPECT_LT(std::abs(oracle - previous), 1e-8);
  const auto r = integrate_smooth([](double t) { return t; }, sqrt_law, 0, 1);
  EXPECT_NEAR(r.value, oracle, 1e-8);
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-10);
  EXPECT_LE(r.error, 1e-10);
}

TEST(IntegrateSmooth, Errors) {
  SmoothCdf no_density{[](std::span<const double> x) { return x[0]; }, std::nullopt,
                       HyperBox::interval(0, 1)};
  EXPECT_THROW(integrate_smooth([](double t) { return t; }, no_density, 0, 1), DomainError);
  EXPECT_THROW(integrate_smooth([](double t) { return t; }, SmoothCdf::uniform(), 0, 2), DomainError);
  QuadratureOptions tight;
  tight.abs_tol = 1e-14;
  tight.max_panels = 3;
  EXPECT_THROW(integrate_smooth([](double t) { return std::sin(40 * t); }, SmoothCdf::uniform(), 0, 1,
                                tight),
               NumericalError);
}

TEST(IntegrateSmooth, InfiniteSupport) {
  // Standard normal: E[X^2] = 1.
  const auto normal = SmoothCdf::on_interval(
      [](double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); },
      RealFn([](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2 * kPi); }), -INFINITY,
      INFINITY);
  EXPECT_NEAR(integrate_smooth([](double t) { return t * t; }, normal, -INFINITY, INFINITY).value, 1.0,
              1e-9);
}

TEST(IntegrateSmooth, DensityReductionIn2D) {
  // phi(x, y) = x^2 y^3 on [0,1]^2 with mixed partial 6 x y^2.
  const ScalarField phi = [](std::span<const double> x) { return x[0] * x[0] * x[1] * x[1] * x[1]; };
  const ScalarField dens = [](std::span<const double> x) { return 6.0 * x[0] * x[1] * x[1]; };
  const SmoothCdf law{phi, dens, HyperBox({0, 0}, {1, 1})};
  const ScalarField f = [](std::span<const double> x) { return std::cos(x[0] + 2 * x[1]); };
  QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  const auto r = integrate_smooth(f, law, HyperBox({0, 0}, {1, 1}), opts);
  const auto sums = riemann_stieltjes_oracle_nd(f, phi, HyperBox({0, 0}, {1, 1}), 9);
  // Midpoint sums converge at O(h^2); h = 2^-9.
  EXPECT_NEAR(sums.back(), r.value, 1e-5 + r.error);
  EXPECT_LT(std::abs(sums[9] - r.value), std::abs(sums[6] - r.value));
}

TEST(IntegrateByParts, Examples) {
  const auto id = [](double t) { return t; };
  const auto one = [](double) { return 1.0; };
  EXPECT_NEAR(integrate_by_parts(id, one, id, Interval{0, 1}).value, 0.5, 1e-12);
  const auto r = integrate_by_parts(id, one, frac_limit_cdf, Interval{0, 1});
  EXPECT_NEAR(r.value, 1.0 - constants::euler_gamma, 1e-10);
  const auto c = [](double) { return 2.5; };
  const auto zero = [](double) { return 0.0; };
  const auto phi = [](double t) { return t * t * t; };
  EXPECT_NEAR(integrate_by_parts(c, zero, phi, Interval{-1, 2}).value, 2.5 * (8.0 + 1.0), 1e-12);
}

TEST(IntegrateByParts, AgreesWithDensityRoute) {
  const auto law = SmoothCdf::on_interval([](double t) { return t * t; },
                                          RealFn([](double t) { return 2 * t; }), 0, 1);
  const auto f = [](double t) { return std::exp(t); };
  const double by_parts = integrate_by_parts(f, f, [&law](double t) { return law(t); }, Interval{0, 1}).value;
  const double density = integrate_smooth(f, law, 0, 1).value;
  EXPECT_NEAR(by_parts, density, 1e-9);
  EXPECT_NEAR(density, 2.0, 1e-9);  // integral of 2 t e^t on [0,1]
}

TEST(RiemannStieltjesOracle, Examples) {
  const auto sums = riemann_stieltjes_oracle([](double t) { return t; }, [](double t) { return t * t; },
                                             Interval{0, 1}, 12);
  ASSERT_EQ(sums.size(), 13u);
  EXPECT_NEAR(sums.back(), 2.0 / 3.0, 1e-3);

  const auto phi = [](double t) { return std::atan(3 * t); };
  for (double s : riemann_stieltjes_oracle([](double) { return 1.0; }, phi, Interval{-1, 2}, 10)) {
    EXPECT_NEAR(s, phi(2) - phi(-1), 1e-14);
  }
  const auto sine = riemann_stieltjes_oracle([](double t) { return std::sin(t); },
                                             [](double t) { return t; }, Interval{0, 1}, 12);
  EXPECT_NEAR(sine.back(), 1.0 - std::cos(1.0), 1e-7);
}

}  // namespace
}  // namespace asymptolim
