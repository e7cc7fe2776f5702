// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptolim/cli.hpp"
#include "asymptolim/convergence.hpp"
#include "asymptolim/problems.hpp"
#include "asymptolim/special.hpp"
#include "asymptolim/stieltjes.hpp"

using namespace asymptolim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

int failures = 0;

void report(int id, const std::string& title, const std::function<Check()>& body) {
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("exception: ") + e.what();
  }
  if (!c.ok) ++failures;
  std::printf("[%s] criterion %d: %s%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(),
              c.detail.empty() ? "" : " | ", c.detail.c_str());
  std::fflush(stdout);
}

struct CliOutcome {
  int code;
  std::string out;
  std::string err;
};

CliOutcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "asymptolim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

AtomicMeasure random_measure(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> count(1, 40);
  std::uniform_int_distribution<int> lattice(-6, 6);
  std::uniform_real_distribution<double> w(0.1, 3.0);
  std::vector<Point> pts;
  std::vector<double> weights;
  const int m = count(rng);
  for (int k = 0; k < m; ++k) {
    Point p(dim);
    // Coarse lattice coordinates so atoms collide and sit on box faces.
    for (auto& x : p) x = 0.5 * lattice(rng);
    pts.push_back(std::move(p));
    weights.push_back(w(rng));
  }
  return AtomicMeasure::from_points(pts, weights);
}

HyperBox random_box(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> lattice(-7, 7);
  std::vector<double> lo(dim), hi(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    int a = lattice(rng), b = lattice(rng);
    if (a > b) std::swap(a, b);
    lo[d] = 0.5 * a;
    hi[d] = 0.5 * b + 0.5;
  }
  return HyperBox(lo, hi);
}

}  // namespace

int main() {
  const double gamma = constants::euler_gamma;

  report(1, "Example 1: (1/n) sum sin({sqrt k}) at n=1e6 vs 1 - cos 1, single-threaded", [] {
    Check c;
    const auto start = Clock::now();
    const auto r = run_cli({"solve", "example1", "--f", "sin", "--n", "1000000", "--threads", "1"});
    const double elapsed = seconds_since(start);
    c.require(r.code == 0, "exit code " + std::to_string(r.code) + " " + r.err);
    if (r.code != 0) return c;
    const auto res = nlohmann::json::parse(r.out)["results"][0];
    const double closed = res["closed_form"].get<double>();
    const double err = std::abs(res["empirical"].get<double>() - closed);
    c.require(std::abs(closed - (1.0 - std::cos(1.0))) <= 1e-10, fmt("closed_form %.12g", closed));
    c.require(err <= 5e-3, fmt("abs_error %.3g > 5e-3", err));
    c.require(elapsed <= 10.0, fmt("runtime %.2fs > 10s", elapsed));
    c.detail += (c.detail.empty() ? "" : "; ") + fmt("abs_error %.3g, %.3fs", err, elapsed);
    return c;
  });

  report(2, "Example 2: proportion of sin(2 pi {sqrt k}) in [-1/2, 1/2] at n=1e6 vs 1/3", [] {
    Check c;
    const auto r = interval_proportion_sin(1000000, -0.5, 0.5);
    const double err = std::abs(r.empirical - 1.0 / 3.0);
    c.require(err <= 5e-3, fmt("|empirical - 1/3| %.3g > 5e-3", err));
    c.require(std::abs(r.closed_form - 1.0 / 3.0) <= 1e-15, "closed form is not 1/3");
    c.detail += (c.detail.empty() ? "" : "; ") + fmt("abs_error %.3g", err);
    return c;
  });

  report(3, "Example 3: sup_t |phi_n(t) - (psi(t) + 1/t + gamma)| on 0.05..0.95", [] {
    Check c;
    const std::vector<std::uint64_t> ns = {10000, 100000, 1000000};
    const auto r = cdf_sequence_probe(frac_n_over_i_family(), frac_limit_law(), default_unit_grid(), ns);
    c.require(r.grid.size() == 19, "grid is not 0.05..0.95 step 0.05");
    // The target is also checked against the unshifted form psi(t) + 1/t + gamma.
    for (std::size_t k = 0; k < r.grid.size(); ++k) {
      const double t = r.grid[k];
      const double unshifted = digamma(t) + 1.0 / t + constants::euler_gamma;
      c.require(std::abs(r.target_values[k] - unshifted) <= 1e-12, fmt("target mismatch at t=%.2f", t));
    }
    c.require(r.sup_errors[2] <= 2e-2, fmt("sup error at 1e6 %.3g > 2e-2", r.sup_errors[2]));
    int decays = 0;
    for (bool b : r.monotone_decay) decays += b;
    c.require(decays >= 2, "fewer than 2 of 3 non-increasing steps");
    c.detail += (c.detail.empty() ? "" : "; ") +
                fmt("sup errors %.3g, %.3g, %.3g", r.sup_errors[0], r.sup_errors[1], r.sup_errors[2]);
    return c;
  });

  report(4, "Example 4: (1/n) sum {n/i} vs 1 - gamma and Dirichlet vs 2 gamma - 1 at n=1e6", [gamma] {
    Check c;
    const auto mean = frac_n_over_i_mean(1000000);
    const double e1 = std::abs(mean.empirical - (1.0 - gamma));
    const auto dir = dirichlet_weak(1000000);
    const double e2 = std::abs(dir.empirical - (2.0 * gamma - 1.0));
    c.require(e1 <= 5e-3, fmt("frac mean error %.3g > 5e-3", e1));
    c.require(e2 <= 5e-3, fmt("Dirichlet error %.3g > 5e-3", e2));
    c.detail += (c.detail.empty() ? "" : "; ") + fmt("errors %.3g, %.3g", e1, e2);
    return c;
  });

  report(5, "Polynomial family P=i^2, f=id, q=r=2, n=1e8 vs 1/3", [] {
    Check c;
    const auto start = Clock::now();
    const PolySpec spec{{0.0, 0.0, 1.0}, 2, 1.0, [](double x) { return x; }};
    const auto r = polynomial_family(spec, 100000000);
    const double elapsed = seconds_since(start);

    const SmoothCdf sqrt_law = SmoothCdf::on_interval([](double x) { return std::sqrt(x); },
                                                      RealFn([](double x) { return 0.5 / std::sqrt(x); }), 0, 1);
    QuadratureOptions opts;
    opts.abs_tol = 1e-9;
    const double smooth = integrate_smooth([](double x) { return x; }, sqrt_law, 0, 1, opts).value;
    long double brute = 0;
    for (int i = 1; i <= 10000; ++i) brute += static_cast<long double>(i) * i / (1e8L * 1e4L);

    c.require(polynomial_count(spec, 100000000) == 10000, "N(n) != 1e4");
    c.require(std::abs(smooth - 1.0 / 3.0) <= 1e-3, fmt("integrate_smooth %.12g", smooth));
    c.require(std::abs(static_cast<double>(brute) - 1.0 / 3.0) <= 1e-3, "brute-force oracle off");
    c.require(std::abs(r.closed_form - 1.0 / 3.0) <= 1e-3, fmt("closed_form %.12g", r.closed_form));
    c.require(r.abs_error <= 1e-3, fmt("abs_error %.3g", r.abs_error));
    c.require(elapsed < 1.0, fmt("runtime %.3fs >= 1s", elapsed));
    c.detail += (c.detail.empty() ? "" : "; ") + fmt("abs_error %.3g, %.4fs", r.abs_error, elapsed);
    return c;
  });

  report(6, "Special functions: psi, psi', zeta(2,x) within 1e-10; series vs closed form within 1e-12", [gamma] {
    Check c;
    const double pi = constants::pi;
    c.require(std::abs(digamma(1.0) + gamma) <= 1e-10, "psi(1)");
    c.require(std::abs(digamma(0.5) - (-gamma - 2.0 * std::log(2.0))) <= 1e-10, "psi(1/2)");
    c.require(std::abs(trigamma(1.0) - pi * pi / 6.0) <= 1e-10, "psi'(1)");
    double worst_zeta = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const double x = 0.5 * k;
      worst_zeta = std::max(worst_zeta, std::abs(hurwitz_zeta(2.0, x) - trigamma(x)));
    }
    c.require(worst_zeta <= 1e-10, fmt("zeta(2,x) vs psi'(x) %.3g", worst_zeta));
    double worst_series = 0.0;
    for (int k = 0; k <= 60; ++k) {
      const double t = 0.01 * k;
      worst_series = std::max(worst_series, std::abs(frac_limit_cdf_series(t, 80).value - frac_limit_cdf(t)));
    }
    c.require(worst_series <= 1e-12, fmt("series gap %.3g", worst_series));
    c.detail += (c.detail.empty() ? "" : "; ") + fmt("zeta gap %.2g, series gap %.2g", worst_zeta, worst_series);
    return c;
  });

  report(7, "Stieltjes engine: box measure = Delta, step integral, smooth vs oracle, unit variation", [] {
    Check c;
    std::mt19937_64 rng(20261018);

    double worst_box = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t dim = 1 + trial % 3;
      const auto m = random_measure(rng, dim);
      const auto box = random_box(rng, dim);
      const ScalarField cdf = [&m](std::span<const double> x) { return m.cdf(x); };
      worst_box = std::max(worst_box, std::abs(m.measure_box(box) - delta_box(cdf, box)));
    }
    c.require(worst_box <= 1e-12, fmt("measure_box vs Delta %.3g", worst_box));

    int step_mismatch = 0;
    double worst_variation = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t dim = 1 + trial % 2;
      const auto m = random_measure(rng, dim);
      const ScalarField f = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += std::sin(v) + v * v;
        return s;
      };
      const StepCdf step(m);
      step_mismatch += integrate_step(f, step) != m.expectation(f);
      worst_variation = std::max(worst_variation, std::abs(variation(step).value - 1.0));
    }
    c.require(step_mismatch == 0, std::to_string(step_mismatch) + " integrate_step mismatches");
    c.require(worst_variation <= 1e-12, fmt("StepCdf variation off by %.3g", worst_variation));

    const std::vector<std::pair<RealFn, const char*>> integrands = {
        {[](double x) { return x; }, "id"},
        {[](double x) { return std::sin(x); }, "sin"},
        {[](double x) { return std::exp(-x); }, "exp"},
        {[](double x) { return std::cos(3 * x); }, "cos3"},
        {[](double x) { return x * x * x - x; }, "cubic"},
    };
    const std::vector<std::pair<SmoothCdf, RealFn>> laws = {
        {SmoothCdf::uniform(), [](double x) { return std::clamp(x, 0.0, 1.0); }},
        {SmoothCdf::on_interval([](double x) { return x * x; }, RealFn([](double x) { return 2 * x; }), 0, 1),
         [](double x) { return x * x; }},
        {SmoothCdf::on_interval([](double x) { return std::sin(constants::pi * x / 2); },
                                RealFn([](double x) { return constants::pi / 2 * std::cos(constants::pi * x / 2); }),
                                0, 1),
         [](double x) { return std::sin(constants::pi * x / 2); }},
        {frac_limit_law(), [](double x) { return frac_limit_cdf(x); }},
    };
    int smooth_cases = 0;
    int smooth_failures = 0;
    double worst_smooth = 0.0;
    for (const auto& [f, fname] : integrands) {
      for (const auto& [law, phi] : laws) {
        QuadratureOptions opts;
        opts.abs_tol = 1e-11;
        const auto q = integrate_smooth(f, law, 0, 1, opts);
        const auto sums = riemann_stieltjes_oracle(f, phi, Interval{0, 1}, 14);
        const double last = sums.back();
        const double combined = q.error + std::abs(last - sums[sums.size() - 2]) + 1e-12;
        const double gap = std::abs(q.value - last);
        worst_smooth = std::max(worst_smooth, gap);
        smooth_failures += gap > combined;
        ++smooth_cases;
      }
    }
    c.require(smooth_cases == 20, "expected 20 smooth cases");
    c.require(smooth_failures == 0, std::to_string(smooth_failures) + " smooth cases outside tolerance");

    QuadratureOptions opts;
    opts.abs_tol = 1e-10;
    const double mass = integrate_smooth([](double) { return 1.0; }, frac_limit_law(), 0, 1, opts).value;
    c.require(std::abs(mass - 1.0) <= 1e-9, fmt("density mass %.15g", mass));
    c.detail += (c.detail.empty() ? "" : "; ") +
                fmt("box gap %.2g, smooth gap %.2g, mass gap %.2g", worst_box, worst_smooth, std::abs(mass - 1.0));
    return c;
  });

  report(8, "Variation limit: uniform{i/n} has var_n = 1 = var_limit; t/n has var_n -> 0", [] {
    Check c;
    std::vector<AtomicMeasure> measures;
    for (std::uint64_t n : {10ull, 100ull, 1000ull, 10000ull}) measures.push_back(canonical_uniform_family().generator(n));
    std::vector<RealFn> cdfs;
    for (const auto& m : measures) cdfs.push_back([&m](double t) { return m.cdf(t); });
    const auto u = variation_limit_check(cdfs, [](double t) { return std::clamp(t, 0.0, 1.0); },
                                         Partition1D::single(0, 1));
    for (double v : u.var_n) c.require(std::abs(v - 1.0) <= 1e-12, fmt("var_n %.15g", v));
    c.require(std::abs(u.var_limit - 1.0) <= 1e-12, fmt("var_limit %.15g", u.var_limit));
    c.require(u.converged, "uniform family not flagged converged");

    std::vector<RealFn> shrinking;
    const std::vector<double> ns = {1, 10, 100, 1000, 10000, 100000};
    for (double n : ns) shrinking.push_back([n](double t) { return t / n; });
    const auto s = variation_limit_check(shrinking, [](double) { return 0.0; }, Partition1D::single(0, 1), 1e-4);
    bool decreasing = true;
    for (std::size_t j = 1; j < s.var_n.size(); ++j) decreasing = decreasing && s.var_n[j] < s.var_n[j - 1];
    c.require(decreasing, "t/n variations not decreasing");
    c.require(s.var_limit == 0.0, "limit variation is not 0");
    c.require(std::abs(s.var_n.back() - 1e-5) <= 1e-15, fmt("var at n=1e5 %.3g", s.var_n.back()));
    c.require(s.converged, "t/n family not flagged converged");
    return c;
  });

  report(9, "Push-forward chain: E_m[f o g] = E_{g#m}[f] = integrate_step(f, g#m) on 1000 instances", [] {
    Check c;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coef(-1.5, 1.5);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t dim = 1 + trial % 3;
      const std::size_t out_dim = 1 + (trial / 3) % 3;
      const auto m = random_measure(rng, dim);
      std::vector<double> a(dim * out_dim);
      for (auto& v : a) v = coef(rng);
      const double shift = coef(rng);
      const VectorMap g = [a, dim, out_dim, shift](std::span<const double> x) {
        Point y(out_dim, shift);
        for (std::size_t r = 0; r < out_dim; ++r) {
          for (std::size_t k = 0; k < dim; ++k) y[r] += a[r * dim + k] * x[k];
          y[r] = std::tanh(y[r]) + 0.25 * std::round(2.0 * y[r]);
        }
        return y;
      };
      const ScalarField f = [](std::span<const double> y) {
        double s = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) s += std::cos(y[k] * static_cast<double>(k + 1)) + y[k];
        return s;
      };
      const ScalarField composed = [&](std::span<const double> x) {
        const Point y = g(x);
        return f(y);
      };
      const auto pushed = m.pushforward(g);
      const double direct = m.expectation(composed);
      const double via_push = pushed.expectation(f);
      const double via_step = integrate_step(f, StepCdf(pushed));
      worst = std::max({worst, std::abs(direct - via_push), std::abs(direct - via_step)});
    }
    c.require(worst <= 1e-12, fmt("max gap %.3g", worst));
    c.detail += (c.detail.empty() ? "" : "; ") + fmt("max gap %.2g", worst);
    return c;
  });

  report(10, "Determinism: numeric output bit-identical across --threads 1, 4, 8", [] {
    Check c;
    const std::vector<std::vector<std::string>> commands = {
        {"solve", "example1", "--f", "sin", "--n", "1000000"},
        {"solve", "example2", "--n", "1000000"},
        {"solve", "example3", "--n", "1000000"},
        {"solve", "example4", "--n", "1000000"},
        {"solve", "dirichlet", "--n", "1000000"},
        {"solve", "poly", "--coeffs", "0,0,1", "--r", "2", "--n", "100000000"},
        {"sweep", "example3", "--n", "10000,100000,1000000"},
        {"sweep", "example1", "--n", "1000,100000"},
    };
    for (const auto& cmd : commands) {
      for (const char* format : {"json", "csv"}) {
        std::string base;
        for (const char* threads : {"1", "4", "8"}) {
          auto args = cmd;
          args.insert(args.end(), {"--format", format, "--threads", threads});
          const auto r = run_cli(args);
          if (r.code != 0) {
            c.require(false, cmd[1] + " exit " + std::to_string(r.code));
            continue;
          }
          std::string numeric;
          if (std::string(format) == "json") {
            auto j = nlohmann::json::parse(r.out);
            j.erase("timestamp");
            j.erase("config");
            numeric = j.dump();
          } else {
            numeric = r.out.substr(r.out.find('\n') + 1);  // drop the config comment line
          }
          if (base.empty()) base = numeric;
          c.require(numeric == base, cmd[0] + " " + cmd[1] + " " + format + " differs at threads=" + threads);
        }
      }
    }
    return c;
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
