#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fdb/symbol_bounds.hpp"
#include "fdb/symbols.hpp"

using namespace fdb;
using Wide = boost::multiprecision::cpp_bin_float_50;

namespace {

// 1/x + beta x - K in 50 digits: the difference form of sigma_zero^2.
double sigma_zero_sq_wide(double mu, double beta, double xi) {
  const Wide x = sqrt(Wide(mu)) * abs(Wide(xi));
  const Wide k = tanh(x) / x * (1 + Wide(beta) * x * x);
  return static_cast<double>(1 / x + Wide(beta) * x - k);
}

double remainder_wide(double mu, double beta, double xi) {
  const Wide x = sqrt(Wide(mu)) * abs(Wide(xi));
  const Wide k = tanh(x) / x * (1 + Wide(beta) * x * x);
  return static_cast<double>(k - 1 - (Wide(beta) - Wide(1) / 3) * x * x);
}

const double kMus[] = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
const double kBetas[] = {0.05, 0.2, 1.0 / 3.0, 1.0, 3.0};

}  // namespace

TEST_CASE("T symbol reference values") {
  CHECK(eval_T(1.0, 0.0) == 1.0);
  CHECK(eval_T(0.25, 2.0) == doctest::Approx(0.7615941559557649).epsilon(1e-15));
  CHECK(eval_T(1.0, 100.0) == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(eval_T(0.0, 5.0) == 1.0);
  CHECK_THROWS_AS(eval_T(1.0, NAN), DomainError);
  CHECK_THROWS_AS(eval_T(1.0, INFINITY), DomainError);
}

TEST_CASE("K symbol reference values") {
  CHECK(eval_K(1.0, 0.3, 0.0) == 1.0);
  CHECK(eval_K(1.0, 1.0, 1.0) == doctest::Approx(1.5231883119115298).epsilon(1e-15));
  for (double xi : log_grid(1e-3, 1e3, 400)) CHECK(eval_K(1.0, 0.2, xi) >= 0.2);
}

TEST_CASE("sigma symbols") {
  CHECK(eval_sigma_half(1.0, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(eval_sigma_half(1.0, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(eval_sigma_half(0.25, 2.0, 4.0) == doctest::Approx(2.1213203436).epsilon(1e-10));
  CHECK(eval_sigma_zero(1.0, 0.0, 1.0) ==
        doctest::Approx(std::sqrt(1.0 - std::tanh(1.0))).epsilon(1e-14));
  CHECK(eval_sigma_zero(1.0, 0.0, 50.0) < 1e-10);
  CHECK_THROWS_AS(eval_sigma_half(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(eval_sigma_zero(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("sigma_zero factorized form matches the difference form in extended precision") {
  double worst = 0.0;
  for (double mu : kMus) {
    for (double beta : kBetas) {
      for (double xi : log_grid(1e-6, 1e4, 1000)) {
        if (std::sqrt(mu) * xi > 20.0) continue;
        const double f = eval_sigma_zero(mu, beta, xi);
        const double ref = sigma_zero_sq_wide(mu, beta, xi);
        worst = std::max(worst, std::fabs(f * f - ref) / ref);
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("cutoffs") {
  CHECK(eval_cutoff(CutoffKind::Low, 1.0, 0.25) == 1.0);
  CHECK(eval_cutoff(CutoffKind::Low, 1.0, 2.0) == 0.0);
  const double c2 = eval_cutoff(CutoffKind::High, 1.0, 0.75);
  CHECK(c2 > 0.0);
  CHECK(c2 < 1.0);
  const double c1 = eval_cutoff(CutoffKind::Low, 1.0, 0.75);
  CHECK(c2 == doctest::Approx(std::sqrt(1.0 - c1 * c1)));
  for (double mu : kMus) {
    for (double xi : log_grid(1e-6, 1e4, 1000)) {
      const double a = eval_cutoff(CutoffKind::Low, mu, xi);
      const double b = eval_cutoff(CutoffKind::High, mu, xi);
      CHECK(std::fabs(a * a + b * b - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("every symbol is even and the regular ones are finite and nonnegative") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log10xi(-4.0, 3.0);
  const SymbolKind kinds[] = {SymbolKind::K, SymbolKind::T, SymbolKind::SqrtK,
                              SymbolKind::SqrtT, SymbolKind::InvT, SymbolKind::BesselJ,
                              SymbolKind::ScaledBesselJmuHalf, SymbolKind::Riesz,
                              SymbolKind::Cutoff1, SymbolKind::Cutoff2,
                              SymbolKind::SigmaHalf, SymbolKind::SigmaZero,
                              SymbolKind::Mollifier, SymbolKind::SurfaceTension};
  for (SymbolKind k : kinds) {
    const SymbolSpec m = SymbolSpec::single(k, 0.3, 0.7, 0.5);
    for (int i = 0; i < 1000; ++i) {
      const double xi = std::pow(10.0, log10xi(rng));
      const double a = m(xi);
      CHECK(a == m(-xi));
      CHECK(std::isfinite(a));
      CHECK(a >= 0.0);
    }
  }
}

TEST_CASE("T range, monotonicity and series branch") {
  for (double mu : kMus) {
    double prev = 1.0;
    for (double xi : log_grid(1e-3, 1e4, 500)) {
      const double t = eval_T(mu, xi);
      CHECK(t > 0.0);
      CHECK(t <= prev);
      prev = t;
    }
  }
  for (double x : log_grid(1e-8, 0.99e-4, 200)) {
    CHECK(tanh_over_x(x) == doctest::Approx(std::tanh(x) / x).epsilon(1e-12));
  }
}

TEST_CASE("sigma factors vanish outside the high-frequency cutoff") {
  const SymbolSpec m("chi2_sigma0", 1.0, 0.5,
                     {{SymbolKind::Cutoff2}, {SymbolKind::SigmaZero}});
  CHECK(m(0.0) == 0.0);
  CHECK(m(0.3) == 0.0);
  CHECK(m(3.0) > 0.0);
}

TEST_CASE("finite-difference derivatives") {
  const SymbolSpec sqrt_t = SymbolSpec::single(SymbolKind::SqrtT, 1.0, 0.0);
  CHECK(std::fabs(symbol_derivative(sqrt_t, 1, 0.0)) < 1e-10);

  const SymbolSpec sqrt_k = SymbolSpec::single(SymbolKind::SqrtK, 1.0, 1.0);
  const double xi = 10.0;
  const double sech = 1.0 / std::cosh(xi);
  const double k = std::tanh(xi) * (1.0 / xi + xi);
  const double dk = sech * sech * (1.0 / xi + xi) + std::tanh(xi) * (1.0 - 1.0 / (xi * xi));
  const double exact = dk / (2.0 * std::sqrt(k));
  CHECK(symbol_derivative(sqrt_k, 1, xi) == doctest::Approx(exact).epsilon(1e-6));

  // |d^n sqrt T_1| <~ <xi>^{-1/2-n}
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (double x : log_grid(1e-2, 1e3, 200)) {
      worst = std::max(worst, std::fabs(symbol_derivative(sqrt_t, n, x)) *
                                  std::pow(japanese(x), 0.5 + n));
    }
  }
  CHECK(worst < 10.0);
}

TEST_CASE("symbol seminorm") {
  std::vector<double> grid = log_grid(1e-3, 1e3, 300);
  CHECK(seminorm_N(SymbolSpec::identity(), 0.0, grid) == doctest::Approx(1.0));

  // the cutoff transition band sits at sqrt(mu) xi in [1/2, 1]; sample it
  // at the same relative resolution for every mu
  double lo = INFINITY;
  double hi = 0.0;
  for (double mu : kMus) {
    grid = log_grid(0.4 / std::sqrt(mu), 1.1 / std::sqrt(mu), 400);
    const SymbolSpec m("chi1_sqrtK", mu, 1.0, {{SymbolKind::Cutoff1}, {SymbolKind::SqrtK}});
    const double n = seminorm_N(m, 0.0, grid);
    lo = std::min(lo, n);
    hi = std::max(hi, n);
    const double t = seminorm_N(SymbolSpec::single(SymbolKind::SqrtT, mu, 0.0), 0.0, grid);
    CHECK(t < 10.0);
  }
  CHECK(std::isfinite(hi));
  CHECK(hi / lo < 10.0);
}

TEST_CASE("Taylor remainder against extended precision") {
  for (double beta : {0.0, 1.0 / 3.0, 1.0}) {
    for (double r : log_grid(1e-3, 0.5, 60)) {
      const double ref = remainder_wide(1.0, beta, r);
      CHECK(taylor_remainder_K(1.0, beta, r) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(taylor_remainder_K(0.0, beta, 3.0) == 0.0);
  }
  CHECK(eval_K(0.0, 0.7, 123.0) == 1.0);
}

TEST_CASE("K_1 has one interior minimum for beta < 1/3 and none above") {
  const std::vector<double> xs = log_grid(1e-3, 50.0, 4000);
  for (double beta : {0.05, 0.2}) {
    int minima = 0;
    double least = INFINITY;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      const double a = eval_K(1.0, beta, xs[i - 1]);
      const double b = eval_K(1.0, beta, xs[i]);
      const double c = eval_K(1.0, beta, xs[i + 1]);
      if (b < a && b < c) ++minima;
      least = std::min(least, b);
    }
    CHECK(minima == 1);
    CHECK(least >= beta);
  }
  for (double beta : {0.5, 1.0}) {
    for (std::size_t i = 1; i < xs.size(); ++i) {
      CHECK(eval_K(1.0, beta, xs[i]) > eval_K(1.0, beta, xs[i - 1]));
    }
  }
}

TEST_CASE("pointwise bound registry passes on the standard sweep") {
  const BoundSweep sweep = BoundSweep::standard();
  for (const auto& id : bound_registry()) {
    const BoundReport r = check_pointwise_bound(id, sweep);
    INFO(id, " worst ratio ", r.worst_ratio);
    CHECK(r.passed);
    CHECK(r.samples > 0);
  }
  CHECK_THROWS_AS(check_pointwise_bound("no_such_bound", sweep), std::invalid_argument);
}

TEST_CASE("lower bounds at the stated explicit constants") {
  BoundSweep big{{1.0}, {0.5}, log_grid(1e-6, 1e4, 1000), {0.5}};
  CHECK(check_pointwise_bound("K_lower_big_beta", big).passed);
  BoundSweep small{{1.0}, {0.1}, log_grid(1e-6, 1e4, 1000), {0.5}};
  CHECK(check_pointwise_bound("K_lower_small_beta", small).passed);
  const BoundReport t = check_pointwise_bound("taylor_limit", BoundSweep::standard());
  CHECK(t.passed);
  CHECK(t.worst_ratio <= 1.0);
}
