#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fdb/functionals.hpp"
#include "fdb/random_field.hpp"

using namespace fdb;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams params(double mu, double beta, Variant v = Variant::FullDispersion) {
  ModelParams p;
  p.mu = mu;
  p.beta = beta;
  p.variant = v;
  return p;
}

RealField cosine(const Grid& g) {
  return RealField::from_function(g, [](double x) { return std::cos(x); });
}

}  // namespace

TEST_CASE("non-cavitation margins") {
  const Grid g(64, 2 * kPi);
  auto a = check_non_cavitation(RealField(g), 0.1, 0.5);
  CHECK(a.pass);
  CHECK(a.margin == doctest::Approx(0.5));
  a = check_non_cavitation(RealField::constant(g, -1.0), 1.0, 0.5);
  CHECK_FALSE(a.pass);
  CHECK(a.margin == doctest::Approx(-0.5));
  a = check_non_cavitation(-0.4 * cosine(g), 1.0, 0.5);
  CHECK(a.pass);
  CHECK(a.margin == doctest::Approx(0.1));
}

TEST_CASE("beta-dependent surface condition") {
  const Grid g(32, 1.0);
  auto a = check_beta_surface(RealField(g), 1.0, 0.2);
  CHECK(a.pass);
  CHECK(a.margin == doctest::Approx(0.1));
  a = check_beta_surface(RealField::constant(g, -0.2), 1.0, 0.2);
  CHECK_FALSE(a.pass);
  CHECK(a.margin == doctest::Approx(-0.1));
  a = check_beta_surface(RealField::constant(g, -0.05), 1.0, 0.2);
  CHECK(a.pass);
  CHECK(a.margin == doctest::Approx(0.05));
  CHECK_THROWS_AS(check_beta_surface(RealField(g), 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(check_beta_surface(RealField(g), 1.0, 0.0), DomainError);
}

TEST_CASE("epsilon bound and horizon") {
  CHECK(epsilon_bound(1.0, 2.0, 1.0) == doctest::Approx(0.5));
  CHECK(epsilon_bound(1.0 / 3.0, 3.0, 1.0) == doctest::Approx(1.0));
  CHECK(epsilon_bound(0.1, 10.0, 1.0) == doctest::Approx(0.01));
  CHECK(horizon_T(1.0, 2.0, 1.0) == doctest::Approx(0.5));
  CHECK(horizon_T(2.0, 1.0, 1.0) == doctest::Approx(0.25));
  CHECK(horizon_T(0.1, 1.0, 1.0) == doctest::Approx(0.1));
  CHECK_THROWS_AS(epsilon_bound(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(horizon_T(-1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS(epsilon_bound(1.0, 0.0, 1.0));
}

TEST_CASE("energies of zero and constant states") {
  const Grid g(32, 3.0);
  const RealField zero(g);
  const ModelParams p = params(0.5, 0.7);
  for (auto kind : {EnergyKind::E, EnergyKind::CalE, EnergyKind::ScrE}) {
    CHECK(energy(kind, 2.0, zero, zero, p).value == 0.0);
  }
  const double a = 0.3;
  const double b = -0.8;
  const RealField eta = RealField::constant(g, a);
  const RealField u = RealField::constant(g, b);
  const double expect = 3.0 * a * a + (1 + a) * 3.0 * b * b;
  const double e = energy_E(1.5, eta, u, p).value;
  const double ce = energy_calE(1.5, eta, u, p).value;
  const double se = energy_scrE(1.5, eta, u, p).value;
  CHECK(e == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::fabs(e - ce) <= 1e-10);
  CHECK(std::fabs(e - se) <= 1e-10);

  const EnergyReport r = energy_E(1.5, eta, u, p);
  CHECK(r.lower_ratio == doctest::Approx(1.0));
  CHECK(r.upper_ratio == doctest::Approx(1.0 + a));
}

TEST_CASE("single-mode energies") {
  const Grid g(64, 2 * kPi);
  const RealField zero(g);
  const ModelParams p = params(1.0, 1.0);
  CHECK(energy_E(0.0, zero, cosine(g), p).value ==
        doctest::Approx(eval_K(1.0, 1.0, 1.0) * kPi).epsilon(1e-13));
  CHECK(energy_calE(0.0, cosine(g), zero, p).value ==
        doctest::Approx(kPi * eval_T(1.0, 1.0) * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(energy_scrE(0.0, cosine(g), zero, p).value ==
        doctest::Approx(kPi * 2.0).epsilon(1e-13));
}

TEST_CASE("cubic part and scaling") {
  const Grid g(128, 20.0);
  const ModelParams p = params(0.3, 0.5);
  const RealField eta = random_field(g, 1.0, 30, 1, 0.2);
  const RealField u = random_field(g, 1.0, 30, 2, 0.5);
  const double s = 2.0;
  const RealField ju = apply_multiplier(u, SymbolSpec::single(SymbolKind::BesselJ, 1.0, 0.0, s));
  const EnergyReport r = energy_E(s, eta, u, p);
  CHECK(r.cubic == doctest::Approx(inner(ju, eta * ju)).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(r.quadratic + r.cubic).epsilon(1e-14));
  const double lam = 1.7;
  for (auto kind : {EnergyKind::E, EnergyKind::CalE, EnergyKind::ScrE}) {
    const EnergyReport a = energy(kind, s, eta, u, p);
    const EnergyReport b = energy(kind, s, lam * eta, lam * u, p);
    CHECK(b.quadratic == doctest::Approx(lam * lam * a.quadratic).epsilon(1e-12));
    CHECK(b.cubic == doctest::Approx(lam * lam * lam * a.cubic).epsilon(1e-12));
  }
}

TEST_CASE("coercivity bracket contains the measured ratio") {
  const Grid g(256, 30.0);
  for (double beta : {0.05, 1.0}) {
    const ModelParams p = params(0.1, beta);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const RealField eta = random_field(g, 1.0, 80, seed, 0.3);
      const RealField u = random_field(g, 1.0, 80, seed + 1000, 1.0);
      for (auto kind : {EnergyKind::E, EnergyKind::CalE, EnergyKind::ScrE}) {
        const EnergyReport r = energy(kind, 2.0, eta, u, p);
        const double n = energy_norm(kind, 2.0, eta, u, p);
        CHECK(r.norm_sq == doctest::Approx(n * n).epsilon(1e-12));
        CHECK(r.ratio >= r.lower_ratio * (1 - 1e-12));
        CHECK(r.ratio <= r.upper_ratio * (1 + 1e-12));
        CHECK(r.value > 0.0);
      }
    }
  }
}

TEST_CASE("energy JSON record") {
  EnergyReport r;
  r.s = 2;
  r.value = 3;
  r.lower_ratio = 0.5;
  r.upper_ratio = 4;
  const auto j = to_json(r);
  CHECK(j.at("s") == 2.0);
  CHECK(j.at("value") == 3.0);
  CHECK(j.at("lower_ratio") == 0.5);
  CHECK(j.at("upper_ratio") == 4.0);
}

TEST_CASE("parameter validation and variant names") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.beta = 0.0;
  CHECK_THROWS(p.validate());
  p.variant = Variant::WhithamBoussinesq;
  CHECK_NOTHROW(p.validate());
  p.epsilon = 1.0;
  CHECK_THROWS(p.validate());
  for (auto v : {Variant::FullDispersion, Variant::WhithamBoussinesq,
                 Variant::WhithamBoussinesq2, Variant::Regularized}) {
    CHECK(parse_variant(to_string(v)) == v);
  }
  CHECK_THROWS(parse_variant("whitham"));
}
