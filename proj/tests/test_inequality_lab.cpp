#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "fdb/inequality_lab.hpp"

using namespace fdb;

namespace {

constexpr double kPi = std::numbers::pi;

RealField wave(const Grid& g, double k) {
  return RealField::from_function(g, [k](double x) { return std::cos(k * x); });
}

double jap2s(double xi, double s) { return std::pow(1.0 + xi * xi, s); }

CommutatorSweep quick_sweep(int trials = 12) {
  CommutatorSweep sw;
  sw.trials = trials;
  return sw;
}

SimConfig small_run(double beta) {
  SimConfig c;
  c.n = 256;
  c.length = 50.0;
  c.params.epsilon = 0.1;
  c.params.beta = beta;
  c.t_end = 2.0;
  c.stride = 5;
  c.initial.velocity = "same";
  return c;
}

bool is_commutator(const std::string& id) {
  return id.find("comm") != std::string::npos || id == "KJs" || id == "JsJmu" ||
         id == "sqrtT_JsJmu";
}

}  // namespace

TEST_CASE("registry lists every estimate once") {
  const auto& reg = commutator_registry();
  CHECK(reg.size() == 18);
  std::set<std::string> ids;
  for (const auto& c : reg) ids.insert(c.id);
  CHECK(ids.size() == reg.size());
  CHECK(commutator_case("chiK_comm").mu_uniform);
  CHECK(commutator_case("chiK_comm").uses_beta);
  CHECK_FALSE(commutator_case("kato_ponce_prod").mu_uniform);
  CHECK_THROWS_AS(commutator_case("nope"), std::invalid_argument);
  CHECK_THROWS_AS(run_commutator_case("nope", quick_sweep(), commutator_fields()),
                  std::invalid_argument);
}

TEST_CASE("commutators with a constant vanish") {
  const Grid g(256, 2 * kPi);
  const RealField f = RealField::constant(g, 1.7);
  const RealField h = random_field(g, 1.0, 40, 5);
  for (const auto& c : commutator_registry()) {
    if (!is_commutator(c.id)) continue;
    CAPTURE(c.id);
    for (double mu : {1e-3, 1.0}) {
      const auto ev = evaluate_case(c.id, mu, 0.2, c.default_s, 0.6, f, h);
      CHECK(ev.lhs <= 1e-10 * ev.rhs);
    }
  }
}

TEST_CASE("identity symbol gives zero commutator") {
  const Grid g(256, 2 * kPi);
  const RealField f = random_field(g, 1.0, 40, 3);
  const RealField h = random_field(g, 1.0, 40, 4);
  const auto ev = evaluate_case("kato_ponce_comm", 1.0, 1.0, 0.0, 0.6, f, h);
  CHECK(ev.lhs <= 1e-13 * ev.rhs);
}

TEST_CASE("product and embedding sides on single modes") {
  const double L = 2 * kPi;
  const Grid g(128, L);
  const double a = 5, b = 3, s = 2;
  const auto ev = evaluate_case("kato_ponce_prod", 1.0, 1.0, s, 0.6, wave(g, a), wave(g, b));
  // cos a x cos b x = (cos (a+b)x + cos (a-b)x) / 2
  const double lhs = std::sqrt(L / 8 * (jap2s(a + b, s) + jap2s(a - b, s)));
  CHECK(ev.lhs == doctest::Approx(lhs).epsilon(1e-12));
  const double rhs = std::sqrt(L / 2) * (std::sqrt(jap2s(a, s)) + std::sqrt(jap2s(b, s)));
  CHECK(ev.rhs == doctest::Approx(rhs).epsilon(1e-12));

  const auto em = evaluate_case("sobolev_embed", 1.0, 1.0, 0.25, 0.6, wave(g, 4), wave(g, 4));
  CHECK(em.lhs == doctest::Approx(std::pow(3 * L / 8, 0.25)).epsilon(1e-12));
  CHECK(em.rhs == doctest::Approx(std::sqrt(std::sqrt(4.0) * L / 2)).epsilon(1e-12));
}

TEST_CASE("reports are deterministic under fixed seeds") {
  const auto sw = quick_sweep(6);
  const auto a = run_commutator_case("Jmu_comm", sw, commutator_fields());
  const auto b = run_commutator_case("Jmu_comm", sw, commutator_fields());
  CHECK(to_json(a).dump() == to_json(b).dump());
  auto other = sw;
  other.seed = 99;
  const auto c = run_commutator_case("Jmu_comm", other, commutator_fields());
  CHECK(c.max_ratio != a.max_ratio);
  CHECK(point_records(a).size() == a.points.size());
  CHECK(summary_csv_row(a).rfind("Jmu_comm,", 0) == 0);
}

TEST_CASE("chiK_comm is finite and stable across mu") {
  const auto r = run_commutator_case("chiK_comm", quick_sweep(), commutator_fields());
  CHECK(r.points.size() == 25);
  CHECK(std::isfinite(r.max_ratio));
  CHECK(r.max_ratio > 0.0);
  CHECK(r.mu_spread < 10.0);
  CHECK(r.passed);
}

TEST_CASE("parameters outside an estimate are not swept") {
  const auto r = run_commutator_case("kato_ponce_comm", quick_sweep(4), commutator_fields());
  CHECK(r.points.size() == 1);
  const auto t = run_commutator_case("Tmu_comm", quick_sweep(4), commutator_fields());
  CHECK(t.points.size() == 5);
}

TEST_CASE("coercivity brackets") {
  EnsembleSpec ens;
  ens.count = 20;
  ModelParams p;
  p.beta = 0.1;
  for (double mu : {0.01, 1.0}) {
    p.mu = mu;
    const auto r = coercivity_probe(EnergyKind::E, p, 2.0, ens);
    CHECK(r.min_lower >= p.beta / 2);
    CHECK(r.min_ratio >= r.min_lower);
    CHECK(r.max_ratio <= r.max_upper);
  }

  p.variant = Variant::WhithamBoussinesq2;
  p.mu = 0.1;
  double lo = 1e300, hi = 0;
  for (double beta : {0.01, 0.1, 1.0}) {
    p.beta = beta;
    const auto r = coercivity_probe(EnergyKind::ScrE, p, 2.0, ens);
    const double width = r.max_upper / r.min_lower;
    lo = std::min(lo, width);
    hi = std::max(hi, width);
  }
  CHECK(hi / lo < 2.0);
}

TEST_CASE("energy rate probe") {
  SimConfig zero = small_run(1.0);
  zero.initial.amplitude = 0.0;
  const auto z = energy_rate_probe(zero, 2.0, EnergyKind::E);
  CHECK(z.skipped);
  CHECK(z.sup_ratio == 0.0);

  const auto coarse = energy_rate_probe(small_run(1.0), 2.0, EnergyKind::E);
  SimConfig fine = small_run(1.0);
  fine.n = 512;
  const auto refined = energy_rate_probe(fine, 2.0, EnergyKind::E);
  SimConfig half = small_run(1.0);
  half.dt = coarse.dt / 2;
  const auto halved = energy_rate_probe(half, 2.0, EnergyKind::E);
  CHECK(std::isfinite(coarse.sup_ratio));
  CHECK(coarse.sup_ratio > 0.0);
  for (double r : {refined.sup_ratio, halved.sup_ratio}) {
    CHECK(r / coarse.sup_ratio < 2.0);
    CHECK(coarse.sup_ratio / r < 2.0);
  }

  // c_beta^2 = beta above 1/3: a ninefold range, checked within a factor 5
  const double r13 = energy_rate_probe(small_run(1.0 / 3), 2.0, EnergyKind::E).sup_ratio;
  const double r3 = energy_rate_probe(small_run(3.0), 2.0, EnergyKind::E).sup_ratio;
  CHECK(r3 / r13 > 9.0 / 5);
  CHECK(r3 / r13 < 9.0 * 5);
}

TEST_CASE("difference probe") {
  SimConfig c = small_run(1.0);
  c.initial.velocity = "zero";
  c.t_end = 5.0;
  const auto none = difference_probe(c, 0.0);
  CHECK(none.g0 == 0.0);
  CHECK(none.gronwall_c == 0.0);
  CHECK(none.sup_rate == 0.0);

  const auto a = difference_probe(c, 1e-3);
  CHECK(std::isfinite(a.gronwall_c));
  for (double d : {1e-4, 1e-5}) {
    const auto b = difference_probe(c, d);
    CHECK(b.gronwall_c == doctest::Approx(a.gronwall_c).epsilon(0.01));
  }
  SimConfig h = c;
  h.dt = a.dt / 2;
  const auto b = difference_probe(h, 1e-4);
  CHECK(std::fabs(b.gronwall_c - a.gronwall_c) < 0.1 * std::fabs(a.gronwall_c));

  SimConfig wb2 = c;
  wb2.params.variant = Variant::WhithamBoussinesq2;
  CHECK(std::isfinite(difference_probe(wb2, 1e-4).gronwall_c));

  SimConfig flat = c;
  flat.params.epsilon = 0.0;
  CHECK_THROWS_AS(difference_probe(flat, 1e-3), std::invalid_argument);
}
