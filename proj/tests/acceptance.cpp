// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fdb/experiments.hpp"
#include "fdb/inequality_lab.hpp"
#include "fdb/symbol_bounds.hpp"
#include "fdb/timestepper.hpp"
#include "oracles.hpp"

using namespace fdb;
using Wide = boost::multiprecision::cpp_bin_float_50;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kMus[] = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
const double kBetas[] = {0.05, 0.2, 1.0 / 3.0, 1.0, 3.0};
const Variant kSystems[] = {Variant::FullDispersion, Variant::WhithamBoussinesq,
                            Variant::WhithamBoussinesq2};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

const char* short_name(Variant v) {
  switch (v) {
    case Variant::FullDispersion:
      return "FD";
    case Variant::WhithamBoussinesq:
      return "WB";
    case Variant::WhithamBoussinesq2:
      return "WB2";
    default:
      return "REG";
  }
}

SimConfig desk(Variant v, int n = 1024, double length = 100.0) {
  SimConfig c;
  c.n = n;
  c.length = length;
  c.params.variant = v;
  c.params.epsilon = 0.1;
  c.params.beta = 1.0;
  c.params.mu = 1.0;
  c.s_values = {0.0, 2.0};
  return c;
}

double state_distance(const State& a, const State& b) {
  return std::sqrt(std::pow(norm_L2(a.zeta - b.zeta), 2) + std::pow(norm_L2(a.v - b.v), 2));
}

// ---------------------------------------------------------------------------

void symbol_bounds(Outcome& o) {
  const BoundSweep sweep = BoundSweep::standard();
  int failed = 0;
  for (const auto& id : bound_registry()) {
    const BoundReport r = check_pointwise_bound(id, sweep);
    if (!r.passed) {
      ++failed;
      o.detail << id << " worst " << fmt(r.worst_ratio) << "; ";
    }
  }
  o.require(failed == 0, std::to_string(failed) + " bounds violated");
  o.detail << bound_registry().size() << " bounds, " << sweep.xis.size() << " xi points";
}

void sigma_zero_and_cutoffs(Outcome& o) {
  double worst = 0.0;
  for (double mu : kMus) {
    for (double beta : kBetas) {
      for (double xi : log_grid(1e-6, 1e4, 1000)) {
        if (std::sqrt(mu) * xi > 20.0) continue;
        const Wide x = sqrt(Wide(mu)) * Wide(xi);
        const Wide k = tanh(x) / x * (1 + Wide(beta) * x * x);
        const double ref = static_cast<double>(1 / x + Wide(beta) * x - k);
        const double f = eval_sigma_zero(mu, beta, xi);
        worst = std::max(worst, std::fabs(f * f - ref) / ref);
      }
    }
  }
  double partition = 0.0;
  for (double mu : kMus) {
    for (double xi : log_grid(1e-6, 1e4, 1000)) {
      const double a = eval_cutoff(CutoffKind::Low, mu, xi);
      const double b = eval_cutoff(CutoffKind::High, mu, xi);
      partition = std::max(partition, std::fabs(a * a + b * b - 1.0));
    }
  }
  o.require(worst <= 1e-12, "sigma_zero^2 agreement");
  o.require(partition <= 1e-12, "cutoff partition");
  o.detail << "sigma_zero^2 rel err " << fmt(worst) << ", partition err " << fmt(partition);
}

void taylor_limit(Outcome& o) {
  const ExperimentResult r = dispersion_limit_study({});
  for (const auto& [k, v] : r.fits.items()) o.detail << k << " slope " << fmt(v["slope"]) << "; ";
  o.require(r.passed, "slope outside 4 +- 0.1 or mu = 0 row not identically 1");
}

void convergence(Outcome& o) {
  for (Variant v : kSystems) {
    SimConfig c = desk(v, 256, 50.0);
    c.t_end = 1.0;
    c.stride = 1000000;
    auto final_state = [&](int n, double dt) {
      SimConfig k = c;
      k.n = n;
      k.dt = dt;
      return simulate(k).final_state;
    };
    std::vector<State> runs;
    for (double dt : {0.02, 0.01, 0.005, 0.0025}) runs.push_back(final_state(256, dt));
    o.detail << short_name(v) << " factors";
    for (int i = 0; i + 2 < 4; ++i) {
      const double f = state_distance(runs[i], runs[i + 1]) / state_distance(runs[i + 1], runs[i + 2]);
      o.detail << " " << fmt(f);
      o.require(f >= 14.0 && f <= 18.0, std::string(short_name(v)) + " dt-halving factor");
    }
    const State fine = final_state(512, 0.0025);
    double diff = 0.0, scale = 0.0;
    for (int j = 0; j < 256; ++j) {
      diff = std::max({diff, std::fabs(fine.zeta[2 * j] - runs[3].zeta[j]),
                       std::fabs(fine.v[2 * j] - runs[3].v[j])});
      scale = std::max({scale, std::fabs(runs[3].zeta[j]), std::fabs(runs[3].v[j])});
    }
    o.detail << ", N-doubling " << fmt(diff / scale) << "; ";
    o.require(diff / scale <= 1e-8, std::string(short_name(v)) + " N-doubling");
  }
}

void conservation(Outcome& o) {
  for (Variant v : kSystems) {
    SimConfig c = desk(v);
    c.initial.velocity = "same";
    c.stride = 20;
    const State data = make_initial_state(c.grid(), c.initial);
    const double scale_z = std::max(std::fabs(data.zeta.mean()), data.zeta.max_abs());
    const double scale_v = std::max(std::fabs(data.v.mean()), data.v.max_abs());
    const auto t0 = std::chrono::steady_clock::now();
    const SimResult r = simulate(c);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double dz = 0.0, dv = 0.0;
    for (const auto& row : r.series.rows) {
      dz = std::max(dz, std::fabs(row.mean_zeta - r.series.rows.front().mean_zeta) / scale_z);
      dv = std::max(dv, std::fabs(row.mean_v - r.series.rows.front().mean_v) / scale_v);
    }
    o.detail << short_name(v) << " t=" << fmt(r.t_end) << " drift " << fmt(dz) << "/" << fmt(dv)
             << " (" << fmt(secs) << " s); ";
    o.require(r.admissible && !r.stopped, std::string(short_name(v)) + " run not admissible");
    o.require(dz <= 1e-10 && dv <= 1e-10, std::string(short_name(v)) + " mean drift");
    o.require(secs < 120.0, std::string(short_name(v)) + " runtime");
  }
}

void linear_dispersion(Outcome& o) {
  const Grid g(64, 2 * kPi);
  const int mode = 3;
  for (Variant v : kSystems) {
    SimConfig c;
    c.n = g.size();
    c.length = g.length();
    c.params.variant = v;
    c.params.epsilon = 0.0;
    const auto m = oracle::single_mode(v, c.params.mu, c.params.beta, g.wavenumber(mode));
    const double period = 2 * kPi / m.omega;
    c.t_end = period;
    c.dt = period / 200;
    c.stride = 1000;
    const State start = oracle::single_mode_state(g, m, 1.0, 0.0);
    const SimResult r = simulate(c, start);
    const auto c0 = forward(start.zeta).coeffs[mode];
    const auto c1 = forward(r.final_state.zeta).coeffs[mode];
    const double phase = std::fabs(std::arg(c1 / c0));
    o.detail << short_name(v) << " " << fmt(phase) << "; ";
    o.require(phase <= 1e-6, std::string(short_name(v)) + " phase error");
  }
}

void energy_rate(Outcome& o) {
  const std::pair<Variant, EnergyKind> pairs[] = {{Variant::FullDispersion, EnergyKind::E},
                                                  {Variant::WhithamBoussinesq, EnergyKind::CalE},
                                                  {Variant::WhithamBoussinesq2, EnergyKind::ScrE}};
  for (const auto& [v, kind] : pairs) {
    SimConfig c = desk(v, 256, 50.0);
    c.initial.velocity = "same";
    c.stride = 5;
    const auto base = energy_rate_probe(c, 2.0, kind);
    SimConfig half = c;
    half.dt = base.dt / 2;
    half.stride = 10;
    SimConfig fine = c;
    fine.n = 512;
    const auto h = energy_rate_probe(half, 2.0, kind);
    const auto f = energy_rate_probe(fine, 2.0, kind);
    o.detail << short_name(v) << "/" << to_string(kind) << " " << fmt(base.sup_ratio) << " "
             << fmt(h.sup_ratio) << " " << fmt(f.sup_ratio) << "; ";
    const std::string tag = std::string(short_name(v)) + " energy rate";
    o.require(std::isfinite(base.sup_ratio) && !base.skipped && base.sup_ratio > 0.0, tag);
    for (double r : {h.sup_ratio, f.sup_ratio}) {
      o.require(std::isfinite(r) && r <= 2 * base.sup_ratio && 2 * r >= base.sup_ratio,
                tag + " refinement");
    }
  }
}

void coercivity(Outcome& o) {
  EnsembleSpec ens;
  ens.count = 100;
  double worst_small = std::numeric_limits<double>::infinity();
  double worst_large = std::numeric_limits<double>::infinity();
  double max_upper = 0.0;
  for (double mu : {0.01, 0.1, 1.0}) {
    for (double beta : {0.05, 0.2}) {
      ModelParams p;
      p.mu = mu;
      p.beta = beta;
      const auto r = coercivity_probe(EnergyKind::E, p, 2.0, ens);
      const double lower = std::min(r.min_ratio, r.min_lower);
      worst_small = std::min(worst_small, lower / (beta / 2));
      max_upper = std::max({max_upper, r.max_upper, r.max_ratio});
      o.require(lower >= beta / 2, "beta/2 lower bound at mu=" + fmt(mu) + " beta=" + fmt(beta));
    }
    for (double beta : {1.0 / 3.0, 1.0, 3.0}) {
      for (double h0 : {0.25, 0.5, 0.9}) {
        ModelParams p;
        p.mu = mu;
        p.beta = beta;
        p.h0 = h0;
        const auto r = coercivity_probe(EnergyKind::E, p, 2.0, ens);
        const double lower = std::min(r.min_ratio, r.min_lower);
        worst_large = std::min(worst_large, lower / (h0 / 4));
        max_upper = std::max({max_upper, r.max_upper, r.max_ratio});
        o.require(lower >= h0 / 4, "h0/4 lower bound at mu=" + fmt(mu) + " beta=" + fmt(beta));
      }
    }
  }
  o.require(std::isfinite(max_upper), "upper ratio not finite");
  double spread = 1.0;
  for (double mu : {0.01, 0.1, 1.0}) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double beta : {0.01, 0.1, 1.0}) {
      ModelParams p;
      p.variant = Variant::WhithamBoussinesq2;
      p.mu = mu;
      p.beta = beta;
      const auto r = coercivity_probe(EnergyKind::ScrE, p, 2.0, ens);
      const double width = r.max_upper / r.min_lower;
      lo = std::min(lo, width);
      hi = std::max(hi, width);
    }
    spread = std::max(spread, hi / lo);
  }
  o.require(spread < 2.0, "WB2 bracket varies by 2x or more across beta");
  o.detail << "lower/(beta/2) >= " << fmt(worst_small) << ", lower/(h0/4) >= " << fmt(worst_large)
           << ", max upper " << fmt(max_upper) << ", WB2 width spread " << fmt(spread);
}

void lifespan(Outcome& o) {
  for (Variant v : kSystems) {
    LifespanSpec spec;
    spec.base = desk(v);
    const ExperimentResult r = sweep_lifespan(spec);
    const double alpha = r.fits.value("alpha", std::numeric_limits<double>::quiet_NaN());
    o.detail << short_name(v) << " alpha " << fmt(alpha) << "; ";
    o.require(r.passed, std::string(short_name(v)) + " exponent outside [0.8, 1.2]");
  }
}

void bona_smith(Outcome& o) {
  const ExperimentResult rates = mollifier_rates({});
  BonaSmithSpec spec;
  spec.base = desk(Variant::FullDispersion);
  const ExperimentResult evolved = bona_smith_convergence(spec);
  o.detail << "mollifier exponents " << fmt(rates.fits["growth_exponent"]) << " / "
           << fmt(rates.fits["decay_exponent"]) << " (targets 1 / 1), evolved order "
           << fmt(evolved.fits.value("order", 0.0));
  o.require(rates.passed, "mollifier-only rates");
  o.require(evolved.passed, "evolved decay order below 1.5");
}

void difference(Outcome& o) {
  for (Variant v : kSystems) {
    SimConfig c = desk(v, 256, 50.0);
    c.t_end = 5.0;
    c.stride = 5;
    const auto ref = difference_probe(c, 1e-4);
    o.detail << short_name(v) << " C " << fmt(ref.gronwall_c);
    for (double d : {1e-3, 1e-5}) {
      const auto r = difference_probe(c, d);
      o.detail << " " << fmt(r.gronwall_c);
      o.require(std::fabs(r.gronwall_c - ref.gronwall_c) <= 0.2 * std::fabs(ref.gronwall_c),
                std::string(short_name(v)) + " perturbation-size stability");
    }
    SimConfig half = c;
    half.dt = ref.dt / 2;
    half.stride = 10;
    const auto h = difference_probe(half, 1e-4);
    o.detail << ", dt/2 " << fmt(h.gronwall_c) << "; ";
    o.require(std::isfinite(ref.gronwall_c), std::string(short_name(v)) + " C not finite");
    o.require(std::fabs(h.gronwall_c - ref.gronwall_c) <= 0.1 * std::fabs(ref.gronwall_c),
              std::string(short_name(v)) + " dt-halving stability");
  }
}

void commutators(Outcome& o) {
  const CommutatorSweep sweep;
  const RandomFieldSpec fields = commutator_fields();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> first;
  double worst_spread = 1.0;
  for (const auto& c : commutator_registry()) {
    const RatioReport r = run_commutator_case(c.id, sweep, fields);
    first.push_back(to_json(r).dump());
    if (r.mu_uniform_claimed) worst_spread = std::max(worst_spread, r.mu_spread);
    if (!r.passed) o.detail << c.id << " max " << fmt(r.max_ratio) << " spread " << fmt(r.mu_spread) << "; ";
    o.require(r.passed, c.id);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool same = true;
  std::size_t i = 0;
  for (const auto& c : commutator_registry()) {
    same = same && to_json(run_commutator_case(c.id, sweep, fields)).dump() == first[i++];
  }
  o.require(same, "rerun differs");
  o.require(secs < 600.0, "registry runtime");
  o.detail << commutator_registry().size() << " cases x " << sweep.trials
           << " trials per point, worst mu spread " << fmt(worst_spread) << ", registry "
           << fmt(secs) << " s, rerun identical";
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no runtime limit
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "symbol bound suite", 10, symbol_bounds},
      {2, "sigma_zero factorization and cutoff partition", 0, sigma_zero_and_cutoffs},
      {3, "Taylor limit slope", 5, taylor_limit},
      {4, "spectral and temporal convergence", 60, convergence},
      {5, "mean conservation", 0, conservation},
      {6, "linear dispersion", 0, linear_dispersion},
      {7, "energy-rate probe", 300, energy_rate},
      {8, "coercivity probe", 0, coercivity},
      {9, "lifespan sweep", 900, lifespan},
      {10, "Bona-Smith and mollifier rates", 0, bona_smith},
      {11, "difference probe", 0, difference},
      {12, "commutator registry", 0, commutators},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) o.require(false, "runtime limit " + fmt(c.limit_s) + " s");
    if (!o.pass) ++failures;
    std::printf("%s criterion %2d: %s | %s | %.2f s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
