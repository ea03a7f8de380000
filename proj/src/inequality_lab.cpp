#include "fdb/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fdb/parallel.hpp"

namespace fdb {

namespace {

double c2_beta(double beta) { return beta < 1.0 / 3.0 ? 1.0 : beta; }

double riesz_half_hs(const RealField& f, double s) {
  return std::sqrt(weighted_spectral_sum(forward(f), [s](double xi) {
    return std::fabs(xi) * std::pow(1.0 + xi * xi, s);
  }));
}

SymbolSpec product(const std::string& name, double mu, double beta,
                   std::vector<SymbolFactor> factors) {
  return SymbolSpec(name, mu, beta, std::move(factors));
}

SymbolFactor bessel(double s) { return {SymbolKind::BesselJ, s}; }
constexpr SymbolFactor kJmu{SymbolKind::ScaledBesselJmuHalf};
constexpr SymbolFactor kSqrtT{SymbolKind::SqrtT};
constexpr SymbolFactor kSqrtK{SymbolKind::SqrtK};
constexpr SymbolFactor kChi1{SymbolKind::Cutoff1};
constexpr SymbolFactor kChi2{SymbolKind::Cutoff2};

struct Inputs {
  double mu;
  double beta;
  double s;
  double t0;
  const RealField& f;
  const RealField& g;
};

using Evaluator = std::function<CaseEvaluation(const Inputs&)>;

// [m(D), f] d/dx g
double comm_dx(const SymbolSpec& m, const RealField& f, const RealField& g) {
  return norm_L2(commutator(m, f, derivative(g)));
}

// (a ||f||_{H^s} + b ||D^{1/2} f||_{H^s}) ||d/dx g||_{H^t0} + (f <-> g)
double symmetric_rhs(const Inputs& in, double a, double b) {
  auto lead = [&](const RealField& h) {
    return a * norm_Hs(h, in.s) + b * riesz_half_hs(h, in.s);
  };
  return lead(in.f) * norm_Hs(derivative(in.g), in.t0) +
         lead(in.g) * norm_Hs(derivative(in.f), in.t0);
}

struct Entry {
  CaseInfo info;
  Evaluator eval;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&t](CaseInfo info, Evaluator e) { t.push_back({std::move(info), std::move(e)}); };

    add({"KJs", 2.0, true, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("sqrtK_Js", in.mu, in.beta, {kSqrtK, bessel(in.s)});
      return CaseEvaluation{comm_dx(m, in.f, in.g),
                            symmetric_rhs(in, c2_beta(in.beta),
                                          std::sqrt(in.beta) * std::pow(in.mu, 0.25))};
    });
    add({"JsJmu", 2.0, false, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("Js_Jmu", in.mu, 0.0, {bessel(in.s), kJmu});
      return CaseEvaluation{comm_dx(m, in.f, in.g),
                            symmetric_rhs(in, 1.0, std::pow(in.mu, 0.25))};
    });
    add({"sqrtT_JsJmu", 2.0, false, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("sqrtT_Js_Jmu", in.mu, 0.0, {kSqrtT, bessel(in.s), kJmu});
      const double rhs = norm_Hs(in.f, in.s) * norm_Hs(in.g, in.t0 + 1.0) +
                         norm_Hs(in.f, in.t0 + 1.0) * norm_Hs(in.g, in.s);
      return CaseEvaluation{comm_dx(m, in.f, in.g), rhs};
    });
    add({"kato_ponce_prod", 2.0, false, false, true}, [](const Inputs& in) {
      const SymbolSpec js = product("Js", in.mu, 0.0, {bessel(in.s)});
      const double lhs = norm_L2(apply_multiplier(dealiased_product(in.f, in.g), js));
      const double rhs = in.f.max_abs() * norm_L2(apply_multiplier(in.g, js)) +
                         norm_L2(apply_multiplier(in.f, js)) * in.g.max_abs();
      return CaseEvaluation{lhs, rhs};
    });
    add({"kato_ponce_comm", 2.0, false, false, true}, [](const Inputs& in) {
      const SymbolSpec js = product("Js", in.mu, 0.0, {bessel(in.s)});
      const SymbolSpec js1 = product("Js-1", in.mu, 0.0, {bessel(in.s - 1.0)});
      const double lhs = norm_L2(commutator(js, in.f, in.g));
      const double rhs = derivative(in.f).max_abs() * norm_L2(apply_multiplier(in.g, js1)) +
                         norm_L2(apply_multiplier(in.f, js)) * in.g.max_abs();
      return CaseEvaluation{lhs, rhs};
    });
    add({"frac_leibniz", 0.5, false, false, true}, [](const Inputs& in) {
      // sigma = s, sigma_1 = sigma, sigma_2 = 0, p = p_1 = 2, p_2 = infinity
      const SymbolSpec d = SymbolSpec::single(SymbolKind::Riesz, in.mu, 0.0, in.s);
      const RealField lhs = apply_multiplier(dealiased_product(in.f, in.g), d) -
                            dealiased_product(in.f, apply_multiplier(in.g, d)) -
                            dealiased_product(in.g, apply_multiplier(in.f, d));
      return CaseEvaluation{norm_L2(lhs), norm_L2(apply_multiplier(in.f, d)) * in.g.max_abs()};
    });
    add({"chiK_prod", 2.0, true, true, false}, [](const Inputs& in) {
      const SymbolSpec m = product("chi1_sqrtK", in.mu, in.beta, {kChi1, kSqrtK});
      return CaseEvaluation{norm_L2(apply_multiplier(in.f, m)), norm_L2(in.f)};
    });
    add({"chiK_comm", 2.0, true, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("chi1_sqrtK", in.mu, in.beta, {kChi1, kSqrtK});
      return CaseEvaluation{comm_dx(m, in.f, in.g), norm_Hs(in.f, in.s) * norm_L2(in.g)};
    });
    add({"sigma_half_prod", 2.0, true, true, false}, [](const Inputs& in) {
      const SymbolSpec m = product("chi2_sigma_half", in.mu, in.beta,
                                   {kChi2, {SymbolKind::SigmaHalf}});
      return CaseEvaluation{norm_L2(apply_multiplier(in.f, m)),
                            norm_L2(in.f) + std::pow(in.mu, 0.25) * riesz_half_hs(in.f, 0.0)};
    });
    add({"sigma_half_comm", 2.0, true, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("chi2_sigma_half", in.mu, in.beta,
                                   {kChi2, {SymbolKind::SigmaHalf}});
      return CaseEvaluation{comm_dx(m, in.f, in.g), std::pow(in.mu, 0.25) *
                                                        norm_Hs(in.f, in.s) *
                                                        norm_Hs(in.g, 0.5)};
    });
    add({"sigma_zero_prod", 2.0, true, true, false}, [](const Inputs& in) {
      const SymbolSpec m = product("chi2_sigma_zero", in.mu, in.beta,
                                   {kChi2, {SymbolKind::SigmaZero}});
      return CaseEvaluation{norm_L2(apply_multiplier(in.f, m)), norm_L2(in.f)};
    });
    add({"sigma_zero_comm", 2.0, true, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("chi2_sigma_zero", in.mu, in.beta,
                                   {kChi2, {SymbolKind::SigmaZero}});
      return CaseEvaluation{comm_dx(m, in.f, in.g), norm_Hs(in.f, in.s) * norm_L2(in.g)};
    });
    add({"TmuJmu_comm", 2.0, false, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("sqrtT_Jmu", in.mu, 0.0, {kSqrtT, kJmu});
      return CaseEvaluation{comm_dx(m, in.f, in.g), norm_Hs(in.f, in.s) * norm_L2(in.g)};
    });
    add({"TmuJs_comm", 2.0, false, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("sqrtT_Js", in.mu, 0.0, {kSqrtT, bessel(in.s)});
      return CaseEvaluation{comm_dx(m, in.f, in.g), norm_Hs(in.f, in.s) * norm_Hs(in.g, in.s)};
    });
    add({"Tmu_comm", 2.0, false, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("sqrtT", in.mu, 0.0, {kSqrtT});
      return CaseEvaluation{comm_dx(m, in.f, in.g), norm_Hs(in.f, in.s) * norm_L2(in.g)};
    });
    add({"dxT_comm", 2.0, false, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("sqrtT", in.mu, 0.0, {kSqrtT});
      return CaseEvaluation{norm_L2(derivative(commutator(m, in.f, in.g))),
                            norm_Hs(in.f, in.s) * norm_L2(in.g)};
    });
    add({"Jmu_comm", 2.0, false, true, true}, [](const Inputs& in) {
      const SymbolSpec m = product("Jmu", in.mu, 0.0, {kJmu});
      return CaseEvaluation{comm_dx(m, in.f, in.g),
                            norm_Hs(in.f, in.s) * norm_L2(apply_multiplier(in.g, m))};
    });
    add({"sobolev_embed", 0.25, false, false, false}, [](const Inputs& in) {
      const double p = 2.0 / (1.0 - 2.0 * in.s);
      const SymbolSpec d = SymbolSpec::single(SymbolKind::Riesz, in.mu, 0.0, in.s);
      return CaseEvaluation{norm_Lp(in.f, p), norm_L2(apply_multiplier(in.f, d))};
    });
    return t;
  }();
  return table;
}

const Entry& lookup(std::string_view id) {
  for (const auto& e : entries()) {
    if (e.info.id == id) return e;
  }
  throw std::invalid_argument("unknown commutator case: " + std::string(id));
}

bool mu_dependent(const CaseInfo& info) {
  return info.mu_uniform;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + mid));
  }
  return m;
}

}  // namespace

RandomFieldSpec commutator_fields() {
  RandomFieldSpec f;
  f.n = 2048;
  f.length = 4.0 * std::acos(-1.0);
  f.decay = 0.0;
  f.k_max = f.n / 6;
  return f;
}

const std::vector<CaseInfo>& commutator_registry() {
  static const std::vector<CaseInfo> infos = [] {
    std::vector<CaseInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const CaseInfo& commutator_case(std::string_view id) { return lookup(id).info; }

CaseEvaluation evaluate_case(std::string_view id, double mu, double beta, double s,
                             double t0, const RealField& f, const RealField& g) {
  return lookup(id).eval(Inputs{mu, beta, s, t0, f, g});
}

RatioReport run_commutator_case(std::string_view id, const CommutatorSweep& sweep,
                                const RandomFieldSpec& fields) {
  const Entry& entry = lookup(id);
  if (sweep.trials < 1) throw std::invalid_argument("trials must be positive");
  if (sweep.mus.empty() || sweep.betas.empty()) throw std::invalid_argument("empty sweep");

  RatioReport rep;
  rep.case_id = entry.info.id;
  rep.s = sweep.s.value_or(entry.info.default_s);
  rep.t0 = sweep.t0;
  rep.mu_uniform_claimed = entry.info.mu_uniform;

  // parameters that do not enter the estimate are not swept
  const std::vector<double> mus =
      mu_dependent(entry.info) ? sweep.mus : std::vector<double>{sweep.mus.back()};
  const std::vector<double> betas =
      entry.info.uses_beta ? sweep.betas : std::vector<double>{1.0};

  const Grid grid = fields.grid();
  struct Pair {
    RealField f;
    RealField g;
    double scale;
  };
  const int trials = sweep.trials;
  const std::vector<Pair> pairs = parallel_map(trials, [&](std::size_t i) {
    const std::uint64_t a = sweep.seed + 2 * i;
    // band limits log-spaced over the resolved range; g is paired with a
    // different band than f
    auto band = [&](std::size_t level) {
      if (!sweep.multiscale || trials == 1) return fields.k_max;
      const double lo = std::min(2.0, double(fields.k_max));
      const double q = double(level) / (trials - 1);
      return std::max(1, static_cast<int>(std::lround(lo * std::pow(fields.k_max / lo, q))));
    };
    const std::size_t j = (i * 7 + 3) % trials;
    RealField f = random_field(grid, fields.decay, band(i), a, fields.amplitude, fields.offset);
    RealField g = random_field(grid, fields.decay, band(j), a + 1, fields.amplitude,
                               fields.offset);
    const double scale = norm_L2(f) * norm_L2(g);
    return Pair{std::move(f), std::move(g), scale};
  });

  struct Task {
    double mu;
    double beta;
  };
  std::vector<Task> tasks;
  for (double beta : betas) {
    for (double mu : mus) tasks.push_back({mu, beta});
  }

  const double s = rep.s;
  rep.points = parallel_map(tasks.size(), [&](std::size_t k) {
    SweepPoint pt;
    pt.mu = tasks[k].mu;
    pt.beta = tasks[k].beta;
    std::vector<double> ratios;
    for (int i = 0; i < sweep.trials; ++i) {
      const Pair& p = pairs[i];
      const CaseEvaluation ev =
          entry.eval(Inputs{pt.mu, pt.beta, s, sweep.t0, p.f, p.g});
      if (!(ev.rhs >= 1e-14 * p.scale)) {
        ++pt.skipped;
        continue;
      }
      const double r = ev.lhs / ev.rhs;
      if (ratios.empty() || r > pt.max_ratio) {
        pt.max_ratio = r;
        pt.worst_seed = sweep.seed + 2 * i;
      }
      ratios.push_back(r);
      ++pt.trials;
    }
    pt.median_ratio = median(ratios);
    return pt;
  });

  std::vector<double> all;
  for (const auto& pt : rep.points) {
    rep.trials += pt.trials;
    rep.skipped += pt.skipped;
    if (pt.trials > 0 && (all.empty() || pt.max_ratio > rep.max_ratio)) {
      rep.max_ratio = pt.max_ratio;
      rep.worst_mu = pt.mu;
      rep.worst_beta = pt.beta;
      rep.worst_seed = pt.worst_seed;
    }
    if (pt.trials > 0) all.push_back(pt.median_ratio);
  }
  rep.median_ratio = median(all);

  rep.mu_spread = 1.0;
  if (rep.mu_uniform_claimed) {
    for (double beta : betas) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (const auto& pt : rep.points) {
        // roundoff-level ratios count as a vanishing left-hand side
        if (pt.beta != beta || pt.trials == 0 || pt.max_ratio < 1e-12) continue;
        lo = std::min(lo, pt.max_ratio);
        hi = std::max(hi, pt.max_ratio);
      }
      if (hi > 0.0) rep.mu_spread = std::max(rep.mu_spread, hi / lo);
    }
  }
  rep.passed = std::isfinite(rep.max_ratio) && rep.trials > 0 &&
               (!rep.mu_uniform_claimed || rep.mu_spread < 10.0);
  return rep;
}

nlohmann::json to_json(const RatioReport& r) {
  nlohmann::json per_mu = nlohmann::json::array();
  for (const auto& p : r.points) {
    per_mu.push_back({{"mu", p.mu}, {"beta", p.beta}, {"max_ratio", p.max_ratio}});
  }
  return {{"case_id", r.case_id},
          {"s", r.s},
          {"t0", r.t0},
          {"trials", r.trials},
          {"skipped", r.skipped},
          {"max_ratio", r.max_ratio},
          {"median_ratio", r.median_ratio},
          {"worst", {{"mu", r.worst_mu}, {"beta", r.worst_beta}, {"seed", r.worst_seed}}},
          {"mu_uniform_claimed", r.mu_uniform_claimed},
          {"mu_spread", r.mu_spread},
          {"passed", r.passed},
          {"points", per_mu}};
}

std::vector<nlohmann::json> point_records(const RatioReport& r) {
  std::vector<nlohmann::json> out;
  for (const auto& p : r.points) {
    out.push_back({{"case_id", r.case_id},
                   {"mu", p.mu},
                   {"beta", p.beta},
                   {"s", r.s},
                   {"t0", r.t0},
                   {"trials", p.trials},
                   {"skipped", p.skipped},
                   {"max_ratio", p.max_ratio},
                   {"median_ratio", p.median_ratio},
                   {"worst_seed", p.worst_seed}});
  }
  return out;
}

std::string summary_csv_header() {
  return "case_id,s,trials,skipped,max_ratio,median_ratio,mu_spread,passed";
}

std::string summary_csv_row(const RatioReport& r) {
  std::ostringstream os;
  os.precision(10);
  os << r.case_id << "," << r.s << "," << r.trials << "," << r.skipped << "," << r.max_ratio
     << "," << r.median_ratio << "," << r.mu_spread << "," << (r.passed ? "true" : "false");
  return os.str();
}

// ---------------------------------------------------------------------------

CoercivityReport coercivity_probe(EnergyKind kind, const ModelParams& p, double s,
                                  const EnsembleSpec& ens) {
  if (ens.count < 1) throw std::invalid_argument("ensemble count must be positive");
  const Grid grid(ens.n, ens.length);
  const bool surface = (p.variant == Variant::FullDispersion || p.variant == Variant::Regularized) &&
                       p.beta > 0.0 && p.beta < 1.0 / 3.0;
  const double floor = surface ? 1.0 - p.beta / 2.0 : p.h0;

  struct Sample {
    double ratio;
    double lower;
    double upper;
  };
  const auto samples = parallel_map(ens.count, [&](std::size_t i) {
    const std::uint64_t seed = ens.seed + 2 * i;
    RealField eta = random_field(grid, ens.decay, ens.k_max, seed);
    eta *= (1.0 - floor) / -eta.min();
    const RealField u = random_field(grid, ens.decay, ens.k_max, seed + 1);
    const EnergyReport r = energy(kind, s, eta, u, p);
    return Sample{r.ratio, r.lower_ratio, r.upper_ratio};
  });

  CoercivityReport rep;
  rep.energy = kind;
  rep.mu = p.mu;
  rep.beta = p.beta;
  rep.s = s;
  rep.count = ens.count;
  rep.min_ratio = rep.min_lower = std::numeric_limits<double>::infinity();
  rep.max_ratio = rep.max_upper = -std::numeric_limits<double>::infinity();
  for (const auto& x : samples) {
    rep.min_ratio = std::min(rep.min_ratio, x.ratio);
    rep.max_ratio = std::max(rep.max_ratio, x.ratio);
    rep.min_lower = std::min(rep.min_lower, x.lower);
    rep.max_upper = std::max(rep.max_upper, x.upper);
  }
  return rep;
}

nlohmann::json to_json(const CoercivityReport& r) {
  return {{"energy", to_string(r.energy)}, {"mu", r.mu},          {"beta", r.beta},
          {"s", r.s},                      {"count", r.count},    {"min_ratio", r.min_ratio},
          {"max_ratio", r.max_ratio},      {"min_lower", r.min_lower},
          {"max_upper", r.max_upper}};
}

// ---------------------------------------------------------------------------

EnergyRateReport energy_rate_probe(const SimConfig& base, double s, EnergyKind kind) {
  SimConfig cfg = base;
  cfg.energy = kind;
  cfg.s_values = {s};
  cfg.out_dir.clear();
  const SimResult res = simulate(cfg);
  const double eps2 = cfg.params.epsilon * cfg.params.epsilon;

  EnergyRateReport rep;
  rep.variant = cfg.params.variant;
  rep.energy = kind;
  rep.s = s;
  rep.dt = res.dt;
  const auto& rows = res.series.rows;
  bool any = false;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double e = eps2 * rows[i].energies[0];
    if (!(e >= 1e-30)) continue;
    any = true;
    ++rep.samples;
    const double de = eps2 * (rows[i + 1].energies[0] - rows[i - 1].energies[0]) /
                      (rows[i + 1].t - rows[i - 1].t);
    const double r = std::max(de, 0.0) / std::pow(e, 1.5);
    if (r > rep.sup_ratio) {
      rep.sup_ratio = r;
      rep.at_time = rows[i].t;
    }
  }
  rep.skipped = !any;
  return rep;
}

nlohmann::json to_json(const EnergyRateReport& r) {
  return {{"variant", to_string(r.variant)}, {"energy", to_string(r.energy)},
          {"s", r.s},                        {"samples", r.samples},
          {"skipped", r.skipped},            {"sup_ratio", r.sup_ratio},
          {"at_time", r.at_time},            {"dt", r.dt}};
}

// ---------------------------------------------------------------------------

DifferenceReport difference_probe(const SimConfig& cfg, double delta0, std::uint64_t seed) {
  const ModelParams& p = cfg.params;
  p.validate();
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("the difference probe needs epsilon > 0");
  if (!(delta0 >= 0.0)) throw std::invalid_argument("perturbation size must be nonnegative");
  const Grid grid = cfg.grid();
  const Model model(grid, p, cfg.delta);
  const double s_top = *std::max_element(cfg.s_values.begin(), cfg.s_values.end());
  const double eps = p.epsilon;

  State a = make_initial_state(grid, cfg.initial);
  const int k_max = std::max(1, grid.size() / 16);
  RealField rho = random_field(grid, 4.0, k_max, seed);
  RealField rho_v = random_field(grid, 4.0, k_max, seed + 1);
  const double unit = norm_V(rho, rho_v, s_top, p.mu);
  rho *= 1.0 / unit;
  rho_v *= 1.0 / unit;
  State b(a.zeta + delta0 * rho, a.v + delta0 * rho_v);

  const bool x_norm = p.variant == Variant::WhithamBoussinesq2;
  auto gap = [&](const State& u, const State& w) {
    const RealField dz = eps * (u.zeta - w.zeta);
    const RealField dv = eps * (u.v - w.v);
    const double n = x_norm ? norm_X(dz, dv, 0.0, p.beta, p.mu) : norm_V(dz, dv, 0.0, p.mu);
    return n * n;
  };
  auto big = [&](const State& u) { return eps * norm_V(u.zeta, u.v, s_top, p.mu); };

  double t_end = 0.0;
  if (cfg.t_end) {
    t_end = *cfg.t_end;
  } else {
    t_end = horizon_T(p, norm_V(a.zeta, a.v, s_top, p.mu)) / eps;
  }
  double dt = cfg.dt ? *cfg.dt : std::min(auto_dt(model, a), auto_dt(model, b));
  const long steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
  dt = t_end / steps;
  long stride = std::max(1, cfg.stride);
  if (cfg.diag_interval > 0.0) stride = std::max(1L, std::lround(cfg.diag_interval / dt));

  std::vector<double> ts{0.0};
  std::vector<double> gs{gap(a, b)};
  double m = std::max(big(a), big(b));
  const Rhs rhs = [&model](const State& st) { return model(st); };
  for (long n = 1; n <= steps; ++n) {
    a = rk4_step(a, dt, rhs);
    b = rk4_step(b, dt, rhs);
    if (n % stride == 0 || n == steps) {
      ts.push_back(n * dt);
      gs.push_back(gap(a, b));
      m = std::max({m, big(a), big(b)});
    }
  }

  DifferenceReport rep;
  rep.variant = p.variant;
  rep.delta0 = delta0;
  rep.samples = static_cast<int>(ts.size());
  rep.g0 = gs.front();
  rep.m = m;
  rep.dt = dt;
  if (rep.g0 <= 0.0 || m <= 0.0) return rep;
  rep.gronwall_c = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ts.size(); ++i) {
    rep.gronwall_c = std::max(rep.gronwall_c, std::log(gs[i] / rep.g0) / (m * ts[i]));
  }
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const double dg = (gs[i + 1] - gs[i - 1]) / (ts[i + 1] - ts[i - 1]);
    rep.sup_rate = std::max(rep.sup_rate, dg / (m * gs[i]));
  }
  return rep;
}

nlohmann::json to_json(const DifferenceReport& r) {
  return {{"variant", to_string(r.variant)},
          {"delta0", r.delta0},
          {"samples", r.samples},
          {"G0", r.g0},
          {"M", r.m},
          {"gronwall_C", r.gronwall_c},
          {"sup_rate", r.sup_rate},
          {"dt", r.dt}};
}

}  // namespace fdb
