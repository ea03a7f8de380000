#include "fdb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "fdb/config.hpp"
#include "fdb/parallel.hpp"

namespace fdb {

using nlohmann::json;

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_loglog: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  const std::size_t n = lx.size();
  if (n < 2) throw std::invalid_argument("fit_loglog needs two positive points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_loglog needs two distinct abscissae");
  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (f.intercept + f.slope * lx[i]);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  f.points = static_cast<int>(n);
  return f;
}

json to_json(const LogLogFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual},
          {"points", f.points}};
}

json to_json(const ExperimentResult& r) {
  return {{"experiment", r.id},      {"config_hash", r.config_hash}, {"config", r.config},
          {"records", r.records},    {"fits", r.fits},               {"tolerance", r.tolerance},
          {"passed", r.passed},      {"notes", r.notes}};
}

namespace {

ExperimentResult start(std::string id, json config) {
  ExperimentResult r;
  r.id = std::move(id);
  r.config = std::move(config);
  r.config_hash = config_hash(r.config);
  return r;
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : lo * std::pow(hi / lo, double(i) / (n - 1));
  }
  return v;
}

double top_s(const SimConfig& c) { return *std::max_element(c.s_values.begin(), c.s_values.end()); }

}  // namespace

// ---------------------------------------------------------------------------

ExperimentResult sweep_lifespan(const LifespanSpec& spec) {
  json cfg = to_json(spec.base);
  cfg["lifespan"] = {{"eps_list", spec.eps_list}, {"bound_factor", spec.bound_factor}};
  ExperimentResult res = start("sweep-lifespan", cfg);
  res.tolerance = {{"alpha", {spec.alpha_lo, spec.alpha_hi}},
                   {"linear_energy_drift", spec.linear_drift_tol}};
  if (spec.eps_list.empty()) throw std::invalid_argument("eps_list is empty");

  const SimConfig& base = spec.base;
  const State data = make_initial_state(base.grid(), base.initial);
  const double s = top_s(base);
  const double norm0 = norm_V(data.zeta, data.v, s, base.params.mu);
  if (!(norm0 > 0.0)) throw std::invalid_argument("lifespan sweep needs nonzero data");
  const bool whitham = base.params.variant == Variant::WhithamBoussinesq ||
                       base.params.variant == Variant::WhithamBoussinesq2;
  const double k2 = whitham ? base.params.c_user : k2_beta(base.params.beta, base.params.c_user);
  const double tube = spec.bound_factor * k2 * norm0;

  struct Outcome {
    json record;
    double eps = 0.0;
    double t_obs = 0.0;
    bool in_fit = false;
    bool failed_at_start = false;
    bool linear_ok = true;
  };

  auto run_one = [&](std::size_t i) {
    Outcome o;
    o.eps = spec.eps_list[i];
    SimConfig c = base;
    c.params.epsilon = o.eps;
    c.out_dir.clear();
    c.s_values = {s};
    json rec = {{"epsilon", o.eps}};

    if (o.eps == 0.0) {
      if (!base.t_end) throw std::invalid_argument("a linear (eps = 0) run needs a numeric t_end");
      const SimResult r = simulate(c, data);
      const double e0 = r.series.rows.front().energies[0];
      double drift = 0.0;
      for (const auto& row : r.series.rows) {
        drift = std::max(drift, std::fabs(row.energies[0] / e0 - 1.0));
      }
      o.linear_ok = drift <= spec.linear_drift_tol && !r.stopped;
      rec.update({{"linear", true},
                  {"t_end", r.t_end},
                  {"energy_drift", drift},
                  {"norm_end", r.series.rows.back().norms[0]},
                  {"norm0", norm0},
                  {"passed", o.linear_ok}});
      o.record = rec;
      return o;
    }

    c.params.validate();
    const double bound = epsilon_bound(c.params, norm0);
    const Admissibility adm = check_admissibility(data.zeta, c.params);
    const double horizon = horizon_T(c.params, norm0) / o.eps;
    rec.update({{"epsilon_bound", bound}, {"horizon", horizon}, {"depth_margin", adm.margin}});
    if (o.eps > bound || !adm.pass) {
      rec.update({{"admissible", false}, {"in_fit", false}});
      o.record = rec;
      return o;
    }
    c.t_end = horizon;
    const StopRule stop = [&](const State&, const DiagnosticRow& row) -> std::optional<std::string> {
      if (row.margin < 0.0) return "depth condition lost";
      if (row.norms[0] > tube) return "left the bootstrap tube";
      return std::nullopt;
    };
    const SimResult r = simulate(c, data, stop);
    o.t_obs = r.stopped ? r.stop_time : r.t_end;
    o.failed_at_start = r.stopped && r.stop_time == 0.0;
    o.in_fit = o.t_obs > 0.0;
    double peak = 0.0;
    for (const auto& row : r.series.rows) peak = std::max(peak, row.norms[0]);
    rec.update({{"admissible", true},
                {"in_fit", o.in_fit},
                {"t_obs", o.t_obs},
                {"stopped", r.stopped},
                {"stop_reason", r.stop_reason},
                {"dt", r.dt},
                {"steps", r.steps},
                {"peak_norm_ratio", peak / norm0}});
    o.record = rec;
    return o;
  };

  const auto outcomes = parallel_map(spec.eps_list.size(), run_one);

  std::vector<double> eps, t_obs;
  bool linear_ok = true;
  bool any_nonlinear = false, all_fail = true;
  for (const auto& o : outcomes) {
    res.records.push_back(o.record);
    linear_ok = linear_ok && o.linear_ok;
    if (o.eps > 0.0 && o.record.value("admissible", false)) {
      any_nonlinear = true;
      if (!o.failed_at_start) all_fail = false;
    }
    if (o.in_fit) {
      eps.push_back(o.eps);
      t_obs.push_back(o.t_obs);
    }
    if (o.eps > 0.0 && !o.record.value("admissible", false)) {
      res.notes.push_back("epsilon " + std::to_string(o.eps) +
                          " is inadmissible and excluded from the fit");
    }
  }
  if (any_nonlinear && all_fail) {
    throw std::invalid_argument("every epsilon fails at t = 0; check the initial data");
  }

  bool alpha_ok = true;
  if (eps.size() >= 2) {
    const LogLogFit f = fit_loglog(eps, t_obs);
    const double alpha = -f.slope;
    res.fits["T_obs_vs_epsilon"] = to_json(f);
    res.fits["alpha"] = alpha;
    alpha_ok = alpha >= spec.alpha_lo && alpha <= spec.alpha_hi;
  } else if (any_nonlinear) {
    alpha_ok = false;
    res.notes.push_back("fewer than two admissible epsilon values; no exponent fitted");
  }
  res.passed = alpha_ok && linear_ok;
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult bona_smith_convergence(const BonaSmithSpec& spec) {
  json cfg = to_json(spec.base);
  cfg["bona_smith"] = {{"deltas", spec.deltas}, {"t_end", spec.t_end}};
  ExperimentResult res = start("bona-smith", cfg);
  res.tolerance = {{"min_order", spec.min_order}};
  if (spec.deltas.size() < 2) throw std::invalid_argument("bona-smith needs at least two deltas");
  for (std::size_t i = 0; i < spec.deltas.size(); ++i) {
    if (!(spec.deltas[i] > 0.0)) throw std::invalid_argument("deltas must be positive");
    if (i > 0 && spec.deltas[i] > spec.deltas[i - 1]) {
      throw std::invalid_argument("deltas must be decreasing");
    }
  }
  if (!(spec.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");

  ModelParams p = spec.base.params;
  if (!(p.epsilon > 0.0)) throw std::invalid_argument("bona-smith needs epsilon > 0");
  p.variant = Variant::Regularized;
  p.validate();
  const Grid grid = spec.base.grid();
  const State data = make_initial_state(grid, spec.base.initial);
  const RealField eta0 = p.epsilon * data.zeta;
  const RealField u0 = p.epsilon * data.v;

  std::vector<Model> models;
  std::vector<State> starts;
  double dt = spec.base.dt.value_or(std::numeric_limits<double>::infinity());
  for (double d : spec.deltas) {
    models.emplace_back(grid, p, d);
    starts.emplace_back(mollify(eta0, d), mollify(u0, d));
    if (!spec.base.dt) dt = std::min(dt, auto_dt(models.back(), starts.back()));
  }
  const long steps = std::max(1L, static_cast<long>(std::ceil(spec.t_end / dt - 1e-9)));
  dt = spec.t_end / steps;

  const auto finals = parallel_map(spec.deltas.size(), [&](std::size_t i) {
    const Model& m = models[i];
    const Rhs rhs = [&m](const State& st) { return m(st); };
    State st = starts[i];
    for (long n = 0; n < steps; ++n) st = rk4_step(st, dt, rhs);
    return st;
  });

  std::vector<double> ds, diffs;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    const double diff = norm_V(finals[i].zeta - finals[i + 1].zeta,
                               finals[i].v - finals[i + 1].v, 0.0, p.mu);
    const double diff0 = norm_V(starts[i].zeta - starts[i + 1].zeta,
                                starts[i].v - starts[i + 1].v, 0.0, p.mu);
    res.records.push_back({{"delta", spec.deltas[i]},
                           {"delta_next", spec.deltas[i + 1]},
                           {"difference_V0", diff},
                           {"data_difference_V0", diff0}});
    if (diff > 0.0) {
      ds.push_back(spec.deltas[i]);
      diffs.push_back(diff);
    }
  }
  res.fits["dt"] = dt;
  res.fits["steps"] = steps;
  if (ds.size() >= 2) {
    const LogLogFit f = fit_loglog(ds, diffs);
    res.fits["difference_vs_delta"] = to_json(f);
    res.fits["order"] = f.slope;
    res.passed = f.slope >= spec.min_order;
  } else {
    res.notes.push_back("fewer than two nonzero differences; no order fitted");
    res.passed = diffs.empty();
  }
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult mollifier_rates(const MollifierRateSpec& spec) {
  const std::vector<double> deltas =
      spec.deltas.empty() ? log_space(1e-3, 1e-1, 9) : spec.deltas;
  json cfg = {{"N", spec.n},         {"L", "2 pi"},        {"s", spec.s},
              {"alpha", spec.alpha}, {"b", spec.b},        {"gamma", spec.gamma},
              {"deltas", deltas},    {"seed", spec.seed}};
  ExperimentResult res = start("mollifier-rates", cfg);
  res.tolerance = {{"exponent", spec.tolerance}};
  if (!(spec.b >= 0.0 && spec.b <= spec.s)) throw std::invalid_argument("need 0 <= b <= s");
  if (!(spec.alpha > 0.0)) throw std::invalid_argument("need alpha > 0");

  const Grid grid(spec.n, 2.0 * std::acos(-1.0));
  Spectrum sp{grid, std::vector<std::complex<double>>(grid.modes())};
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
  for (int k = 1; k < grid.modes() - 1; ++k) {
    const double xi = grid.wavenumber(k);
    sp.coeffs[k] = std::polar(std::pow(1.0 + xi * xi, -(spec.s + 0.5 + spec.gamma) / 2.0),
                              phase(rng));
  }
  const RealField f = inverse(sp);

  std::vector<double> grow, decay;
  for (double d : deltas) {
    const RealField m = mollify(f, d);
    grow.push_back(norm_Hs(m, spec.s + spec.alpha));
    decay.push_back(norm_Hs(m - f, spec.s - spec.b));
    res.records.push_back({{"delta", d}, {"smoothed_norm", grow.back()},
                           {"error_norm", decay.back()}});
  }
  const LogLogFit fg = fit_loglog(deltas, grow);
  const LogLogFit fd = fit_loglog(deltas, decay);
  res.fits["growth"] = to_json(fg);
  res.fits["decay"] = to_json(fd);
  res.fits["growth_exponent"] = -fg.slope;
  res.fits["decay_exponent"] = fd.slope;
  res.fits["expected"] = {{"growth", spec.alpha}, {"decay", spec.b}};
  res.passed = std::fabs(-fg.slope - spec.alpha) <= spec.tolerance &&
               std::fabs(fd.slope - spec.b) <= spec.tolerance;
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult dispersion_limit_study(const DispersionLimitSpec& spec) {
  json cfg = {{"betas", spec.betas}, {"mu", spec.mu},        {"r_lo", spec.r_lo},
              {"r_hi", spec.r_hi},   {"points", spec.points}};
  ExperimentResult res = start("dispersion-limit", cfg);
  res.tolerance = {{"slope", spec.expected_slope}, {"within", spec.tolerance}};
  if (!(spec.mu > 0.0)) throw std::invalid_argument("mu must be positive");

  const std::vector<double> rs = log_space(spec.r_lo, spec.r_hi, spec.points);
  const double root = std::sqrt(spec.mu);
  bool ok = true;
  auto check = [&](const std::string& name, const std::vector<double>& ys) {
    const LogLogFit f = fit_loglog(rs, ys);
    res.fits[name] = to_json(f);
    ok = ok && std::fabs(f.slope - spec.expected_slope) <= spec.tolerance;
  };
  for (double beta : spec.betas) {
    std::vector<double> rem;
    for (double r : rs) rem.push_back(std::fabs(taylor_remainder_K(spec.mu, beta, r / root)));
    char key[64];
    std::snprintf(key, sizeof key, "remainder_beta_%.6g", beta);
    check(key, rem);
    res.records.push_back({{"beta", beta}, {"r", rs}, {"remainder", rem}});
    if (std::fabs(beta - 1.0 / 3.0) < 1e-12) {
      std::vector<double> direct;
      for (double r : rs) direct.push_back(std::fabs(eval_K(spec.mu, beta, r / root) - 1.0));
      check("K_minus_one_beta_1/3", direct);
      res.records.push_back({{"beta", beta}, {"r", rs}, {"K_minus_one", direct}});
    }
  }

  // long-wave limit row
  bool flat = true;
  for (double beta : spec.betas) {
    for (double xi : log_space(1e-6, 1e4, 41)) flat = flat && eval_K(0.0, beta, xi) == 1.0;
  }
  res.records.push_back({{"mu", 0.0}, {"K_identically_one", flat}});
  res.passed = ok && flat;
  return res;
}

// ---------------------------------------------------------------------------

ExperimentResult emit_figures(const FigureSpec& spec) {
  json cfg = {{"beta_low", spec.beta_low}, {"beta_high", spec.beta_high},
              {"xi_max", spec.xi_max},     {"points", spec.points},
              {"epsilon", spec.epsilon}};
  ExperimentResult res = start("emit-figures", cfg);
  if (spec.out_dir.empty()) throw std::invalid_argument("emit_figures needs an output directory");
  if (spec.points < 3 || !(spec.xi_max > 0.0)) throw std::invalid_argument("bad figure grid");
  if (!(spec.beta_low > 0.0 && spec.beta_low < 1.0 / 3.0 && spec.beta_high >= 1.0 / 3.0)) {
    throw std::invalid_argument("figures need 0 < beta_low < 1/3 <= beta_high");
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(spec.out_dir) / "figures";
  fs::create_directories(dir);

  const int n = spec.points;
  std::vector<double> xi(n), k_low(n), k_high(n), t1(n);
  for (int i = 0; i < n; ++i) {
    xi[i] = spec.xi_max * i / (n - 1);
    k_low[i] = eval_K(1.0, spec.beta_low, xi[i]);
    k_high[i] = eval_K(1.0, spec.beta_high, xi[i]);
    t1[i] = eval_T(1.0, xi[i]);
  }

  auto open = [&](const char* name) {
    std::ofstream os(dir / name);
    os.precision(17);
    return os;
  };
  {
    auto os = open("K1.csv");
    os << "xi,K1_beta_" << spec.beta_low << ",K1_beta_" << spec.beta_high << "\n";
    for (int i = 0; i < n; ++i) os << xi[i] << "," << k_low[i] << "," << k_high[i] << "\n";
  }
  {
    auto os = open("sqrt_symbols.csv");
    os << "xi,sqrtK1_beta_" << spec.beta_low << ",sqrtK1_beta_" << spec.beta_high
       << ",sqrtT1\n";
    for (int i = 0; i < n; ++i) {
      os << xi[i] << "," << std::sqrt(k_low[i]) << "," << std::sqrt(k_high[i]) << ","
         << std::sqrt(t1[i]) << "\n";
    }
  }

  auto interior_minima = [](const std::vector<double>& y) {
    int count = 0;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
      if (y[i] < y[i - 1] && y[i] <= y[i + 1]) ++count;
    }
    return count;
  };
  auto increasing = [](const std::vector<double>& y) {
    for (std::size_t i = 2; i < y.size(); ++i) {
      if (!(y[i] > y[i - 1])) return false;
    }
    return true;
  };

  json checks = json::object();
  bool min_ok = false;
  {
    auto os = open("K1_minimum.csv");
    os << "beta,xi_min,K_min\n";
    const double beta = spec.beta_low;
    const auto m = boost::math::tools::brent_find_minima(
        [beta](double x) { return eval_K(1.0, beta, x); }, 1e-6, 1e3, 52);
    os << beta << "," << m.first << "," << m.second << "\n";
    min_ok = m.second >= beta;
    checks["minimum"] = {{"beta", beta}, {"xi_min", m.first}, {"K_min", m.second},
                         {"at_least_beta", min_ok}};
  }
  const bool one_min = interior_minima(k_low) == 1;
  const bool monotone = increasing(k_high);
  bool t_decreasing = true;
  for (int i = 1; i < n; ++i) t_decreasing = t_decreasing && t1[i] < t1[i - 1];
  const bool t_tail = std::sqrt(t1.back()) <= 1.0 / std::sqrt(spec.xi_max) * (1.0 + 1e-12);
  checks["single_interior_minimum_below_third"] = one_min;
  checks["monotone_above_third"] = monotone;
  checks["sqrtT_decreasing"] = t_decreasing;
  checks["sqrtT_tail_below_inverse_sqrt"] = t_tail;

  // admissible surface against the h_beta line
  const Grid g(1024, 50.0);
  const double c = 25.0;
  const RealField zeta0 = RealField::from_function(g, [c](double x) {
    return std::exp(-(x - c - 5) * (x - c - 5) / 4) - 0.8 * std::exp(-(x - c + 5) * (x - c + 5) / 4);
  });
  const double h_beta = 1.0 - spec.beta_low / 2.0;
  double surface_min = std::numeric_limits<double>::infinity();
  {
    auto os = open("surface_profile.csv");
    os << "x,surface,h_beta\n";
    for (int j = 0; j < g.size(); ++j) {
      const double y = 1.0 + spec.epsilon * zeta0[j];
      surface_min = std::min(surface_min, y);
      os << g.x(j) << "," << y << "," << h_beta << "\n";
    }
  }
  checks["surface_above_h_beta"] = surface_min >= h_beta;

  res.records.push_back({{"files",
                          {"figures/K1.csv", "figures/K1_minimum.csv", "figures/sqrt_symbols.csv",
                           "figures/surface_profile.csv"}},
                         {"checks", checks}});
  res.passed = min_ok && one_min && monotone && t_decreasing && t_tail &&
               surface_min >= h_beta;
  return res;
}

}  // namespace fdb
