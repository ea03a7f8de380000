#include "fdb/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace fdb {

namespace {

State axpy(const State& s, double h, const StateRate& k) {
  State out = s;
  for (int j = 0; j < s.zeta.size(); ++j) {
    out.zeta[j] += h * k.dzeta[j];
    out.v[j] += h * k.dv[j];
  }
  out.t = s.t + h;
  return out;
}

std::string format_s(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", s);
  return buf;
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snap_t%.6f.csv", t);
  return buf;
}

}  // namespace

State rk4_step(const State& s, double dt, const Rhs& rhs) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const StateRate k1 = rhs(s);
  const StateRate k2 = rhs(axpy(s, 0.5 * dt, k1));
  const StateRate k3 = rhs(axpy(s, 0.5 * dt, k2));
  const StateRate k4 = rhs(axpy(s, dt, k3));
  State out = s;
  const double w = dt / 6.0;
  for (int j = 0; j < s.zeta.size(); ++j) {
    out.zeta[j] += w * (k1.dzeta[j] + 2.0 * (k2.dzeta[j] + k3.dzeta[j]) + k4.dzeta[j]);
    out.v[j] += w * (k1.dv[j] + 2.0 * (k2.dv[j] + k3.dv[j]) + k4.dv[j]);
  }
  out.t = s.t + dt;
  if (!out.finite()) throw BlowUp("non-finite state after step", out.t);
  return out;
}

State make_initial_state(const Grid& grid, const InitialSpec& spec) {
  if (spec.profile == "file") {
    std::ifstream in(spec.file);
    if (!in) throw std::invalid_argument("cannot open initial-data file: " + spec.file);
    auto [zeta, v] = read_snapshot(in);
    if (!(zeta.grid == grid)) throw std::invalid_argument("initial-data file grid differs from config grid");
    return State(std::move(zeta), std::move(v));
  }
  const double a = spec.amplitude;
  const double w = spec.width;
  const double centre = grid.length() / 2.0;
  std::function<double(double)> f;
  if (spec.profile == "gaussian") {
    if (!(w > 0.0)) throw std::invalid_argument("gaussian width must be positive");
    f = [=](double x) { return a * std::exp(-(x - centre) * (x - centre) / (w * w)); };
  } else if (spec.profile == "cosine") {
    const double k = grid.wavenumber(spec.mode);
    f = [=](double x) { return a * std::cos(k * x); };
  } else if (spec.profile == "soliton-like") {
    if (!(w > 0.0)) throw std::invalid_argument("soliton-like width must be positive");
    f = [=](double x) {
      const double c = std::cosh((x - centre) / w);
      return a / (c * c);
    };
  } else {
    throw std::invalid_argument("unknown initial profile: " + spec.profile);
  }
  RealField zeta = RealField::from_function(grid, f);
  if (spec.mean_zero) {
    const double m = zeta.mean();
    for (double& z : zeta.values) z -= m;
  }
  RealField v(grid);
  if (spec.velocity == "same") {
    v = zeta;
  } else if (spec.velocity != "zero") {
    throw std::invalid_argument("unknown initial velocity: " + spec.velocity);
  }
  return State(std::move(zeta), std::move(v));
}

EnergyReport energy_unscaled(EnergyKind kind, double s, const State& st,
                             const ModelParams& p) {
  const double eps = p.epsilon;
  if (eps == 0.0) {
    EnergyReport r = energy(kind, s, st.zeta, st.v, p);
    r.value = r.quadratic;
    r.cubic = 0.0;
    return r;
  }
  EnergyReport r = energy(kind, s, eps * st.zeta, eps * st.v, p);
  const double inv = 1.0 / (eps * eps);
  r.value *= inv;
  r.quadratic *= inv;
  r.cubic *= inv;
  r.norm_sq *= inv;
  return r;
}

DiagnosticRow diagnose(const State& st, const ModelParams& p, EnergyKind kind,
                       const std::vector<double>& s_values) {
  DiagnosticRow row;
  row.t = st.t;
  for (double s : s_values) {
    row.norms.push_back(norm_V(st.zeta, st.v, s, p.mu));
    row.energies.push_back(energy_unscaled(kind, s, st, p).value);
  }
  row.margin = check_admissibility(st.zeta, p).margin;
  row.mean_zeta = st.zeta.mean();
  row.mean_v = st.v.mean();
  return row;
}

void TimeSeries::write_csv(std::ostream& os) const {
  os << "t";
  for (double s : s_values) os << ",norm_V_s" << format_s(s);
  for (double s : s_values) os << "," << to_string(energy) << "_s" << format_s(s);
  os << ",margin,mean_zeta,mean_v\n";
  const auto old = os.precision();
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.t;
    for (double n : r.norms) os << "," << n;
    for (double e : r.energies) os << "," << e;
    os << "," << r.margin << "," << r.mean_zeta << "," << r.mean_v << "\n";
  }
  os.precision(old);
}

double auto_dt(const Model& model, const State& st) {
  const double speed = model.max_phase_speed() + model.params().epsilon * st.v.max_abs();
  return 0.4 * model.grid().dx() / std::max(1.0, speed);
}

SimResult simulate(const SimConfig& cfg, const StopRule& stop) {
  return simulate(cfg, make_initial_state(cfg.grid(), cfg.initial), stop);
}

SimResult simulate(const SimConfig& cfg, State initial, const StopRule& stop) {
  cfg.params.validate();
  if (cfg.s_values.empty()) throw std::invalid_argument("s_values must not be empty");
  const Grid grid = cfg.grid();
  if (!(initial.grid() == grid)) throw std::invalid_argument("initial state grid differs from config grid");
  const Model model(grid, cfg.params, cfg.delta);
  const ModelParams& p = cfg.params;
  const EnergyKind kind = cfg.energy.value_or(natural_energy(p.variant));
  const double s_top = *std::max_element(cfg.s_values.begin(), cfg.s_values.end());
  const double norm0 = norm_V(initial.zeta, initial.v, s_top, p.mu);

  SimResult res(TimeSeries{cfg.s_values, kind, {}}, initial);

  // admissibility of the data; the run proceeds either way
  const Admissibility adm = check_admissibility(initial.zeta, p);
  if (!adm.pass) {
    res.admissible = false;
    res.admissibility_note = "initial data violate the depth condition (margin " +
                             std::to_string(adm.margin) + ")";
  }
  const bool physical = p.variant != Variant::Regularized;
  if (physical && norm0 > 0.0 && p.beta > 0.0 && p.epsilon > epsilon_bound(p, norm0)) {
    res.admissible = false;
    if (!res.admissibility_note.empty()) res.admissibility_note += "; ";
    res.admissibility_note += "epsilon exceeds the admissible bound";
  }

  double t_end = 0.0;
  if (cfg.t_end) {
    t_end = *cfg.t_end;
  } else {
    if (!(p.epsilon > 0.0) || !(norm0 > 0.0)) {
      throw std::invalid_argument("t_end \"horizon\" needs epsilon > 0 and nonzero data");
    }
    t_end = horizon_T(p, norm0) / p.epsilon;
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive");
  res.t_end = t_end;

  double dt = cfg.dt ? *cfg.dt : auto_dt(model, initial);
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const long steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
  dt = t_end / steps;
  res.dt = dt;

  long stride = std::max(1, cfg.stride);
  if (cfg.diag_interval > 0.0) {
    stride = std::max(1L, std::lround(cfg.diag_interval / dt));
  }

  namespace fs = std::filesystem;
  const bool write = !cfg.out_dir.empty();
  if (write) fs::create_directories(cfg.out_dir);
  auto snapshot = [&](const State& st) {
    if (!write) return;
    const std::string name = snapshot_name(st.t);
    std::ofstream os(fs::path(cfg.out_dir) / name);
    write_snapshot(os, st.zeta, st.v);
    res.snapshots.push_back(name);
  };

  const Rhs rhs = [&model](const State& st) { return model(st); };
  State st = std::move(initial);
  const double blowup_norm = 1e3 * norm0;

  auto record = [&](const State& now) -> bool {
    DiagnosticRow row = diagnose(now, p, kind, cfg.s_values);
    const double n_top = norm_V(now.zeta, now.v, s_top, p.mu);
    res.series.rows.push_back(row);
    if (norm0 > 0.0 && n_top > blowup_norm) {
      res.stopped = true;
      res.stop_time = now.t;
      res.stop_reason = "blow-up: norm exceeds 1000x its initial value";
      return false;
    }
    if (stop) {
      if (auto why = stop(now, row)) {
        res.stopped = true;
        res.stop_time = now.t;
        res.stop_reason = *why;
        return false;
      }
    }
    return true;
  };

  snapshot(st);
  bool running = record(st);
  long rows = 1;
  for (long n = 1; running && n <= steps; ++n) {
    try {
      st = rk4_step(st, dt, rhs);
    } catch (const BlowUp& e) {
      res.stopped = true;
      res.stop_time = e.time();
      res.stop_reason = std::string("blow-up: ") + e.what();
      break;
    }
    if (n == steps) st.t = t_end;
    res.steps = n;
    if (n % stride == 0 || n == steps) {
      running = record(st);
      ++rows;
      if (cfg.snapshot_every > 0 && rows % cfg.snapshot_every == 0 && n != steps) snapshot(st);
    }
  }
  snapshot(st);
  res.final_state = st;

  if (write) {
    std::ofstream os(fs::path(cfg.out_dir) / "timeseries.csv");
    res.series.write_csv(os);
  }
  return res;
}

}  // namespace fdb
