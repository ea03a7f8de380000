#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fdb/functionals.hpp"
#include "fdb/models.hpp"

namespace fdb {

using Rhs = std::function<StateRate(const State&)>;

/// Classical four-stage Runge-Kutta step. Throws std::invalid_argument for
/// dt <= 0 and lets BlowUp from the right-hand side propagate.
State rk4_step(const State& s, double dt, const Rhs& rhs);

/// Initial data. Profiles are centred at L/2:
///   gaussian     A exp(-(x - L/2)^2 / w^2)
///   cosine       A cos(2 pi m x / L)
///   soliton-like A sech^2((x - L/2) / w)
///   file         a snapshot written by write_snapshot
/// velocity: "zero" (v = 0) or "same" (v = zeta).
struct InitialSpec {
  std::string profile = "gaussian";
  double amplitude = 1.0;
  double width = 2.0;
  int mode = 1;
  bool mean_zero = false;
  std::string velocity = "zero";
  std::string file;
};

State make_initial_state(const Grid& grid, const InitialSpec& spec);

struct SimConfig {
  int n = 1024;
  double length = 100.0;
  ModelParams params;
  InitialSpec initial;
  double delta = 0.0;                ///< mollifier width, regularized system only
  std::optional<double> dt;          ///< empty means automatic
  std::optional<double> t_end;       ///< empty means the horizon T / epsilon
  int stride = 10;                   ///< steps between diagnostic rows
  double diag_interval = 0.0;        ///< if > 0, overrides stride by time
  std::vector<double> s_values{0.0, 2.0};
  std::optional<EnergyKind> energy;  ///< tracked energy; the variant's own if empty
  int snapshot_every = 0;            ///< rows between snapshots; 0 = first and last only
  std::string out_dir;               ///< empty disables file output

  Grid grid() const { return Grid(n, length); }
};

struct DiagnosticRow {
  double t = 0.0;
  std::vector<double> norms;     ///< ||(zeta, v)||_{V^s} per s
  std::vector<double> energies;  ///< natural energy per s, see energy_unscaled
  double margin = 0.0;
  double mean_zeta = 0.0;
  double mean_v = 0.0;
};

struct TimeSeries {
  std::vector<double> s_values;
  EnergyKind energy = EnergyKind::E;
  std::vector<DiagnosticRow> rows;

  void write_csv(std::ostream& os) const;
};

/// Energy of (zeta, v) with eta-weight eps zeta: E_s(eps zeta, eps v) / eps^2,
/// which reduces to the quadratic part at eps = 0.
EnergyReport energy_unscaled(EnergyKind kind, double s, const State& st,
                             const ModelParams& p);

DiagnosticRow diagnose(const State& st, const ModelParams& p, EnergyKind kind,
                       const std::vector<double>& s_values);

/// Automatic step 0.4 dx / max(1, max phase speed + eps max|v|).
double auto_dt(const Model& model, const State& st);

/// Called on every diagnostic row; a returned string stops the run with that
/// reason.
using StopRule =
    std::function<std::optional<std::string>(const State&, const DiagnosticRow&)>;

struct SimResult {
  SimResult(TimeSeries ts, State st) : series(std::move(ts)), final_state(std::move(st)) {}

  TimeSeries series;
  State final_state;
  double dt = 0.0;
  long steps = 0;
  double t_end = 0.0;
  bool admissible = true;
  std::string admissibility_note;
  bool stopped = false;        ///< blow-up or a stop rule fired
  double stop_time = 0.0;
  std::string stop_reason;
  std::vector<std::string> snapshots;
};

/// Integrates from the configured initial data. Blow-up returns the partial
/// series with stopped = true. A row is recorded every stride steps and at
/// t_end.
SimResult simulate(const SimConfig& cfg, const StopRule& stop = nullptr);
/// Same, from an explicit initial state.
SimResult simulate(const SimConfig& cfg, State initial, const StopRule& stop = nullptr);

}  // namespace fdb
