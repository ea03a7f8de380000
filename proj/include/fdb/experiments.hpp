#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fdb/timestepper.hpp"

namespace fdb {

/// Least-squares line through (ln x, ln y). residual is the rms deviation in
/// ln y. Needs at least two points with x, y > 0.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  int points = 0;
};

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);
nlohmann::json to_json(const LogLogFit& f);

struct ExperimentResult {
  std::string id;
  nlohmann::json config;  ///< resolved experiment inputs
  std::string config_hash;
  nlohmann::json records = nlohmann::json::array();
  nlohmann::json fits = nlohmann::json::object();
  nlohmann::json tolerance = nlohmann::json::object();
  bool passed = false;
  std::vector<std::string> notes;
};

nlohmann::json to_json(const ExperimentResult& r);

// ---------------------------------------------------------------------------

/// Runs the base configuration once per epsilon up to min(T/eps, failure).
/// Failure is blow-up, loss of the depth condition, or the V^s norm (largest
/// s) leaving the tube bound_factor k2 ||data||, with k2 = k2_beta for the
/// full-dispersion system and c_user for the other two. eps = 0 runs are
/// linear checks: they go to base.t_end and record the norm drift.
struct LifespanSpec {
  SimConfig base;
  std::vector<double> eps_list{0.2, 0.1, 0.05};
  double alpha_lo = 0.8;
  double alpha_hi = 1.2;
  double bound_factor = 4.0;
  double linear_drift_tol = 1e-6;
};

/// Throws std::invalid_argument when every eps fails at t = 0.
ExperimentResult sweep_lifespan(const LifespanSpec& spec);

/// Evolves the regularized system from phi_delta(D)(eps zeta0, eps v0) for
/// each delta to t_end with one shared step, and fits the decay of the V^0
/// distance between consecutive solutions against delta.
struct BonaSmithSpec {
  SimConfig base;
  std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
  double t_end = 0.5;
  double min_order = 1.5;
};

ExperimentResult bona_smith_convergence(const BonaSmithSpec& spec);

/// Mollifier rates without evolution, on a field of critical regularity:
/// |c_k| = <k>^{-(s + 1/2 + gamma)} with seeded phases on [0, 2 pi). Then
/// ||phi_delta f||_{H^{s+alpha}} grows like delta^{-(alpha - gamma)} and
/// ||phi_delta f - f||_{H^{s-b}} decays like delta^{b + gamma}.
struct MollifierRateSpec {
  int n = 65536;
  double s = 1.0;
  double alpha = 1.0;
  double b = 1.0;
  double gamma = 0.05;
  std::vector<double> deltas;  ///< empty: 9 log-spaced points in [1e-3, 1e-1]
  std::uint64_t seed = 1;
  double tolerance = 0.1;
};

ExperimentResult mollifier_rates(const MollifierRateSpec& spec);

/// Log-log slope of |K - 1 - mu (beta - 1/3) xi^2| against sqrt(mu)|xi|, plus
/// |K - 1| itself at beta = 1/3 and the mu = 0 row (K = 1 exactly).
struct DispersionLimitSpec {
  std::vector<double> betas{0.0, 1.0 / 3.0, 1.0};
  double mu = 1.0;
  double r_lo = 1e-3;
  double r_hi = 1e-1;
  int points = 41;
  double expected_slope = 4.0;
  double tolerance = 0.1;
};

ExperimentResult dispersion_limit_study(const DispersionLimitSpec& spec);

/// Curve data under out_dir/figures:
///   K1.csv              xi, K_1 for beta_low and beta_high
///   K1_minimum.csv      beta, xi_min, K_min (interior minimum, beta < 1/3)
///   sqrt_symbols.csv    xi, sqrt K_1 for both betas, sqrt T_1
///   surface_profile.csv x, 1 + eps zeta0, h_beta
/// The result records the shape checks on the curves.
struct FigureSpec {
  std::string out_dir;
  double beta_low = 0.2;
  double beta_high = 0.5;
  double xi_max = 10.0;
  int points = 1001;
  double epsilon = 0.1;
};

ExperimentResult emit_figures(const FigureSpec& spec);

}  // namespace fdb
