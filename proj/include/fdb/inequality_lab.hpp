#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fdb/random_field.hpp"
#include "fdb/timestepper.hpp"

namespace fdb {

// ---------------------------------------------------------------------------
// Commutator and product estimates
// ---------------------------------------------------------------------------

/// Both sides of one estimate for one (f, g) pair. All implicit constants
/// on the right-hand side are set to 1.
struct CaseEvaluation {
  double lhs = 0.0;
  double rhs = 0.0;
};

struct CaseInfo {
  std::string id;
  double default_s;
  bool uses_beta;   ///< the right-hand side constant depends on beta
  bool mu_uniform;  ///< the estimate claims a mu-independent constant
  bool uses_g;      ///< false for single-function (product) bounds
};

/// Registry in a fixed order.
const std::vector<CaseInfo>& commutator_registry();
const CaseInfo& commutator_case(std::string_view id);

/// Throws std::invalid_argument for an unknown id.
CaseEvaluation evaluate_case(std::string_view id, double mu, double beta, double s,
                             double t0, const RealField& f, const RealField& g);

struct CommutatorSweep {
  std::vector<double> mus{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  std::vector<double> betas{0.05, 0.2, 1.0 / 3.0, 1.0, 3.0};
  int trials = 50;
  std::uint64_t seed = 1;
  double t0 = 0.6;
  std::optional<double> s;  ///< overrides the case default
  /// Trial i band-limits f to a mode cutoff log-spaced in [2, k_max] and g to
  /// the cutoff of trial (7i + 3) mod trials, so every mu meets fields at
  /// its own frequency scale 1/sqrt(mu). Off: every field uses k_max.
  bool multiscale = true;
};

struct SweepPoint {
  double mu = 0.0;
  double beta = 0.0;
  int trials = 0;
  int skipped = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  std::uint64_t worst_seed = 0;
};

struct RatioReport {
  std::string case_id;
  double s = 0.0;
  double t0 = 0.0;
  int trials = 0;
  int skipped = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  double worst_mu = 0.0;
  double worst_beta = 0.0;
  std::uint64_t worst_seed = 0;
  bool mu_uniform_claimed = false;
  /// Largest over beta of max/min across mu of the per-point max ratio,
  /// ignoring points whose max ratio is below 1e-12 (left-hand side zero up
  /// to roundoff).
  double mu_spread = 1.0;
  bool passed = false;
  std::vector<SweepPoint> points;
};

/// Default ensemble: N = 2048 on [0, 4 pi) (modes 0.5 apart), flat spectrum
/// up to the two-thirds dealiasing limit, so frequencies from 1/2 to ~170
/// are represented.
RandomFieldSpec commutator_fields();

/// Runs every sweep point over `trials` seeded (f, g) pairs. Field seeds are
/// sweep.seed + 2i and sweep.seed + 2i + 1 for trial i, shared by all
/// sweep points. Trials whose right-hand side is below 1e-14 ||f|| ||g||
/// are skipped. Pass: finite max ratio and, where claimed, mu_spread < 10.
RatioReport run_commutator_case(std::string_view id, const CommutatorSweep& sweep,
                                const RandomFieldSpec& fields);

nlohmann::json to_json(const RatioReport& r);
/// One JSON object per sweep point.
std::vector<nlohmann::json> point_records(const RatioReport& r);
/// "case_id,s,trials,skipped,max_ratio,median_ratio,mu_spread,passed"
std::string summary_csv_header();
std::string summary_csv_row(const RatioReport& r);

// ---------------------------------------------------------------------------
// Coercivity
// ---------------------------------------------------------------------------

struct CoercivityReport {
  EnergyKind energy = EnergyKind::E;
  double mu = 0.0;
  double beta = 0.0;
  double s = 0.0;
  int count = 0;
  double min_ratio = 0.0;    ///< smallest energy / norm^2 in the ensemble
  double max_ratio = 0.0;
  double min_lower = 0.0;    ///< smallest frozen-coefficient lower bracket
  double max_upper = 0.0;
};

struct EnsembleSpec {
  int n = 512;
  double length = 50.0;
  double decay = 1.0;
  int k_max = 80;
  std::uint64_t seed = 1;
  int count = 100;
};

/// eta is rescaled so that min(1 + eta) sits exactly on the admissibility
/// floor (1 - beta/2 for the full-dispersion system with beta < 1/3, h0
/// otherwise); u has sup norm 1.
CoercivityReport coercivity_probe(EnergyKind kind, const ModelParams& p, double s,
                                  const EnsembleSpec& ensemble);

nlohmann::json to_json(const CoercivityReport& r);

// ---------------------------------------------------------------------------
// Energy growth and stability of differences
// ---------------------------------------------------------------------------

struct EnergyRateReport {
  Variant variant = Variant::FullDispersion;
  EnergyKind energy = EnergyKind::E;
  double s = 0.0;
  int samples = 0;
  bool skipped = false;
  double sup_ratio = 0.0;  ///< sup_t max(dE/dt, 0) / E^{3/2} in scaled variables
  double at_time = 0.0;
  double dt = 0.0;
};

/// Runs cfg tracking the requested energy at level s and differences the
/// scaled energy E_s(eps zeta, eps v) with centred differences.
EnergyRateReport energy_rate_probe(const SimConfig& cfg, double s, EnergyKind kind);

nlohmann::json to_json(const EnergyRateReport& r);

struct DifferenceReport {
  Variant variant = Variant::FullDispersion;
  double delta0 = 0.0;
  int samples = 0;
  double g0 = 0.0;
  double m = 0.0;           ///< max scaled V^s norm of either solution
  double gronwall_c = 0.0;  ///< sup_t ln(G/G0) / (M t)
  double sup_rate = 0.0;    ///< sup_t (dG/dt) / (M G)
  double dt = 0.0;
};

/// Integrates the configured data and a perturbation by delta0 (rho, rho')
/// with a seeded smooth unit-V^s pair side by side, tracking
/// G = ||eps (difference)||^2 in V^0 (X^0 for the second Whitham-Boussinesq
/// system).
DifferenceReport difference_probe(const SimConfig& cfg, double delta0,
                                  std::uint64_t seed = 1);

nlohmann::json to_json(const DifferenceReport& r);

}  // namespace fdb
