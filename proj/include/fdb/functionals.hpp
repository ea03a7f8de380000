#pragma once

#include <nlohmann/json.hpp>

#include "fdb/params.hpp"
#include "fdb/spectral.hpp"

namespace fdb {

struct Admissibility {
  bool pass = false;
  double margin = 0.0;
};

/// margin = min_x (1 + eps zeta) - h0.
Admissibility check_non_cavitation(const RealField& zeta, double epsilon, double h0);

/// margin = min_x (1 + eps zeta) - (1 - beta/2); beta must lie in (0, 1/3).
Admissibility check_beta_surface(const RealField& zeta, double epsilon, double beta);

/// The condition the theory attaches to a variant: the beta-dependent surface
/// condition for the full-dispersion system with beta < 1/3, non-cavitation
/// otherwise.
Admissibility check_admissibility(const RealField& zeta, const ModelParams& p);

/// k^2_beta = c/beta (beta < 1/3) or c beta (beta >= 1/3).
double k2_beta(double beta, double c_user);
/// k^1_beta = c/beta (beta < 1/3) or c beta^2 (beta >= 1/3).
double k1_beta(double beta, double c_user);

/// Largest admissible epsilon 1 / (k^2_beta norm0).
double epsilon_bound(double beta, double norm0, double c_user);
/// Existence horizon T = 1 / (k^1_beta norm0); simulated time is T / epsilon.
double horizon_T(double beta, double norm0, double c_user);

/// Variant-aware forms: the Whitham-Boussinesq systems use c / norm0 for both.
double epsilon_bound(const ModelParams& p, double norm0);
double horizon_T(const ModelParams& p, double norm0);

enum class EnergyKind { E, CalE, ScrE };

EnergyKind natural_energy(Variant v);
std::string to_string(EnergyKind k);

/// Value of a modified energy together with coercivity information.
///
/// ratio = value / ||(eta,u)||^2 in the energy's reference norm (V^s for E
/// and calE, X^s for scrE). lower_ratio / upper_ratio bracket that ratio by
/// freezing eta at its extreme values and taking the extreme per-mode ratio
/// of energy weight to norm weight over the modes the state occupies.
struct EnergyReport {
  double s = 0.0;
  double value = 0.0;
  double quadratic = 0.0;  ///< eta-independent part
  double cubic = 0.0;      ///< eta-weighted part
  double norm_sq = 0.0;
  double ratio = 0.0;
  double lower_ratio = 0.0;
  double upper_ratio = 0.0;
};

nlohmann::json to_json(const EnergyReport& r);

/// E_s = ||J^s eta||^2 + (J^s u, (K_mu(D) + eta) J^s u).
EnergyReport energy_E(double s, const RealField& eta, const RealField& u,
                      const ModelParams& p);
/// calE_s = (T_mu(D) J_mu^{1/2} J^s eta, J_mu^{1/2} J^s eta)
///        + ((1 + eta) J_mu^{1/2} J^s u, J_mu^{1/2} J^s u).
EnergyReport energy_calE(double s, const RealField& eta, const RealField& u,
                         const ModelParams& p);
/// scrE_s = ((1 + beta mu D^2) J^s eta, J^s eta) + ((T_mu^{-1}(D) + eta) J^s u, J^s u).
EnergyReport energy_scrE(double s, const RealField& eta, const RealField& u,
                         const ModelParams& p);

EnergyReport energy(EnergyKind kind, double s, const RealField& eta,
                    const RealField& u, const ModelParams& p);

/// Reference norm of an energy: V^s for E and calE, X^s for scrE.
double energy_norm(EnergyKind kind, double s, const RealField& eta,
                   const RealField& u, const ModelParams& p);

}  // namespace fdb
