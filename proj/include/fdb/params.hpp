#pragma once

#include <string>
#include <string_view>

namespace fdb {

enum class Variant {
  FullDispersion,      ///< K_mu(D) on the zeta equation
  WhithamBoussinesq,   ///< T_mu(D) on the v equation
  WhithamBoussinesq2,  ///< K_mu(D) on zeta_x, T_mu(D) on the nonlinear terms
  Regularized,         ///< mollified full-dispersion system in (eta, u)
};

/// "full-dispersion" | "whitham-boussinesq" | "whitham-boussinesq-2" | "regularized"
Variant parse_variant(std::string_view name);
std::string to_string(Variant v);

/// Regime parameters (epsilon, mu, beta, h0) plus the free constant c of the
/// epsilon-bound and lifespan formulas.
struct ModelParams {
  double epsilon = 0.1;
  double mu = 1.0;
  double beta = 1.0;
  double h0 = 0.5;
  Variant variant = Variant::FullDispersion;
  double c_user = 1.0;

  /// Throws std::invalid_argument when a field is out of range. The full
  /// dispersion system requires beta > 0.
  void validate() const;
};

}  // namespace fdb
