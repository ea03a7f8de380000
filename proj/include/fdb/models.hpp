#pragma once

#include <stdexcept>
#include <vector>

#include "fdb/params.hpp"
#include "fdb/spectral.hpp"

namespace fdb {

/// (zeta, v) for the physical systems, (eta, u) for the regularized one.
struct State {
  RealField zeta;
  RealField v;
  double t = 0.0;

  State(RealField z, RealField w, double time = 0.0);
  const Grid& grid() const { return zeta.grid; }
  bool finite() const { return zeta.finite() && v.finite(); }
};

/// Time derivative of a State.
struct StateRate {
  RealField dzeta;
  RealField dv;
};

/// Raised when a right-hand side or a step produces non-finite values.
class BlowUp : public std::runtime_error {
 public:
  BlowUp(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Right-hand side of one evolution system on a fixed grid. The Fourier
/// multipliers are tabulated once at construction.
class Model {
 public:
  /// delta is the mollifier width of the regularized system and is ignored
  /// by the other variants.
  Model(const Grid& grid, const ModelParams& params, double delta = 0.0);

  StateRate operator()(const State& s) const;

  const Grid& grid() const { return grid_; }
  const ModelParams& params() const { return params_; }
  double delta() const { return delta_; }

  /// Largest linear phase speed max_xi sqrt(symbol) on the grid.
  double max_phase_speed() const;

 private:
  StateRate physical(const State& s) const;
  StateRate regularized(const State& s) const;

  Grid grid_;
  ModelParams params_;
  double delta_;
  std::vector<double> xi_;
  std::vector<double> k_;    // K_mu
  std::vector<double> t_;    // T_mu
  std::vector<double> phi_;  // mollifier, ones outside the regularized system
};

StateRate rhs_full_dispersion(const State& s, const ModelParams& p);
StateRate rhs_whitham_boussinesq(const State& s, const ModelParams& p);
StateRate rhs_whitham_boussinesq2(const State& s, const ModelParams& p);
StateRate rhs_regularized(const State& s, const ModelParams& p, double delta);

}  // namespace fdb
