#pragma once

// Closed-form reference solutions shared by the unit and acceptance tests.

#include <cmath>

#include "fdb/models.hpp"

namespace oracle {

/// Linear (eps = 0) travelling single mode zeta = A cos(xi x - omega t).
struct SingleMode {
  double xi;
  double omega;
  double v_factor;  ///< v = v_factor * zeta
};

inline SingleMode single_mode(fdb::Variant variant, double mu, double beta, double xi) {
  const double t = std::tanh(std::sqrt(mu) * xi) / (std::sqrt(mu) * xi);
  const double k = t * (1.0 + beta * mu * xi * xi);
  switch (variant) {
    case fdb::Variant::WhithamBoussinesq: {
      const double w = xi * std::sqrt(t);
      return {xi, w, t * xi / w};
    }
    case fdb::Variant::WhithamBoussinesq2: {
      const double w = xi * std::sqrt(k);
      return {xi, w, k * xi / w};
    }
    default: {
      const double w = xi * std::sqrt(k);
      return {xi, w, xi / w};
    }
  }
}

inline fdb::State single_mode_state(const fdb::Grid& g, const SingleMode& m, double amp,
                                    double t) {
  fdb::RealField z(g);
  fdb::RealField v(g);
  for (int j = 0; j < g.size(); ++j) {
    const double c = amp * std::cos(m.xi * g.x(j) - m.omega * t);
    z[j] = c;
    v[j] = m.v_factor * c;
  }
  return fdb::State(z, v, t);
}

}  // namespace oracle
