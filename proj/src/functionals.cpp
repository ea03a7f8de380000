#include "fdb/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdb {

namespace {

constexpr double kOneThird = 1.0 / 3.0;

Admissibility margin_above(const RealField& zeta, double epsilon, double floor) {
  double depth_min = std::numeric_limits<double>::infinity();
  for (double z : zeta.values) depth_min = std::min(depth_min, 1.0 + epsilon * z);
  const double margin = depth_min - floor;
  return {margin >= 0.0, margin};
}

void require_positive_beta(double beta) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
}

void require_positive_norm(double norm0) {
  if (!(norm0 > 0.0)) throw std::invalid_argument("initial norm must be positive");
}

// Per-mode weights of an energy. The eta-independent part of the energy is
// sum w_eta |eta_k|^2 + w_u |u_k|^2; the eta part is bounded by
// [min eta, max eta] * sum g_u |u_k|^2. n_eta, n_u are the reference norm
// weights.
struct ModeWeights {
  double w_eta;
  double w_u;
  double g_u;
  double n_eta;
  double n_u;
};

template <class WeightFn>
EnergyReport assemble(double s, const RealField& eta, const RealField& u,
                      const RealField& cubic_field, WeightFn weights) {
  if (!(eta.grid == u.grid)) throw std::invalid_argument("fields live on different grids");
  const Spectrum e = forward(eta);
  const Spectrum v = forward(u);
  const Grid& g = eta.grid;
  const int nyquist = g.size() / 2;

  double quad = 0.0;
  double norm_sq = 0.0;
  double peak = 0.0;
  for (int k = 0; k < g.modes(); ++k) {
    peak = std::max({peak, std::norm(e.coeffs[k]), std::norm(v.coeffs[k])});
  }
  const double active = peak * 1e-24;
  const double eta_lo = eta.min();
  const double eta_hi = eta.max();

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < g.modes(); ++k) {
    const double mult = (k == 0 || k == nyquist) ? 1.0 : 2.0;
    const ModeWeights w = weights(g.wavenumber(k));
    const double a = std::norm(e.coeffs[k]);
    const double b = std::norm(v.coeffs[k]);
    quad += mult * (w.w_eta * a + w.w_u * b);
    norm_sq += mult * (w.n_eta * a + w.n_u * b);
    if (a > active && a > 0.0) {
      const double r = w.w_eta / w.n_eta;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (b > active && b > 0.0) {
      lo = std::min(lo, (w.w_u + eta_lo * w.g_u) / w.n_u);
      hi = std::max(hi, (w.w_u + eta_hi * w.g_u) / w.n_u);
    }
  }
  quad *= g.length();
  norm_sq *= g.length();

  EnergyReport r;
  r.s = s;
  r.quadratic = quad;
  r.cubic = inner(cubic_field, eta);
  r.value = r.quadratic + r.cubic;
  r.norm_sq = norm_sq;
  if (norm_sq > 0.0) {
    r.ratio = r.value / norm_sq;
    r.lower_ratio = lo;
    r.upper_ratio = hi;
  }
  return r;
}

double bessel_weight(double s, double xi) { return std::pow(1.0 + xi * xi, s); }

double v_norm_u_weight(double s, double mu, double xi) {
  return bessel_weight(s, xi) * (1.0 + std::sqrt(mu) * std::fabs(xi));
}

}  // namespace

Admissibility check_non_cavitation(const RealField& zeta, double epsilon, double h0) {
  if (!(h0 > 0.0 && h0 < 1.0)) throw std::invalid_argument("h0 must lie in (0, 1)");
  return margin_above(zeta, epsilon, h0);
}

Admissibility check_beta_surface(const RealField& zeta, double epsilon, double beta) {
  if (!(beta > 0.0 && beta < kOneThird)) {
    throw DomainError(
        "the surface condition 1 + eps zeta >= 1 - beta/2 needs 0 < beta < 1/3; "
        "use check_non_cavitation for larger beta");
  }
  return margin_above(zeta, epsilon, 1.0 - beta / 2.0);
}

Admissibility check_admissibility(const RealField& zeta, const ModelParams& p) {
  const bool surface = (p.variant == Variant::FullDispersion ||
                        p.variant == Variant::Regularized) &&
                       p.beta > 0.0 && p.beta < kOneThird;
  if (surface) return check_beta_surface(zeta, p.epsilon, p.beta);
  return check_non_cavitation(zeta, p.epsilon, p.h0);
}

double k2_beta(double beta, double c_user) {
  require_positive_beta(beta);
  return beta < kOneThird ? c_user / beta : c_user * beta;
}

double k1_beta(double beta, double c_user) {
  require_positive_beta(beta);
  return beta < kOneThird ? c_user / beta : c_user * beta * beta;
}

double epsilon_bound(double beta, double norm0, double c_user) {
  require_positive_norm(norm0);
  return 1.0 / (k2_beta(beta, c_user) * norm0);
}

double horizon_T(double beta, double norm0, double c_user) {
  require_positive_norm(norm0);
  return 1.0 / (k1_beta(beta, c_user) * norm0);
}

double epsilon_bound(const ModelParams& p, double norm0) {
  if (p.variant == Variant::WhithamBoussinesq || p.variant == Variant::WhithamBoussinesq2) {
    require_positive_norm(norm0);
    return p.c_user / norm0;
  }
  return epsilon_bound(p.beta, norm0, p.c_user);
}

double horizon_T(const ModelParams& p, double norm0) {
  if (p.variant == Variant::WhithamBoussinesq || p.variant == Variant::WhithamBoussinesq2) {
    require_positive_norm(norm0);
    return p.c_user / norm0;
  }
  return horizon_T(p.beta, norm0, p.c_user);
}

EnergyKind natural_energy(Variant v) {
  switch (v) {
    case Variant::WhithamBoussinesq:
      return EnergyKind::CalE;
    case Variant::WhithamBoussinesq2:
      return EnergyKind::ScrE;
    default:
      return EnergyKind::E;
  }
}

std::string to_string(EnergyKind k) {
  switch (k) {
    case EnergyKind::E:
      return "E";
    case EnergyKind::CalE:
      return "calE";
    case EnergyKind::ScrE:
      return "scrE";
  }
  return "unknown";
}

nlohmann::json to_json(const EnergyReport& r) {
  return {{"s", r.s},
          {"value", r.value},
          {"lower_ratio", r.lower_ratio},
          {"upper_ratio", r.upper_ratio}};
}

EnergyReport energy_E(double s, const RealField& eta, const RealField& u,
                      const ModelParams& p) {
  const RealField ju = apply_multiplier(u, [s](double xi) { return std::pow(1.0 + xi * xi, s / 2.0); });
  return assemble(s, eta, u, ju * ju, [&](double xi) {
    const double b = bessel_weight(s, xi);
    return ModeWeights{b, eval_K(p.mu, p.beta, xi) * b, b, b, v_norm_u_weight(s, p.mu, xi)};
  });
}

EnergyReport energy_calE(double s, const RealField& eta, const RealField& u,
                         const ModelParams& p) {
  const double mu = p.mu;
  const RealField ju = apply_multiplier(u, [s, mu](double xi) {
    return std::pow(1.0 + xi * xi, s / 2.0) * std::pow(1.0 + mu * xi * xi, 0.25);
  });
  return assemble(s, eta, u, ju * ju, [&](double xi) {
    const double b = bessel_weight(s, xi);
    const double jm = std::sqrt(1.0 + mu * xi * xi);
    return ModeWeights{eval_T(mu, xi) * jm * b, jm * b, jm * b, b,
                       v_norm_u_weight(s, mu, xi)};
  });
}

EnergyReport energy_scrE(double s, const RealField& eta, const RealField& u,
                         const ModelParams& p) {
  const RealField ju = apply_multiplier(u, [s](double xi) { return std::pow(1.0 + xi * xi, s / 2.0); });
  return assemble(s, eta, u, ju * ju, [&](double xi) {
    const double b = bessel_weight(s, xi);
    const double surface = (1.0 + p.beta * p.mu * xi * xi) * b;
    return ModeWeights{surface, b / eval_T(p.mu, xi), b, surface,
                       v_norm_u_weight(s, p.mu, xi)};
  });
}

EnergyReport energy(EnergyKind kind, double s, const RealField& eta, const RealField& u,
                    const ModelParams& p) {
  switch (kind) {
    case EnergyKind::CalE:
      return energy_calE(s, eta, u, p);
    case EnergyKind::ScrE:
      return energy_scrE(s, eta, u, p);
    default:
      return energy_E(s, eta, u, p);
  }
}

double energy_norm(EnergyKind kind, double s, const RealField& eta, const RealField& u,
                   const ModelParams& p) {
  if (kind == EnergyKind::ScrE) return norm_X(eta, u, s, p.beta, p.mu);
  return norm_V(eta, u, s, p.mu);
}

}  // namespace fdb
