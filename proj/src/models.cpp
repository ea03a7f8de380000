#include "fdb/models.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace fdb {

namespace {

using Coeffs = std::vector<std::complex<double>>;

// Applies the 2/3 rule in place.
void truncate(Spectrum& s) {
  const int n = s.grid.size();
  for (int k = 0; k < s.grid.modes(); ++k) {
    if (3 * k > n) s.coeffs[k] = 0.0;
  }
}

Spectrum product_spectrum(const RealField& a, const RealField& b) {
  Spectrum s = forward(a * b);
  truncate(s);
  return s;
}

RealField back(const Grid& g, Coeffs c) {
  c[g.size() / 2] = 0.0;
  return inverse(Spectrum{g, std::move(c)});
}

StateRate finish(const State& s, RealField dz, RealField dv) {
  if (!dz.finite() || !dv.finite()) throw BlowUp("non-finite right-hand side", s.t);
  return {std::move(dz), std::move(dv)};
}

}  // namespace

State::State(RealField z, RealField w, double time)
    : zeta(std::move(z)), v(std::move(w)), t(time) {
  if (!(zeta.grid == v.grid)) throw std::invalid_argument("state fields live on different grids");
}

Model::Model(const Grid& grid, const ModelParams& params, double delta)
    : grid_(grid), params_(params), delta_(delta) {
  params_.validate();
  if (params_.variant == Variant::Regularized && !(delta > 0.0)) {
    throw std::invalid_argument("the regularized system needs a positive mollifier width");
  }
  const int m = grid_.modes();
  xi_.resize(m);
  k_.resize(m);
  t_.resize(m);
  phi_.assign(m, 1.0);
  for (int k = 0; k < m; ++k) {
    const double xi = grid_.wavenumber(k);
    xi_[k] = xi;
    t_[k] = eval_T(params_.mu, xi);
    k_[k] = t_[k] * (1.0 + params_.beta * params_.mu * xi * xi);
    if (params_.variant == Variant::Regularized) phi_[k] = mollifier_profile(delta_ * xi);
  }
}

double Model::max_phase_speed() const {
  double c = 1.0;
  const bool uses_t = params_.variant == Variant::WhithamBoussinesq;
  for (std::size_t k = 0; k < xi_.size(); ++k) {
    c = std::max(c, std::sqrt(uses_t ? t_[k] : k_[k]));
  }
  return c;
}

StateRate Model::operator()(const State& s) const {
  if (!(s.grid() == grid_)) throw std::invalid_argument("state grid does not match model grid");
  return params_.variant == Variant::Regularized ? regularized(s) : physical(s);
}

StateRate Model::physical(const State& s) const {
  const int m = grid_.modes();
  const double eps = params_.epsilon;
  const Spectrum z = forward(s.zeta);
  const Spectrum w = forward(s.v);
  Coeffs dz(m);
  Coeffs dw(m);

  Spectrum flux{grid_, Coeffs(m)};
  Spectrum half_sq{grid_, Coeffs(m)};
  if (eps != 0.0) {
    flux = product_spectrum(s.zeta, s.v);
    half_sq = product_spectrum(s.v, s.v);
  }

  const std::complex<double> i(0.0, 1.0);
  for (int k = 0; k < m; ++k) {
    const std::complex<double> ik = i * xi_[k];
    std::complex<double> lin_z;
    std::complex<double> lin_w;
    std::complex<double> nl_z = ik * flux.coeffs[k];
    std::complex<double> nl_w = 0.5 * ik * half_sq.coeffs[k];
    switch (params_.variant) {
      case Variant::FullDispersion:
        lin_z = k_[k] * ik * w.coeffs[k];
        lin_w = ik * z.coeffs[k];
        break;
      case Variant::WhithamBoussinesq:
        lin_z = ik * w.coeffs[k];
        lin_w = t_[k] * ik * z.coeffs[k];
        break;
      default:
        lin_z = ik * w.coeffs[k];
        lin_w = k_[k] * ik * z.coeffs[k];
        nl_z *= t_[k];
        nl_w *= t_[k];
        break;
    }
    dz[k] = -lin_z - eps * nl_z;
    dw[k] = -lin_w - eps * nl_w;
  }
  return finish(s, back(grid_, std::move(dz)), back(grid_, std::move(dw)));
}

StateRate Model::regularized(const State& s) const {
  const int m = grid_.modes();
  const Spectrum e = forward(s.zeta);
  const Spectrum u = forward(s.v);
  const std::complex<double> i(0.0, 1.0);

  Coeffs de(m);
  Coeffs du(m);
  Coeffs k_du(m);
  for (int k = 0; k < m; ++k) {
    const std::complex<double> ik = i * xi_[k] * phi_[k];
    de[k] = ik * e.coeffs[k];
    du[k] = ik * u.coeffs[k];
    k_du[k] = k_[k] * du[k];
  }
  const int nyquist = grid_.size() / 2;
  k_du[nyquist] = 0.0;
  const RealField eta_x = back(grid_, de);
  de[nyquist] = 0.0;
  const RealField u_x = back(grid_, std::move(du));

  // products are dealiased before they enter the right-hand side
  const Spectrum a = product_spectrum(s.v, eta_x);
  const Spectrum b = product_spectrum(s.zeta, u_x);
  const Spectrum c = product_spectrum(s.v, u_x);
  Coeffs rate_e(m);
  Coeffs rate_u(m);
  for (int k = 0; k < m; ++k) {
    rate_e[k] = -a.coeffs[k] - k_du[k] - b.coeffs[k];
    rate_u[k] = -de[k] - c.coeffs[k];
  }
  return finish(s, back(grid_, std::move(rate_e)), back(grid_, std::move(rate_u)));
}

namespace {

StateRate with_variant(const State& s, ModelParams p, Variant v, double delta = 0.0) {
  p.variant = v;
  return Model(s.grid(), p, delta)(s);
}

}  // namespace

StateRate rhs_full_dispersion(const State& s, const ModelParams& p) {
  return with_variant(s, p, Variant::FullDispersion);
}

StateRate rhs_whitham_boussinesq(const State& s, const ModelParams& p) {
  return with_variant(s, p, Variant::WhithamBoussinesq);
}

StateRate rhs_whitham_boussinesq2(const State& s, const ModelParams& p) {
  return with_variant(s, p, Variant::WhithamBoussinesq2);
}

StateRate rhs_regularized(const State& s, const ModelParams& p, double delta) {
  return with_variant(s, p, Variant::Regularized, delta);
}

}  // namespace fdb
