#include "fdb/symbols.hpp"

#include <array>
#include <cmath>
#include <utility>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace fdb {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + ": non-finite argument");
  }
}

void require_mu(double mu) {
  require_finite(mu, "mu");
  if (mu < 0.0) throw DomainError("mu must be nonnegative");
}

constexpr int kSeriesTerms = 24;

// Maclaurin coefficients of tanh(x)/x in powers of x^2:
// a_n = 2^{2n} (2^{2n} - 1) B_{2n} / (2n)!, n >= 1.
const std::array<double, kSeriesTerms>& tanh_over_x_coefficients() {
  static const std::array<double, kSeriesTerms> coeffs = [] {
    std::array<double, kSeriesTerms> a{};
    for (int n = 1; n <= kSeriesTerms; ++n) {
      const double p = std::ldexp(1.0, 2 * n);
      a[n - 1] = p * (p - 1.0) * boost::math::bernoulli_b2n<double>(n) /
                 boost::math::factorial<double>(2 * n);
    }
    return a;
  }();
  return coeffs;
}

}  // namespace

double japanese(double xi) { return std::sqrt(1.0 + xi * xi); }

double tanh_over_x(double x) {
  require_finite(x, "tanh_over_x");
  const double ax = std::fabs(x);
  if (ax < 1e-4) {
    const double x2 = ax * ax;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return std::tanh(ax) / ax;
}

double one_minus_tanh(double x) {
  // 1 - tanh x = 2 e^{-2x} / (1 + e^{-2x})
  const double e = std::exp(-2.0 * std::fabs(x));
  return 2.0 * e / (1.0 + e);
}

double eval_T(double mu, double xi) {
  require_mu(mu);
  require_finite(xi, "eval_T");
  return tanh_over_x(std::sqrt(mu) * std::fabs(xi));
}

double eval_K(double mu, double beta, double xi) {
  require_finite(beta, "eval_K");
  return eval_T(mu, xi) * (1.0 + beta * mu * xi * xi);
}

double eval_sigma_half(double mu, double beta, double xi) {
  require_mu(mu);
  require_finite(xi, "eval_sigma_half");
  const double x = std::sqrt(mu) * std::fabs(xi);
  if (x == 0.0) throw DomainError("sigma_half is singular at xi = 0");
  return std::sqrt(1.0 / x + beta * x);
}

double eval_sigma_zero(double mu, double beta, double xi) {
  require_mu(mu);
  require_finite(xi, "eval_sigma_zero");
  const double x = std::sqrt(mu) * std::fabs(xi);
  if (x == 0.0) throw DomainError("sigma_zero is singular at xi = 0");
  return std::sqrt(one_minus_tanh(x) * (1.0 / x + beta * x));
}

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double eval_cutoff(CutoffKind which, double mu, double xi) {
  require_mu(mu);
  require_finite(xi, "eval_cutoff");
  const double r = std::sqrt(mu) * std::fabs(xi);
  const double low = 1.0 - smooth_step(2.0 * r - 1.0);
  if (which == CutoffKind::Low) return low;
  return std::sqrt(std::fmax(0.0, 1.0 - low * low));
}

double mollifier_profile(double x) { return std::exp(-x * x); }

double taylor_remainder_K(double mu, double beta, double xi) {
  require_mu(mu);
  require_finite(xi, "taylor_remainder_K");
  const double r = std::sqrt(mu) * std::fabs(xi);
  const double r2 = r * r;
  // K - 1 - (beta - 1/3) r^2 = (T - 1 + r^2/3) + beta r^2 (T - 1)
  double tail;  // T - 1 + r^2/3
  if (r <= 0.5) {
    const auto& a = tanh_over_x_coefficients();
    tail = 0.0;
    for (int n = kSeriesTerms; n >= 3; --n) tail = tail * r2 + a[n - 1];
    tail *= r2 * r2;
  } else {
    tail = std::tanh(r) / r - 1.0 + r2 / 3.0;
  }
  const double t_minus_one = tail - r2 / 3.0;
  return tail + beta * r2 * t_minus_one;
}

// ---------------------------------------------------------------------------

double eval_factor(const SymbolFactor& f, double mu, double beta, double xi) {
  switch (f.kind) {
    case SymbolKind::K:
      return eval_K(mu, beta, xi);
    case SymbolKind::T:
      return eval_T(mu, xi);
    case SymbolKind::SqrtK:
      return std::sqrt(eval_K(mu, beta, xi));
    case SymbolKind::SqrtT:
      return std::sqrt(eval_T(mu, xi));
    case SymbolKind::InvT:
      return 1.0 / eval_T(mu, xi);
    case SymbolKind::BesselJ:
      return std::pow(japanese(xi), f.param);
    case SymbolKind::ScaledBesselJmuHalf:
      return std::pow(1.0 + mu * xi * xi, 0.25);
    case SymbolKind::Riesz:
      if (xi == 0.0) {
        if (f.param < 0.0) throw DomainError("negative Riesz power at xi = 0");
        return f.param == 0.0 ? 1.0 : 0.0;
      }
      return std::pow(std::fabs(xi), f.param);
    case SymbolKind::Cutoff1:
      return eval_cutoff(CutoffKind::Low, mu, xi);
    case SymbolKind::Cutoff2:
      return eval_cutoff(CutoffKind::High, mu, xi);
    case SymbolKind::SigmaHalf:
      return eval_sigma_half(mu, beta, xi);
    case SymbolKind::SigmaZero:
      return eval_sigma_zero(mu, beta, xi);
    case SymbolKind::Mollifier:
      return mollifier_profile(f.param * xi);
    case SymbolKind::SurfaceTension:
      return 1.0 + beta * mu * xi * xi;
  }
  throw DomainError("unknown symbol kind");
}

SymbolSpec::SymbolSpec(std::string name, double mu, double beta,
                       std::vector<SymbolFactor> factors)
    : name_(std::move(name)), mu_(mu), beta_(beta), factors_(std::move(factors)) {
  require_mu(mu_);
  if (!(beta_ >= 0.0)) throw DomainError("beta must be nonnegative");
}

SymbolSpec SymbolSpec::identity() { return SymbolSpec{}; }

SymbolSpec SymbolSpec::single(SymbolKind kind, double mu, double beta,
                              double param) {
  static const char* names[] = {"K",       "T",       "sqrtK",   "sqrtT",
                                "invT",    "J",       "Jmu_half", "D",
                                "chi1",    "chi2",    "sigma_half",
                                "sigma_zero", "phi_delta", "surface"};
  return SymbolSpec(names[static_cast<int>(kind)], mu, beta,
                    {SymbolFactor{kind, param}});
}

double SymbolSpec::operator()(double xi) const {
  require_finite(xi, name_.c_str());
  const double axi = std::fabs(xi);
  double value = 1.0;
  // Cutoff factors first, so a vanishing high-frequency cutoff short-circuits
  // the singular sigma factors.
  for (const auto& f : factors_) {
    if (f.kind == SymbolKind::Cutoff1 || f.kind == SymbolKind::Cutoff2) {
      value *= eval_factor(f, mu_, beta_, axi);
      if (value == 0.0) return 0.0;
    }
  }
  for (const auto& f : factors_) {
    if (f.kind != SymbolKind::Cutoff1 && f.kind != SymbolKind::Cutoff2) {
      value *= eval_factor(f, mu_, beta_, axi);
    }
  }
  return value;
}

bool SymbolSpec::singular_at_origin() const {
  bool has_high_cutoff = false;
  bool has_sigma = false;
  for (const auto& f : factors_) {
    if (f.kind == SymbolKind::Cutoff2) has_high_cutoff = true;
    if (f.kind == SymbolKind::SigmaHalf || f.kind == SymbolKind::SigmaZero)
      has_sigma = true;
    if (f.kind == SymbolKind::Riesz && f.param < 0.0) return true;
  }
  return has_sigma && !has_high_cutoff;
}

SymbolSpec SymbolSpec::times(const SymbolSpec& other) const {
  if (factors_.empty()) return other;
  if (other.factors_.empty()) return *this;
  if (mu_ != other.mu_ || beta_ != other.beta_) {
    throw DomainError("cannot multiply symbols with different (mu, beta)");
  }
  auto merged = factors_;
  merged.insert(merged.end(), other.factors_.begin(), other.factors_.end());
  return SymbolSpec(name_ + "*" + other.name_, mu_, beta_, std::move(merged));
}

// ---------------------------------------------------------------------------

namespace {

double central_difference(const SymbolSpec& m, int order, double xi, double h) {
  switch (order) {
    case 1:
      return (m(xi + h) - m(xi - h)) / (2.0 * h);
    case 2:
      return (m(xi + h) - 2.0 * m(xi) + m(xi - h)) / (h * h);
    case 3:
      return (m(xi + 2 * h) - 2.0 * m(xi + h) + 2.0 * m(xi - h) -
              m(xi - 2 * h)) /
             (2.0 * h * h * h);
    case 4:
      return (m(xi + 2 * h) - 4.0 * m(xi + h) + 6.0 * m(xi) -
              4.0 * m(xi - h) + m(xi - 2 * h)) /
             (h * h * h * h);
    default:
      throw DomainError("derivative order must be in 1..4");
  }
}

}  // namespace

double symbol_derivative(const SymbolSpec& spec, int order, double xi) {
  require_finite(xi, "symbol_derivative");
  const double h = 1e-3 * japanese(xi);
  const double fine = central_difference(spec, order, xi, h);
  const double coarse = central_difference(spec, order, xi, 2.0 * h);
  return (4.0 * fine - coarse) / 3.0;
}

double seminorm_N(const SymbolSpec& spec, double s,
                  std::span<const double> xi_grid) {
  if (xi_grid.empty()) throw DomainError("seminorm_N: empty grid");
  double best = 0.0;
  for (double xi : xi_grid) {
    const double w = japanese(xi);
    best = std::fmax(best, std::pow(w, -s) * std::fabs(spec(xi)));
    for (int alpha = 1; alpha <= 4; ++alpha) {
      const double d = symbol_derivative(spec, alpha, xi);
      best = std::fmax(best, std::pow(w, alpha - s) * std::fabs(d));
    }
  }
  return best;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) /
                              static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace fdb
