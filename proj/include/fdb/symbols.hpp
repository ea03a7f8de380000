#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdb {

/// Raised when a symbol is evaluated outside its domain (non-finite input,
/// bare sigma symbols at the origin, negative shallowness parameter, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Scalar symbols. All of them are even in xi; implementations work with |xi|.
// ---------------------------------------------------------------------------

/// tanh(x)/x with the removable singularity at 0 filled in. Uses the
/// Maclaurin series 1 - x^2/3 + 2x^4/15 for |x| < 1e-4.
double tanh_over_x(double x);

/// 1 - tanh(x) for x >= 0, evaluated without cancellation.
double one_minus_tanh(double x);

/// Pure-gravity dispersion symbol tanh(sqrt(mu)|xi|)/(sqrt(mu)|xi|).
/// mu = 0 is accepted and returns the long-wave limit 1.
double eval_T(double mu, double xi);

/// Capillary-gravity dispersion symbol T_mu(xi) (1 + beta mu xi^2).
double eval_K(double mu, double beta, double xi);

/// (1/(sqrt(mu)|xi|) + beta sqrt(mu)|xi|)^{1/2}; xi = 0 is a domain error.
double eval_sigma_half(double mu, double beta, double xi);

/// ((1 - tanh(sqrt(mu)|xi|)) (1/(sqrt(mu)|xi|) + beta sqrt(mu)|xi|))^{1/2}.
/// Factorized form of (1/x + beta x - K)^{1/2}; xi = 0 is a domain error.
double eval_sigma_zero(double mu, double beta, double xi);

/// Smooth step e^{-1/t}/(e^{-1/t} + e^{-1/(1-t)}) clamped to [0,1].
double smooth_step(double t);

enum class CutoffKind { Low = 1, High = 2 };

/// chi^(1)_mu equals 1 for sqrt(mu)|xi| <= 1/2 and vanishes for
/// sqrt(mu)|xi| >= 1; chi^(2)_mu = sqrt(1 - chi^(1)_mu^2).
double eval_cutoff(CutoffKind which, double mu, double xi);

/// Gaussian mollifier profile phi(x) = exp(-x^2).
double mollifier_profile(double x);

/// K_mu(xi) - 1 - mu (beta - 1/3) xi^2, evaluated by series for small
/// sqrt(mu)|xi| so that the O(mu^2 xi^4) remainder keeps full precision.
double taylor_remainder_K(double mu, double beta, double xi);

// ---------------------------------------------------------------------------
// Composite symbol specification.
// ---------------------------------------------------------------------------

enum class SymbolKind {
  K,
  T,
  SqrtK,
  SqrtT,
  InvT,
  BesselJ,              ///< <xi>^s
  ScaledBesselJmuHalf,  ///< (1 + mu xi^2)^{1/4}
  Riesz,                ///< |xi|^s, 0 at xi = 0
  Cutoff1,
  Cutoff2,
  SigmaHalf,
  SigmaZero,
  Mollifier,            ///< phi(delta xi)
  SurfaceTension,       ///< 1 + beta mu xi^2
};

struct SymbolFactor {
  SymbolKind kind;
  double param = 0.0;  ///< s for BesselJ/Riesz, delta for Mollifier
};

/// A named even Fourier symbol xi -> m(xi): a product of elementary factors
/// sharing (mu, beta). The empty product is the identity symbol.
///
/// Sigma factors are only meaningful under the high-frequency cutoff; a
/// product that contains Cutoff2 evaluates to 0 wherever the cutoff does,
/// without touching the sigma factor.
class SymbolSpec {
 public:
  SymbolSpec() = default;
  SymbolSpec(std::string name, double mu, double beta,
             std::vector<SymbolFactor> factors);

  static SymbolSpec identity();
  static SymbolSpec single(SymbolKind kind, double mu, double beta,
                           double param = 0.0);

  double operator()(double xi) const;

  const std::string& name() const { return name_; }
  double mu() const { return mu_; }
  double beta() const { return beta_; }
  std::span<const SymbolFactor> factors() const { return factors_; }

  /// True when the symbol has a singularity at xi = 0 (Riesz with s < 0 or
  /// a bare sigma factor).
  bool singular_at_origin() const;

  /// Product with another symbol; (mu, beta) must agree unless one side is
  /// the identity.
  SymbolSpec times(const SymbolSpec& other) const;

 private:
  std::string name_ = "identity";
  double mu_ = 1.0;
  double beta_ = 0.0;
  std::vector<SymbolFactor> factors_;
};

double eval_factor(const SymbolFactor& f, double mu, double beta, double xi);

/// n-th derivative (1 <= n <= 4) by central differences with two Richardson
/// levels (steps h and 2h, h = 1e-3 <xi>).
double symbol_derivative(const SymbolSpec& spec, int order, double xi);

/// max over alpha in {0..4} and grid points of <xi>^{alpha - s} |m^(alpha)|.
double seminorm_N(const SymbolSpec& spec, double s,
                  std::span<const double> xi_grid);

/// <xi> = (1 + xi^2)^{1/2}.
double japanese(double xi);

/// Logarithmically spaced points between lo and hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace fdb
