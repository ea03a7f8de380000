#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdb/symbols.hpp"

namespace fdb {

/// Periodic 1-D collocation grid: x_j = j L / N, wavenumbers 2 pi k / L for
/// k in {-N/2+1, ..., N/2}.
class Grid {
 public:
  Grid(int n, double length);

  int size() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / n_; }
  double x(int j) const { return j * length_ / n_; }
  /// Number of stored (nonnegative) modes of a real field: N/2 + 1.
  int modes() const { return n_ / 2 + 1; }
  /// Wavenumber of stored mode k in [0, N/2].
  double wavenumber(int k) const;
  double max_wavenumber() const { return wavenumber(n_ / 2); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  double length_;
};

/// Raised when a spectral operation produces non-finite output.
class NumericalOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real field sampled on a grid.
struct RealField {
  Grid grid;
  std::vector<double> values;

  explicit RealField(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  RealField(const Grid& g, std::vector<double> v);

  static RealField constant(const Grid& g, double c);
  static RealField from_function(const Grid& g,
                                 const std::function<double(double)>& f);

  int size() const { return grid.size(); }
  double& operator[](int j) { return values[j]; }
  double operator[](int j) const { return values[j]; }

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(double a);

  double max() const;
  double min() const;
  double max_abs() const;
  double mean() const;
  bool finite() const;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double a, RealField f);
/// Pointwise product (not dealiased).
RealField operator*(const RealField& a, const RealField& b);

/// Half spectrum of a real field, normalized as c_k = (1/N) sum_j f_j e^{-i xi_k x_j}.
struct Spectrum {
  Grid grid;
  std::vector<std::complex<double>> coeffs;
};

Spectrum forward(const RealField& f);
RealField inverse(const Spectrum& s);

/// m(D) f for an even real symbol m; the imaginary residue is discarded by
/// the real inverse transform.
RealField apply_multiplier(const RealField& f, const SymbolSpec& spec);
RealField apply_multiplier(const RealField& f,
                           const std::function<double(double)>& symbol,
                           const std::string& name = "symbol");

/// d/dx; the Nyquist mode is zeroed.
RealField derivative(const RealField& f);

/// m(D) d/dx for an even symbol m.
RealField multiplier_derivative(const RealField& f, const SymbolSpec& spec);

/// Gaussian mollifier phi_delta(D), phi(x) = exp(-x^2).
RealField mollify(const RealField& f, double delta);

/// Zeroes all modes with |k| > N/3.
RealField dealias(const RealField& f);

/// dealias(f * g)
RealField dealiased_product(const RealField& f, const RealField& g);

/// L^2 inner product by trapezoid quadrature (L/N) sum f g.
double inner(const RealField& f, const RealField& g);
double norm_L2(const RealField& f);
/// Discrete L^p norm ((L/N) sum |f|^p)^{1/p}; p = infinity gives max |f|.
double norm_Lp(const RealField& f, double p);

/// sum_k w(xi_k) |c_k|^2 L over the full (two-sided) spectrum.
double weighted_spectral_sum(const Spectrum& s,
                             const std::function<double(double)>& weight);

/// ||f||_{H^s} with ||f||_{H^0} = ||f||_{L^2}.
double norm_Hs(const RealField& f, double s);

/// ||(zeta, v)||_{V^s}^2 = ||zeta||_{H^s}^2 + ||v||_{H^s}^2
///                         + sqrt(mu) ||D^{1/2} v||_{H^s}^2, returned as the norm.
double norm_V(const RealField& zeta, const RealField& v, double s, double mu);

/// V-norm plus beta mu ||D zeta||_{H^s}^2 under the square root.
double norm_X(const RealField& zeta, const RealField& v, double s, double beta,
              double mu);

/// [m(D), f] g = m(D)(f g) - f m(D) g with dealiased products.
RealField commutator(const SymbolSpec& spec, const RealField& f,
                     const RealField& g);
/// Commutator with a general linear operator.
RealField commutator(const std::function<RealField(const RealField&)>& op,
                     const RealField& f, const RealField& g);

/// Shift by an integer number of grid cells (periodic).
RealField shift(const RealField& f, int cells);

/// Snapshot CSV: "# grid N=<N> L=<L>", header "x,zeta,v", 17 significant digits.
void write_snapshot(std::ostream& os, const RealField& zeta, const RealField& v);
/// Returns (zeta, v); throws std::runtime_error on malformed input.
std::pair<RealField, RealField> read_snapshot(std::istream& is);

}  // namespace fdb
