#include "fdb/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fdb {

namespace {

// FFTW planning is not thread-safe; execution through the new-array
// interface is. Plans are created once per size under a lock and shared.
struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* real = fftw_alloc_real(n);
    fftw_complex* cplx = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_1d(n, real, cplx, flags);
    p.c2r = fftw_plan_dft_c2r_1d(n, cplx, real, flags);
    fftw_free(real);
    fftw_free(cplx);
    plans_.emplace(n, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

void require_same_grid(const RealField& a, const RealField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("fields live on different grids");
}

RealField checked(RealField f, const std::string& name) {
  if (!f.finite()) throw NumericalOverflow("non-finite output applying " + name);
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("grid size must be even and positive");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid length must be positive");
}

double Grid::wavenumber(int k) const {
  return 2.0 * std::numbers::pi * k / length_;
}

RealField::RealField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != g.size())
    throw std::invalid_argument("field length does not match grid");
}

RealField RealField::constant(const Grid& g, double c) {
  return RealField(g, std::vector<double>(g.size(), c));
}

RealField RealField::from_function(const Grid& g,
                                   const std::function<double(double)>& f) {
  RealField out(g);
  for (int j = 0; j < g.size(); ++j) out[j] = f(g.x(j));
  return out;
}

RealField& RealField::operator+=(const RealField& o) {
  require_same_grid(*this, o);
  for (int j = 0; j < size(); ++j) values[j] += o.values[j];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  require_same_grid(*this, o);
  for (int j = 0; j < size(); ++j) values[j] -= o.values[j];
  return *this;
}

RealField& RealField::operator*=(double a) {
  for (double& v : values) v *= a;
  return *this;
}

double RealField::max() const { return *std::max_element(values.begin(), values.end()); }
double RealField::min() const { return *std::min_element(values.begin(), values.end()); }

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

double RealField::mean() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s / size();
}

bool RealField::finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double a, RealField f) { return f *= a; }

RealField operator*(const RealField& a, const RealField& b) {
  require_same_grid(a, b);
  RealField out(a.grid);
  for (int j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
  return out;
}

// ---------------------------------------------------------------------------

Spectrum forward(const RealField& f) {
  const int n = f.size();
  const PlanPair plans = PlanCache::instance().get(n);
  std::vector<double> in(f.values);
  Spectrum s{f.grid, std::vector<std::complex<double>>(f.grid.modes())};
  fftw_execute_dft_r2c(plans.r2c, in.data(),
                       reinterpret_cast<fftw_complex*>(s.coeffs.data()));
  const double inv_n = 1.0 / n;
  for (auto& c : s.coeffs) c *= inv_n;
  return s;
}

RealField inverse(const Spectrum& s) {
  const int n = s.grid.size();
  const PlanPair plans = PlanCache::instance().get(n);
  // c2r destroys its input
  std::vector<std::complex<double>> in(s.coeffs);
  RealField out(s.grid);
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(in.data()),
                       out.values.data());
  return out;
}

RealField apply_multiplier(const RealField& f,
                           const std::function<double(double)>& symbol,
                           const std::string& name) {
  Spectrum s = forward(f);
  for (int k = 0; k < s.grid.modes(); ++k) s.coeffs[k] *= symbol(s.grid.wavenumber(k));
  return checked(inverse(s), name);
}

RealField apply_multiplier(const RealField& f, const SymbolSpec& spec) {
  return apply_multiplier(f, [&spec](double xi) { return spec(xi); }, spec.name());
}

RealField derivative(const RealField& f) {
  Spectrum s = forward(f);
  const int nyquist = s.grid.size() / 2;
  for (int k = 0; k < s.grid.modes(); ++k) {
    s.coeffs[k] *= std::complex<double>(0.0, s.grid.wavenumber(k));
  }
  s.coeffs[nyquist] = 0.0;
  return checked(inverse(s), "d/dx");
}

RealField multiplier_derivative(const RealField& f, const SymbolSpec& spec) {
  Spectrum s = forward(f);
  const int nyquist = s.grid.size() / 2;
  for (int k = 0; k < s.grid.modes(); ++k) {
    const double xi = s.grid.wavenumber(k);
    s.coeffs[k] *= std::complex<double>(0.0, xi * spec(xi));
  }
  s.coeffs[nyquist] = 0.0;
  return checked(inverse(s), spec.name() + " d/dx");
}

RealField mollify(const RealField& f, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("mollifier width must be positive");
  return apply_multiplier(f, [delta](double xi) { return mollifier_profile(delta * xi); },
                          "phi_delta");
}

RealField dealias(const RealField& f) {
  Spectrum s = forward(f);
  const int n = s.grid.size();
  for (int k = 0; k < s.grid.modes(); ++k) {
    if (3 * k > n) s.coeffs[k] = 0.0;
  }
  return inverse(s);
}

RealField dealiased_product(const RealField& f, const RealField& g) {
  return dealias(f * g);
}

double inner(const RealField& f, const RealField& g) {
  require_same_grid(f, g);
  double s = 0.0;
  for (int j = 0; j < f.size(); ++j) s += f[j] * g[j];
  return s * f.grid.dx();
}

double norm_L2(const RealField& f) { return std::sqrt(inner(f, f)); }

double norm_Lp(const RealField& f, double p) {
  if (std::isinf(p)) return f.max_abs();
  double s = 0.0;
  for (double v : f.values) s += std::pow(std::fabs(v), p);
  return std::pow(s * f.grid.dx(), 1.0 / p);
}

double weighted_spectral_sum(const Spectrum& s,
                             const std::function<double(double)>& weight) {
  const int nyquist = s.grid.size() / 2;
  double sum = 0.0;
  for (int k = 0; k < s.grid.modes(); ++k) {
    const double mult = (k == 0 || k == nyquist) ? 1.0 : 2.0;
    sum += mult * weight(s.grid.wavenumber(k)) * std::norm(s.coeffs[k]);
  }
  return sum * s.grid.length();
}

double norm_Hs(const RealField& f, double s) {
  const Spectrum sp = forward(f);
  return std::sqrt(weighted_spectral_sum(
      sp, [s](double xi) { return std::pow(1.0 + xi * xi, s); }));
}

double norm_V(const RealField& zeta, const RealField& v, double s, double mu) {
  require_same_grid(zeta, v);
  const double sq_mu = std::sqrt(mu);
  const double z2 = weighted_spectral_sum(
      forward(zeta), [s](double xi) { return std::pow(1.0 + xi * xi, s); });
  const double v2 = weighted_spectral_sum(forward(v), [s, sq_mu](double xi) {
    return std::pow(1.0 + xi * xi, s) * (1.0 + sq_mu * std::fabs(xi));
  });
  return std::sqrt(z2 + v2);
}

double norm_X(const RealField& zeta, const RealField& v, double s, double beta,
              double mu) {
  require_same_grid(zeta, v);
  const double sq_mu = std::sqrt(mu);
  const double z2 = weighted_spectral_sum(forward(zeta), [s, beta, mu](double xi) {
    return std::pow(1.0 + xi * xi, s) * (1.0 + beta * mu * xi * xi);
  });
  const double v2 = weighted_spectral_sum(forward(v), [s, sq_mu](double xi) {
    return std::pow(1.0 + xi * xi, s) * (1.0 + sq_mu * std::fabs(xi));
  });
  return std::sqrt(z2 + v2);
}

RealField commutator(const std::function<RealField(const RealField&)>& op,
                     const RealField& f, const RealField& g) {
  require_same_grid(f, g);
  return op(dealiased_product(f, g)) - dealiased_product(f, op(g));
}

RealField commutator(const SymbolSpec& spec, const RealField& f, const RealField& g) {
  return commutator([&spec](const RealField& h) { return apply_multiplier(h, spec); }, f, g);
}

RealField shift(const RealField& f, int cells) {
  const int n = f.size();
  RealField out(f.grid);
  for (int j = 0; j < n; ++j) out[((j + cells) % n + n) % n] = f[j];
  return out;
}

// ---------------------------------------------------------------------------

void write_snapshot(std::ostream& os, const RealField& zeta, const RealField& v) {
  require_same_grid(zeta, v);
  const auto old_precision = os.precision();
  os << std::setprecision(17);
  os << "# grid N=" << zeta.grid.size() << " L=" << zeta.grid.length() << "\n";
  os << "x,zeta,v\n";
  for (int j = 0; j < zeta.size(); ++j) {
    os << zeta.grid.x(j) << "," << zeta[j] << "," << v[j] << "\n";
  }
  os.precision(old_precision);
}

std::pair<RealField, RealField> read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("snapshot: empty input");
  int n = 0;
  double length = 0.0;
  if (std::sscanf(line.c_str(), "# grid N=%d L=%lf", &n, &length) != 2) {
    throw std::runtime_error("snapshot: malformed grid header: " + line);
  }
  const Grid grid(n, length);
  if (!std::getline(is, line) || line.rfind("x,", 0) != 0) {
    throw std::runtime_error("snapshot: missing column header");
  }
  RealField zeta(grid);
  RealField v(grid);
  for (int j = 0; j < n; ++j) {
    if (!std::getline(is, line)) throw std::runtime_error("snapshot: truncated data");
    std::istringstream row(line);
    double x = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(row >> x >> c1 >> zeta[j] >> c2 >> v[j]) || c1 != ',' || c2 != ',') {
      throw std::runtime_error("snapshot: malformed row " + std::to_string(j));
    }
  }
  return {std::move(zeta), std::move(v)};
}

}  // namespace fdb
