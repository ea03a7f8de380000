#include "fdb/random_field.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fdb {

RealField random_field(const Grid& grid, double decay, int k_max, std::uint64_t seed,
                       double amplitude, double offset) {
  if (k_max < 1 || k_max >= grid.size() / 2) throw std::invalid_argument("k_max must lie in [1, N/2)");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s{grid, std::vector<std::complex<double>>(grid.modes())};
  for (int k = 1; k <= k_max; ++k) {
    const double scale = std::pow(japanese(grid.wavenumber(k)), -decay);
    const double re = normal(rng);
    const double im = normal(rng);
    s.coeffs[k] = scale * std::complex<double>(re, im);
  }
  RealField f = inverse(s);
  const double peak = f.max_abs();
  if (peak > 0.0) f *= amplitude / peak;
  for (double& v : f.values) v += offset;
  return f;
}

RealField random_field(const RandomFieldSpec& spec) {
  return random_field(spec.grid(), spec.decay, spec.k_max, spec.seed, spec.amplitude,
                      spec.offset);
}

}  // namespace fdb
