#pragma once

#include <cstdint>

#include "fdb/spectral.hpp"

namespace fdb {

/// Seeded random trigonometric polynomial. Mode k in [1, k_max] gets a
/// complex Gaussian coefficient scaled by <xi_k>^{-decay}; the result is
/// rescaled so that max |f| = amplitude and then shifted by offset.
struct RandomFieldSpec {
  int n = 1024;
  double length = 6.283185307179586;
  double decay = 2.0;
  int k_max = 64;
  std::uint64_t seed = 1;
  double amplitude = 1.0;
  double offset = 0.0;

  Grid grid() const { return Grid(n, length); }
};

RealField random_field(const RandomFieldSpec& spec);

/// Same spectrum law with an explicit seed and grid, for ensembles.
RealField random_field(const Grid& grid, double decay, int k_max, std::uint64_t seed,
                       double amplitude = 1.0, double offset = 0.0);

}  // namespace fdb
