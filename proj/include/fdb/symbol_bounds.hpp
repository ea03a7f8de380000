#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace fdb {

struct BoundPoint {
  double mu = 0.0;
  double beta = 0.0;
  double xi = 0.0;
  double h0 = 0.0;
};

enum class BoundDirection { Upper, Lower };

/// Result of evaluating one pointwise symbol inequality over a parameter
/// grid. Upper bounds are stored as LHS / (C * RHS) and pass when the
/// largest ratio is <= 1 + tolerance; lower bounds are stored as LHS / RHS
/// and pass when the smallest ratio is >= 1 - tolerance.
struct BoundReport {
  std::string bound_id;
  std::size_t samples = 0;
  double worst_ratio = 0.0;
  BoundPoint worst_point;
  bool passed = false;
  BoundDirection direction = BoundDirection::Upper;
  std::string constant;  ///< human-readable constant used, e.g. "max(1,1/beta)"
  double tolerance = 0.0;
};

struct BoundSweep {
  std::vector<double> mus;
  std::vector<double> betas;
  std::vector<double> xis;
  std::vector<double> h0s;

  /// mu in {1e-4..1}, beta in {0.05, 0.2, 1/3, 1, 3}, 1000 log-spaced xi in
  /// [1e-6, 1e4], h0 in {0.25, 0.5, 0.9}.
  static BoundSweep standard();
};

/// Identifiers accepted by check_pointwise_bound, in registry order.
const std::vector<std::string>& bound_registry();

/// Throws std::invalid_argument for an unknown identifier.
BoundReport check_pointwise_bound(std::string_view bound_id,
                                  const BoundSweep& sweep);

nlohmann::json to_json(const BoundReport& report);

}  // namespace fdb
