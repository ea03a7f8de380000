#include "fdb/symbol_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "fdb/symbols.hpp"

namespace fdb {

namespace {

constexpr double kTolerance = 1e-12;

// Constant used for the beta-dependent "lesssim" bounds whose appendix
// proofs split on beta: the stated right-hand sides lose a factor 1/beta
// (resp. 1/(sqrt(beta)+beta)) when beta < 1.
double inverse_beta_constant(double beta) { return std::max(1.0, 1.0 / beta); }
double halfwave_constant(double beta) {
  return std::max(1.0, 1.0 / (std::sqrt(beta) + beta));
}

struct Sample {
  double lhs;
  double rhs;  // already multiplied by the declared constant
};

struct BoundDef {
  std::string id;
  BoundDirection direction;
  std::string constant;
  bool uses_h0;
  std::function<bool(double beta)> applies;
  std::function<bool(double mu, double xi)> in_range;
  std::function<Sample(double mu, double beta, double xi, double h0)> eval;
};

bool always(double) { return true; }
bool everywhere(double, double) { return true; }

const std::vector<BoundDef>& definitions() {
  static const std::vector<BoundDef> defs = [] {
    std::vector<BoundDef> d;
    // K <~ 1 + beta (1 + beta sqrt(mu)|xi|)
    d.push_back({"K_upper", BoundDirection::Upper, "max(1,1/beta)", false,
                 always, everywhere,
                 [](double mu, double beta, double xi, double) {
                   const double r = std::sqrt(mu) * std::fabs(xi);
                   return Sample{eval_K(mu, beta, xi),
                                 inverse_beta_constant(beta) *
                                     (1.0 + beta * (1.0 + beta * r))};
                 }});
    // beta >= 1/3: K >= (1 - h0/2) + c sqrt(mu)|xi|, c = 1e-3 h0^2
    d.push_back({"K_lower_big_beta", BoundDirection::Lower, "c=1e-3*h0^2",
                 true, [](double beta) { return beta >= 1.0 / 3.0; },
                 everywhere,
                 [](double mu, double beta, double xi, double h0) {
                   const double r = std::sqrt(mu) * std::fabs(xi);
                   const double c = 1e-3 * h0 * h0;
                   return Sample{eval_K(mu, beta, xi), (1.0 - h0 / 2.0) + c * r};
                 }});
    // 0 < beta < 1/3: K >= beta + c sqrt(mu)|xi|, c = 1e-3 beta
    d.push_back({"K_lower_small_beta", BoundDirection::Lower, "c=1e-3*beta",
                 false,
                 [](double beta) { return beta > 0.0 && beta < 1.0 / 3.0; },
                 everywhere,
                 [](double mu, double beta, double xi, double) {
                   const double r = std::sqrt(mu) * std::fabs(xi);
                   const double c = 1e-3 * beta;
                   return Sample{eval_K(mu, beta, xi), beta + c * r};
                 }});
    // |d/dxi sqrt(K)| <~ <xi>^{-1} + sqrt(beta) mu^{1/4} <xi>^{-1/2}
    d.push_back({"dK_bound", BoundDirection::Upper, "1", false, always,
                 everywhere,
                 [](double mu, double beta, double xi, double) {
                   const auto m = SymbolSpec::single(SymbolKind::SqrtK, mu, beta);
                   const double w = japanese(xi);
                   return Sample{std::fabs(symbol_derivative(m, 1, xi)),
                                 1.0 / w + std::sqrt(beta) * std::pow(mu, 0.25) /
                                               std::sqrt(w)};
                 }});
    // |sqrt(K) - sqrt(beta) mu^{1/4} |xi|^{1/2}| <~ sqrt(beta) + beta
    d.push_back({"K_vs_halfwave", BoundDirection::Upper,
                 "max(1,1/(sqrt(beta)+beta))", false, always, everywhere,
                 [](double mu, double beta, double xi, double) {
                   const double half_wave =
                       std::sqrt(beta) * std::pow(mu, 0.25) * std::sqrt(std::fabs(xi));
                   return Sample{
                       std::fabs(std::sqrt(eval_K(mu, beta, xi)) - half_wave),
                       halfwave_constant(beta) * (std::sqrt(beta) + beta)};
                 }});
    // sqrt(K) <xi>^{s-1}|xi| <~ (sqrt(beta)+beta)<xi>^s
    //                           + sqrt(beta) mu^{1/4} <xi>^s |xi|^{1/2}
    // evaluated at s = 2 (both sides carry <xi>^s; s only rescales)
    d.push_back({"K_commutator_aux", BoundDirection::Upper,
                 "max(1,1/(sqrt(beta)+beta))", false, always, everywhere,
                 [](double mu, double beta, double xi, double) {
                   constexpr double s = 2.0;
                   const double w = japanese(xi);
                   const double ax = std::fabs(xi);
                   const double lhs =
                       std::sqrt(eval_K(mu, beta, xi)) * std::pow(w, s - 1.0) * ax;
                   const double rhs =
                       (std::sqrt(beta) + beta) * std::pow(w, s) +
                       std::sqrt(beta) * std::pow(mu, 0.25) * std::pow(w, s) *
                           std::sqrt(ax);
                   return Sample{lhs, halfwave_constant(beta) * rhs};
                 }});
    // (1 - h0/2) + (h0/2) sqrt(mu)|xi| <= 1/T <= 1 + sqrt(mu)|xi|, folded
    // into a single upper-type ratio max(lower/LHS, LHS/upper)
    d.push_back({"Tinv_bounds", BoundDirection::Upper, "c=h0/2 (lower), 1 (upper)",
                 true, always, everywhere,
                 [](double mu, double, double xi, double h0) {
                   const double r = std::sqrt(mu) * std::fabs(xi);
                   const double inv_t = 1.0 / eval_T(mu, xi);
                   const double lower = (1.0 - h0 / 2.0) + (h0 / 2.0) * r;
                   const double upper = 1.0 + r;
                   const double ratio = std::max(lower / inv_t, inv_t / upper);
                   return Sample{ratio, 1.0};
                 }});
    // tanh(1) <= T <sqrt(mu) xi> <= sqrt(2)
    d.push_back({"TJ_equiv", BoundDirection::Upper, "[tanh(1), sqrt(2)]", false,
                 always, everywhere,
                 [](double mu, double, double xi, double) {
                   const double r = std::sqrt(mu) * std::fabs(xi);
                   const double v = eval_T(mu, xi) * japanese(r);
                   const double ratio =
                       std::max(std::tanh(1.0) / v, v / std::sqrt(2.0));
                   return Sample{ratio, 1.0};
                 }});
    // |<sqrt(mu) xi>^{1/2} - mu^{1/4}|xi|^{1/2}| <= 1
    d.push_back({"Jmu_vs_riesz", BoundDirection::Upper, "1", false, always,
                 everywhere,
                 [](double mu, double, double xi, double) {
                   const double r = std::sqrt(mu) * std::fabs(xi);
                   return Sample{std::fabs(std::sqrt(japanese(r)) - std::sqrt(r)),
                                 1.0};
                 }});
    // |K - 1 - mu(beta - 1/3) xi^2| <= C mu^2 xi^4 on sqrt(mu)|xi| <= 0.1
    d.push_back({"taylor_limit", BoundDirection::Upper, "1", false, always,
                 [](double mu, double xi) {
                   return std::sqrt(mu) * std::fabs(xi) <= 0.1;
                 },
                 [](double mu, double beta, double xi, double) {
                   const double r = std::sqrt(mu) * std::fabs(xi);
                   return Sample{std::fabs(taylor_remainder_K(mu, beta, xi)),
                                 r * r * r * r};
                 }});
    return d;
  }();
  return defs;
}

}  // namespace

BoundSweep BoundSweep::standard() {
  BoundSweep s;
  s.mus = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  s.betas = {0.05, 0.2, 1.0 / 3.0, 1.0, 3.0};
  s.xis = log_grid(1e-6, 1e4, 1000);
  s.h0s = {0.25, 0.5, 0.9};
  return s;
}

const std::vector<std::string>& bound_registry() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& d : definitions()) out.push_back(d.id);
    return out;
  }();
  return ids;
}

BoundReport check_pointwise_bound(std::string_view bound_id,
                                  const BoundSweep& sweep) {
  const auto& defs = definitions();
  const auto it = std::find_if(defs.begin(), defs.end(),
                               [&](const BoundDef& d) { return d.id == bound_id; });
  if (it == defs.end()) {
    throw std::invalid_argument("unknown bound id: " + std::string(bound_id));
  }
  const BoundDef& def = *it;

  BoundReport report;
  report.bound_id = def.id;
  report.direction = def.direction;
  report.constant = def.constant;
  report.tolerance = kTolerance;
  const bool upper = def.direction == BoundDirection::Upper;
  report.worst_ratio = upper ? 0.0 : std::numeric_limits<double>::infinity();

  const std::vector<double> no_h0{0.0};
  const auto& h0s = def.uses_h0 ? sweep.h0s : no_h0;
  for (double mu : sweep.mus) {
    for (double beta : sweep.betas) {
      if (!def.applies(beta)) continue;
      for (double h0 : h0s) {
        for (double xi : sweep.xis) {
          if (!def.in_range(mu, xi)) continue;
          const Sample smp = def.eval(mu, beta, xi, h0);
          const double ratio = smp.lhs / smp.rhs;
          ++report.samples;
          const bool worse = upper ? !(ratio <= report.worst_ratio)
                                   : !(ratio >= report.worst_ratio);
          if (worse) {
            report.worst_ratio = ratio;
            report.worst_point = {mu, beta, xi, h0};
          }
        }
      }
    }
  }
  if (report.samples == 0) {
    report.worst_ratio = upper ? 0.0 : 1.0;
  }
  report.passed = upper ? report.worst_ratio <= 1.0 + kTolerance
                        : report.worst_ratio >= 1.0 - kTolerance;
  return report;
}

nlohmann::json to_json(const BoundReport& r) {
  return nlohmann::json{
      {"bound_id", r.bound_id},
      {"samples", r.samples},
      {"worst_ratio", r.worst_ratio},
      {"worst_point",
       {{"mu", r.worst_point.mu},
        {"beta", r.worst_point.beta},
        {"xi", r.worst_point.xi},
        {"h0", r.worst_point.h0}}},
      {"direction", r.direction == BoundDirection::Upper ? "upper" : "lower"},
      {"constant", r.constant},
      {"tolerance", r.tolerance},
      {"passed", r.passed}};
}

}  // namespace fdb
