#include "fdb/params.hpp"

#include <cmath>
#include <stdexcept>

namespace fdb {

Variant parse_variant(std::string_view name) {
  if (name == "full-dispersion") return Variant::FullDispersion;
  if (name == "whitham-boussinesq") return Variant::WhithamBoussinesq;
  if (name == "whitham-boussinesq-2") return Variant::WhithamBoussinesq2;
  if (name == "regularized") return Variant::Regularized;
  throw std::invalid_argument("unknown variant: " + std::string(name));
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::FullDispersion:
      return "full-dispersion";
    case Variant::WhithamBoussinesq:
      return "whitham-boussinesq";
    case Variant::WhithamBoussinesq2:
      return "whitham-boussinesq-2";
    case Variant::Regularized:
      return "regularized";
  }
  return "unknown";
}

void ModelParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(epsilon >= 0.0 && epsilon < 1.0)) fail("epsilon must lie in [0, 1)");
  if (!(mu > 0.0 && mu <= 1.0)) fail("mu must lie in (0, 1]");
  if (!(beta >= 0.0) || !std::isfinite(beta)) fail("beta must be nonnegative");
  if (!(h0 > 0.0 && h0 < 1.0)) fail("h0 must lie in (0, 1)");
  if (!(c_user > 0.0) || !std::isfinite(c_user)) fail("c_user must be positive");
  if ((variant == Variant::FullDispersion || variant == Variant::Regularized) &&
      !(beta > 0.0)) {
    fail("the full-dispersion system needs beta > 0");
  }
}

}  // namespace fdb
