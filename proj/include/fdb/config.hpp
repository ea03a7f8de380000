#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "fdb/timestepper.hpp"

namespace fdb {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the simulation part of a config document:
///   grid:    {N, L}
///   params:  {epsilon, mu, beta, h0, variant, c_user}
///   initial: {profile, amplitude, width | mode, mean_zero, velocity, file}
///   time:    {dt: number | "auto", t_end: number | "horizon", stride, diag_interval}
///   s_values, delta, snapshot_every
/// Missing keys keep their defaults. Wrong types, unknown variants or
/// profiles, and invalid parameter values raise ConfigError.
SimConfig parse_sim_config(const nlohmann::json& doc);

/// Fully resolved form of cfg, every key present.
nlohmann::json to_json(const SimConfig& cfg);

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& resolved);

/// Loads a JSON file; ConfigError if it cannot be opened or parsed.
nlohmann::json load_json(const std::string& path);

/// Human-readable schema printed on usage errors.
std::string config_schema();

}  // namespace fdb
