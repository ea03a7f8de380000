#include "fdb/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace fdb {

namespace {

using nlohmann::json;

const json& block(const json& doc, const char* key) {
  static const json empty = json::object();
  if (!doc.contains(key)) return empty;
  const json& b = doc.at(key);
  if (!b.is_object()) throw ConfigError(std::string("\"") + key + "\" must be an object");
  return b;
}

template <class T>
void read(const json& b, const char* key, T& out) {
  if (!b.contains(key)) return;
  try {
    out = b.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + b.at(key).dump());
  }
}

// number or the given keyword; the keyword leaves the optional empty
void read_or_keyword(const json& b, const char* key, const char* word,
                     std::optional<double>& out) {
  if (!b.contains(key)) return;
  const json& v = b.at(key);
  if (v.is_string() && v.get<std::string>() == word) {
    out.reset();
  } else if (v.is_number()) {
    out = v.get<double>();
  } else {
    throw ConfigError(std::string("\"") + key + "\" must be a number or \"" + word + "\"");
  }
}

}  // namespace

SimConfig parse_sim_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  SimConfig c;

  const json& grid = block(doc, "grid");
  read(grid, "N", c.n);
  read(grid, "L", c.length);
  if (c.n < 4 || c.n % 2 != 0) throw ConfigError("grid.N must be even and at least 4");
  if (!(c.length > 0.0)) throw ConfigError("grid.L must be positive");

  const json& params = block(doc, "params");
  read(params, "epsilon", c.params.epsilon);
  read(params, "mu", c.params.mu);
  read(params, "beta", c.params.beta);
  read(params, "h0", c.params.h0);
  read(params, "c_user", c.params.c_user);
  if (params.contains("variant")) {
    std::string v;
    read(params, "variant", v);
    try {
      c.params.variant = parse_variant(v);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  try {
    c.params.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  const json& init = block(doc, "initial");
  read(init, "profile", c.initial.profile);
  read(init, "amplitude", c.initial.amplitude);
  read(init, "width", c.initial.width);
  read(init, "mode", c.initial.mode);
  read(init, "mean_zero", c.initial.mean_zero);
  read(init, "velocity", c.initial.velocity);
  read(init, "file", c.initial.file);
  const auto& prof = c.initial.profile;
  if (prof != "gaussian" && prof != "cosine" && prof != "soliton-like" && prof != "file") {
    throw ConfigError("unknown initial.profile \"" + prof + "\"");
  }
  if (prof == "file" && c.initial.file.empty()) throw ConfigError("profile \"file\" needs initial.file");
  if (c.initial.velocity != "zero" && c.initial.velocity != "same") {
    throw ConfigError("initial.velocity must be \"zero\" or \"same\"");
  }

  const json& time = block(doc, "time");
  read_or_keyword(time, "dt", "auto", c.dt);
  read_or_keyword(time, "t_end", "horizon", c.t_end);
  read(time, "stride", c.stride);
  read(time, "diag_interval", c.diag_interval);
  if (c.dt && !(*c.dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (c.t_end && !(*c.t_end > 0.0)) throw ConfigError("time.t_end must be positive");
  if (c.stride < 1) throw ConfigError("time.stride must be at least 1");

  read(doc, "s_values", c.s_values);
  if (c.s_values.empty()) throw ConfigError("s_values must not be empty");
  read(doc, "delta", c.delta);
  read(doc, "snapshot_every", c.snapshot_every);
  if (c.params.variant == Variant::Regularized && !(c.delta > 0.0)) {
    throw ConfigError("the regularized variant needs delta > 0");
  }
  return c;
}

json to_json(const SimConfig& c) {
  const ModelParams& p = c.params;
  json init = {{"profile", c.initial.profile},
               {"amplitude", c.initial.amplitude},
               {"width", c.initial.width},
               {"mode", c.initial.mode},
               {"mean_zero", c.initial.mean_zero},
               {"velocity", c.initial.velocity},
               {"file", c.initial.file}};
  json time = {{"dt", c.dt ? json(*c.dt) : json("auto")},
               {"t_end", c.t_end ? json(*c.t_end) : json("horizon")},
               {"stride", c.stride},
               {"diag_interval", c.diag_interval}};
  return {{"grid", {{"N", c.n}, {"L", c.length}}},
          {"params",
           {{"epsilon", p.epsilon},
            {"mu", p.mu},
            {"beta", p.beta},
            {"h0", p.h0},
            {"variant", to_string(p.variant)},
            {"c_user", p.c_user}}},
          {"initial", init},
          {"time", time},
          {"s_values", c.s_values},
          {"delta", c.delta},
          {"snapshot_every", c.snapshot_every}};
}

std::string config_hash(const json& resolved) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : resolved.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

std::string config_schema() {
  return R"({
  "grid":    {"N": 1024, "L": 100.0},
  "params":  {"epsilon": 0.1, "mu": 1.0, "beta": 1.0, "h0": 0.5,
              "variant": "full-dispersion | whitham-boussinesq | whitham-boussinesq-2 | regularized",
              "c_user": 1.0},
  "initial": {"profile": "gaussian | cosine | soliton-like | file", "amplitude": 1.0,
              "width": 2.0, "mode": 1, "mean_zero": false, "velocity": "zero | same",
              "file": "<snapshot csv>"},
  "time":    {"dt": "auto | <number>", "t_end": "horizon | <number>", "stride": 10,
              "diag_interval": 0.0},
  "s_values": [0, 2],
  "delta": 0.0,
  "lifespan":      {"eps_list": [0.2, 0.1, 0.05]},
  "bona_smith":    {"deltas": [0.4, 0.2, 0.1, 0.05], "t_end": 0.5},
  "mollifier":     {"N": 65536, "s": 1.0, "alpha": 1.0, "b": 1.0, "gamma": 0.05},
  "dispersion_limit": {"betas": [0, 0.3333333333333333, 1], "mu": 1.0},
  "inequalities":  {"cases": ["..."], "trials": 50, "mus": [1e-4, 1e-3, 1e-2, 1e-1, 1],
                    "betas": [0.05, 0.2, 0.3333333333333333, 1, 3]},
  "figures":       {"xi_max": 10.0, "points": 1001}
})";
}

}  // namespace fdb
