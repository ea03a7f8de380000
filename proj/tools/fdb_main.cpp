// fdb: simulation and verification driver.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fdb/config.hpp"
#include "fdb/experiments.hpp"
#include "fdb/inequality_lab.hpp"
#include "fdb/symbol_bounds.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fdb;

namespace {

struct Options {
  std::string config;
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json load_config(const Options& o, bool required) {
  if (o.config.empty()) {
    if (required) throw UsageError("this subcommand needs --config <path>");
    return json::object();
  }
  return load_json(o.config);
}

const json& block(const json& doc, const char* key) {
  static const json empty = json::object();
  if (!doc.contains(key)) return empty;
  if (!doc.at(key).is_object()) throw ConfigError(std::string("\"") + key + "\" must be an object");
  return doc.at(key);
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

void write_json(const fs::path& path, const json& j) {
  fs::create_directories(path.parent_path());
  std::ofstream os(path);
  os << j.dump(2) << "\n";
}

int finish(const Options& o, const std::string& what, bool passed,
           std::chrono::steady_clock::time_point t0) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.quiet) {
    std::cout << what << ": " << (passed ? "PASS" : "FAIL") << " (" << secs << " s, output in "
              << o.out_dir << ")\n";
  }
  return passed ? 0 : 2;
}

int run_experiment(const Options& o, const ExperimentResult& r,
                   std::chrono::steady_clock::time_point t0) {
  write_json(fs::path(o.out_dir) / "report.json", to_json(r));
  return finish(o, r.id, r.passed, t0);
}

// ---------------------------------------------------------------------------

int cmd_simulate(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  SimConfig cfg = parse_sim_config(load_config(o, true));
  cfg.out_dir = o.out_dir;
  const json resolved = to_json(cfg);
  const SimResult r = simulate(cfg);
  const auto& last = r.series.rows.back();
  json result = {{"dt", r.dt},
                 {"steps", r.steps},
                 {"t_end", r.t_end},
                 {"admissible", r.admissible},
                 {"admissibility_note", r.admissibility_note},
                 {"stopped", r.stopped},
                 {"stop_time", r.stop_time},
                 {"stop_reason", r.stop_reason},
                 {"energy", to_string(r.series.energy)},
                 {"final", {{"t", last.t}, {"norms", last.norms}, {"energies", last.energies},
                            {"margin", last.margin}}},
                 {"snapshots", r.snapshots}};
  write_json(fs::path(o.out_dir) / "report.json", {{"experiment", "simulate"},
                                                   {"config_hash", config_hash(resolved)},
                                                   {"config", resolved},
                                                   {"result", result}});
  if (!o.quiet) {
    std::cout << "simulate: " << r.steps << " steps to t = " << last.t
              << (r.stopped ? " (stopped: " + r.stop_reason + ")" : "")
              << (r.admissible ? "" : " [inadmissible: " + r.admissibility_note + "]") << "\n";
  }
  return finish(o, "simulate", true, t0);
}

int cmd_verify_symbols(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const json doc = load_config(o, false);
  BoundSweep sweep = BoundSweep::standard();
  const json& b = block(doc, "symbols");
  read(b, "mus", sweep.mus);
  read(b, "betas", sweep.betas);
  read(b, "h0s", sweep.h0s);
  json reports = json::array();
  bool ok = true;
  for (const auto& id : bound_registry()) {
    const BoundReport r = check_pointwise_bound(id, sweep);
    ok = ok && r.passed;
    reports.push_back(to_json(r));
    if (!o.quiet) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << id << " worst_ratio=" << r.worst_ratio
                << "\n";
    }
  }
  const json cfg = {{"mus", sweep.mus}, {"betas", sweep.betas}, {"h0s", sweep.h0s},
                    {"xi_points", sweep.xis.size()}};
  write_json(fs::path(o.out_dir) / "report.json", {{"experiment", "verify-symbols"},
                                                   {"config_hash", config_hash(cfg)},
                                                   {"config", cfg},
                                                   {"reports", reports},
                                                   {"passed", ok}});
  return finish(o, "verify-symbols", ok, t0);
}

int cmd_verify_inequalities(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const json doc = load_config(o, false);
  const json& b = block(doc, "inequalities");
  CommutatorSweep sweep;
  RandomFieldSpec fields = commutator_fields();
  std::vector<std::string> cases;
  for (const auto& c : commutator_registry()) cases.push_back(c.id);
  read(b, "cases", cases);
  read(b, "trials", sweep.trials);
  read(b, "mus", sweep.mus);
  read(b, "betas", sweep.betas);
  read(b, "t0", sweep.t0);
  read(b, "multiscale", sweep.multiscale);
  read(b, "seed", sweep.seed);
  if (b.contains("s")) sweep.s = b.at("s").get<double>();
  const json& f = block(b, "fields");
  read(f, "N", fields.n);
  read(f, "L", fields.length);
  read(f, "decay", fields.decay);
  read(f, "k_max", fields.k_max);
  if (o.seed) sweep.seed = *o.seed;
  if (sweep.trials < 1) throw ConfigError("inequalities.trials must be positive");

  const json cfg = {{"cases", cases},
                    {"trials", sweep.trials},
                    {"mus", sweep.mus},
                    {"betas", sweep.betas},
                    {"t0", sweep.t0},
                    {"multiscale", sweep.multiscale},
                    {"seed", sweep.seed},
                    {"fields", {{"N", fields.n}, {"L", fields.length}, {"decay", fields.decay},
                                {"k_max", fields.k_max}}}};
  fs::create_directories(o.out_dir);
  std::ofstream lines(fs::path(o.out_dir) / "points.jsonl");
  std::ofstream csv(fs::path(o.out_dir) / "summary.csv");
  csv << summary_csv_header() << "\n";
  json reports = json::array();
  bool ok = true;
  for (const auto& id : cases) {
    RatioReport r;
    try {
      r = run_commutator_case(id, sweep, fields);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    ok = ok && r.passed;
    for (const auto& p : point_records(r)) lines << p.dump() << "\n";
    csv << summary_csv_row(r) << "\n";
    reports.push_back(to_json(r));
    if (!o.quiet) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << id << " max_ratio=" << r.max_ratio
                << " mu_spread=" << r.mu_spread << "\n";
    }
  }
  write_json(fs::path(o.out_dir) / "report.json", {{"experiment", "verify-inequalities"},
                                                   {"config_hash", config_hash(cfg)},
                                                   {"config", cfg},
                                                   {"reports", reports},
                                                   {"passed", ok}});
  return finish(o, "verify-inequalities", ok, t0);
}

int cmd_sweep_lifespan(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const json doc = load_config(o, false);
  LifespanSpec spec;
  spec.base = parse_sim_config(doc);
  const json& b = block(doc, "lifespan");
  read(b, "eps_list", spec.eps_list);
  read(b, "bound_factor", spec.bound_factor);
  read(b, "alpha_lo", spec.alpha_lo);
  read(b, "alpha_hi", spec.alpha_hi);
  return run_experiment(o, sweep_lifespan(spec), t0);
}

int cmd_bona_smith(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const json doc = load_config(o, false);
  BonaSmithSpec spec;
  spec.base = parse_sim_config(doc);
  const json& b = block(doc, "bona_smith");
  read(b, "deltas", spec.deltas);
  read(b, "t_end", spec.t_end);
  read(b, "min_order", spec.min_order);
  MollifierRateSpec m;
  const json& mb = block(doc, "mollifier");
  read(mb, "N", m.n);
  read(mb, "s", m.s);
  read(mb, "alpha", m.alpha);
  read(mb, "b", m.b);
  read(mb, "gamma", m.gamma);
  read(mb, "deltas", m.deltas);
  read(mb, "seed", m.seed);
  if (o.seed) m.seed = *o.seed;

  const ExperimentResult evolved = bona_smith_convergence(spec);
  const ExperimentResult rates = mollifier_rates(m);
  const bool ok = evolved.passed && rates.passed;
  write_json(fs::path(o.out_dir) / "report.json",
             {{"experiment", "bona-smith"},
              {"passed", ok},
              {"evolution", to_json(evolved)},
              {"mollifier_rates", to_json(rates)}});
  if (!o.quiet) {
    std::cout << "evolved order " << evolved.fits.value("order", 0.0) << ", mollifier exponents "
              << rates.fits["growth_exponent"] << " / " << rates.fits["decay_exponent"] << "\n";
  }
  return finish(o, "bona-smith", ok, t0);
}

int cmd_dispersion_limit(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const json doc = load_config(o, false);
  DispersionLimitSpec spec;
  const json& b = block(doc, "dispersion_limit");
  read(b, "betas", spec.betas);
  read(b, "mu", spec.mu);
  read(b, "r_lo", spec.r_lo);
  read(b, "r_hi", spec.r_hi);
  read(b, "points", spec.points);
  return run_experiment(o, dispersion_limit_study(spec), t0);
}

int cmd_emit_figures(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const json doc = load_config(o, false);
  FigureSpec spec;
  spec.out_dir = o.out_dir;
  const json& b = block(doc, "figures");
  read(b, "beta_low", spec.beta_low);
  read(b, "beta_high", spec.beta_high);
  read(b, "xi_max", spec.xi_max);
  read(b, "points", spec.points);
  read(b, "epsilon", spec.epsilon);
  return run_experiment(o, emit_figures(spec), t0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-dispersion Boussinesq simulation and verification laboratory"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;

  using Handler = int (*)(const Options&);
  const std::pair<const char*, std::pair<const char*, Handler>> commands[] = {
      {"simulate", {"integrate one configuration", cmd_simulate}},
      {"verify-symbols", {"check the pointwise symbol bounds", cmd_verify_symbols}},
      {"verify-inequalities", {"run the commutator estimate registry", cmd_verify_inequalities}},
      {"sweep-lifespan", {"lifespan against epsilon", cmd_sweep_lifespan}},
      {"bona-smith", {"regularized convergence and mollifier rates", cmd_bona_smith}},
      {"dispersion-limit", {"Taylor remainder of K near the long-wave limit", cmd_dispersion_limit}},
      {"emit-figures", {"write symbol and profile curve data", cmd_emit_figures}},
  };
  Handler chosen = nullptr;
  for (const auto& [name, info] : commands) {
    CLI::App* sub = app.add_subcommand(name, info.first);
    sub->add_option("--config", opt.config, "JSON configuration file");
    sub->add_option("--out-dir", opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "override the random seed");
    sub->add_flag("--quiet", opt.quiet, "suppress progress output");
    const Handler h = info.second;
    sub->callback([&chosen, h] { chosen = h; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  for (const auto* sub : app.get_subcommands()) {
    if (sub->count("--seed") > 0) opt.seed = seed;
  }

  try {
    return chosen(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nexpected config schema:\n"
              << config_schema() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\nexpected config schema:\n"
              << config_schema() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
