#include "spreadlab/cli/runner.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "spreadlab/cli/config.hpp"
#include "spreadlab/cli/experiments.hpp"
#include "spreadlab/errors.hpp"

namespace spreadlab::cli {

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = kExitOk;
  std::string error;
  ExperimentResult result;
};

fs::path resolve_output(Config& cfg, const RunOptions& opts) {
  if (opts.out) {
    cfg.set("output.dir", opts.out->string());
    return cfg.text("output.dir");
  }
  if (cfg.has("output.dir")) return cfg.text("output.dir");
  const char* env = std::getenv(kOutputEnv);
  return cfg.text("output.dir", env && *env ? env : "spreadlab_out");
}

void apply_seed(Config& cfg, const RunOptions& opts) {
  if (opts.seed) cfg.set("seed", std::to_string(*opts.seed));
}

// Runs one configured experiment and maps the exception hierarchy to exit codes.
Outcome execute(Config& cfg) {
  Outcome o;
  try {
    o.result = run_experiment(cfg);
    o.code = o.result.passed ? kExitOk : kExitInvariant;
  } catch (const BadParams& e) {
    o.code = kExitConfig;
    o.error = e.what();
  } catch (const GuardViolation& e) {
    o.code = kExitGuard;
    o.error = e.what();
  } catch (const std::exception& e) {
    o.code = kExitInvariant;
    o.error = e.what();
  }
  return o;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string summary_text(const ExperimentResult& r, const Config& cfg) {
  std::string s;
  auto line = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
  line("experiment", r.experiment);
  line("invariant", r.invariant);
  line(r.invariant, r.passed ? "true" : "false");
  for (const auto& [k, v] : r.summary) line(k, v);
  for (const auto& [k, v] : cfg.resolved()) line("config." + k, v);
  return s;
}

void write_outputs(const fs::path& dir, const ExperimentResult& r, const Config& cfg) {
  fs::create_directories(dir);
  for (const auto& tab : r.tables) write_csv(dir / (tab.name + ".csv"), tab);
  write_text(dir / "summary", summary_text(r, cfg));
  write_text(dir / "resolved.cfg", cfg.to_ini());
}

void report(std::ostream& log, const std::string& label, const Outcome& o) {
  if (!o.error.empty()) {
    log << label << ": error: " << o.error << '\n';
  } else {
    log << label << ": " << o.result.invariant << " = " << (o.result.passed ? "true" : "false")
        << '\n';
  }
}

}  // namespace

int run(const fs::path& config_path, const RunOptions& opts, std::ostream& log) {
  Config cfg;
  fs::path dir;
  try {
    cfg = Config::load(config_path);
    apply_seed(cfg, opts);
    dir = resolve_output(cfg, opts);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  Outcome o = execute(cfg);
  report(log, config_path.filename().string(), o);
  if (!o.error.empty()) return o.code;
  try {
    write_outputs(dir, o.result, cfg);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return o.code;
}

int sweep(const fs::path& config_path, const RunOptions& opts, std::ostream& log) {
  Config base;
  fs::path dir;
  std::string parameter;
  std::vector<std::string> values;
  try {
    base = Config::load(config_path);
    apply_seed(base, opts);
    dir = resolve_output(base, opts);
    parameter = base.text("sweep.parameter");
    values = base.list("sweep.values");
    if (values.empty()) throw ConfigError("sweep.values is empty");
    if (parameter.rfind("sweep.", 0) == 0 || parameter == "experiment") {
      throw ConfigError("sweep.parameter cannot be '" + parameter + "'");
    }
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::vector<Config> configs(values.size(), base);
  std::vector<Outcome> outcomes(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    configs[i].erase("sweep.parameter");
    configs[i].erase("sweep.values");
    configs[i].set(parameter, values[i]);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      outcomes[i] = execute(configs[i]);
      if (outcomes[i].error.empty()) {
        try {
          write_outputs(dir / "runs" / std::to_string(i), outcomes[i].result, configs[i]);
        } catch (const std::exception& e) {
          outcomes[i].code = kExitInvariant;
          outcomes[i].error = e.what();
        }
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(values.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int code = kExitOk;
  for (std::size_t i = 0; i < values.size(); ++i) {
    report(log, parameter + "=" + values[i], outcomes[i]);
    if (code == kExitOk && !outcomes[i].error.empty()) code = outcomes[i].code;
  }
  if (code != kExitOk) return code;

  try {
    // Merge in sweep order.
    std::map<std::string, CsvTable> merged;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < values.size(); ++i) {
      // Non-numeric sweep values are recorded by their index.
      char* end = nullptr;
      double sv = std::strtod(values[i].c_str(), &end);
      if (*end != '\0') sv = static_cast<double>(i);
      for (const auto& tab : outcomes[i].result.tables) {
        auto [it, fresh] = merged.try_emplace(tab.name);
        CsvTable& m = it->second;
        if (fresh) {
          order.push_back(tab.name);
          m.name = tab.name;
          m.metadata = tab.metadata;
          m.metadata.emplace_back("sweep_parameter", parameter);
          m.columns.push_back({"sweep_value", "1"});
          m.columns.insert(m.columns.end(), tab.columns.begin(), tab.columns.end());
        }
        for (const auto& row : tab.rows) {
          std::vector<double> r{sv};
          r.insert(r.end(), row.begin(), row.end());
          m.add_row(std::move(r));
        }
      }
    }
    fs::create_directories(dir);
    for (const auto& name : order) write_csv(dir / (name + ".csv"), merged.at(name));

    std::string s;
    auto line = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
    const ExperimentResult& first = outcomes.front().result;
    bool all_passed = true;
    for (const auto& o : outcomes) all_passed = all_passed && o.result.passed;
    line("experiment", first.experiment);
    line("sweep.parameter", parameter);
    line("sweep.runs", std::to_string(values.size()));
    line("invariant", first.invariant);
    line(first.invariant, all_passed ? "true" : "false");
    if (first.experiment == "leakage") {
      bool monotonic = true;
      double prev = -1.0;
      for (const auto& o : outcomes) {
        for (const auto& [k, v] : o.result.summary) {
          if (k != "leakage") continue;
          const double cur = std::strtod(v.c_str(), nullptr);
          if (cur < prev) monotonic = false;
          prev = cur;
        }
      }
      line("leakage_monotonic", monotonic ? "true" : "false");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string pre = "run." + std::to_string(i) + ".";
      line(pre + "value", values[i]);
      line(pre + outcomes[i].result.invariant, outcomes[i].result.passed ? "true" : "false");
      for (const auto& [k, v] : outcomes[i].result.summary) line(pre + k, v);
    }
    for (const auto& [k, v] : base.resolved()) line("config." + k, v);
    write_text(dir / "summary", s);
    write_text(dir / "resolved.cfg", base.to_ini());
    return all_passed ? kExitOk : kExitInvariant;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"spreadlab: instantaneous-spreading experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  RunOptions opts;
  std::string out;
  std::uint64_t seed = 0;
  app.add_option("--out", out, "Output directory (default: output.dir, then $SPREADLAB_OUT)");
  auto* seed_opt = app.add_option("--seed", seed, "Seed override for the dichotomy corpus");
  app.add_option("--threads", opts.threads, "Concurrent sweep sub-runs")
      ->check(CLI::PositiveNumber);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  run_cmd->add_option("config", config_path, "Config file")->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  if (!out.empty()) opts.out = out;
  if (seed_opt->count() > 0) opts.seed = seed;

  if (run_cmd->parsed()) return run(config_path, opts, std::cerr);
  return sweep(config_path, opts, std::cerr);
}

}  // namespace spreadlab::cli
