// Command-line front end: validates a JSON experiment config, dispatches
// the matching experiment, and writes CSV/JSON outputs atomically.
//
// Exit codes: 0 ok, 2 usage, 3 config, 4 runtime/io.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "itlinq/config.hpp"
#include "itlinq/harness.hpp"
#include "itlinq/io.hpp"
#include "itlinq/presets.hpp"
#include "itlinq/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

struct RunOptions {
  std::string config_path;
  std::string preset;
  std::string output_dir;
  std::vector<std::string> overrides;  // dotted.key=value
};

void add_config_options(CLI::App* cmd, RunOptions& opts, bool with_output) {
  auto* cfg = cmd->add_option("--config", opts.config_path,
                              "Path to a JSON experiment config");
  auto* preset = cmd->add_option("--preset", opts.preset,
                                 "Name of an embedded preset (see list-presets)");
  cfg->excludes(preset);
  preset->excludes(cfg);
  cmd->add_option("--set", opts.overrides,
                  "Override a config key, e.g. --set scheme.eta=0.5 or "
                  "--set schemes.0.m_db=20 (repeatable)")
      ->type_name("KEY=VALUE");
  if (with_output) {
    opts.output_dir = ".";
    cmd->add_option("--output-dir", opts.output_dir,
                    "Directory for results.csv / summary.json and friends")
        ->envname("ITLINQ_OUTPUT_DIR")
        ->capture_default_str();
  }
}

// Loads the raw JSON (file or preset), applies --set overrides, and
// validates. Throws ConfigError for config problems, IoError for I/O.
itlinq::ExperimentConfig load_config(const RunOptions& opts,
                                     nlohmann::json* raw_out) {
  nlohmann::json raw;
  if (!opts.preset.empty()) {
    const itlinq::Preset* p = itlinq::find_preset(opts.preset);
    if (p == nullptr)
      throw itlinq::ConfigError("unknown preset '" + opts.preset + "'");
    raw = p->config;
  } else if (!opts.config_path.empty()) {
    const std::string text = itlinq::read_file(opts.config_path);
    raw = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (raw.is_discarded())
      throw itlinq::ConfigError("config is not valid JSON: " +
                                opts.config_path);
  } else {
    throw itlinq::ConfigError("one of --config or --preset is required");
  }

  for (const std::string& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw itlinq::ConfigError("override must look like key=value: " + kv);
    itlinq::apply_override(raw, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (raw_out != nullptr) *raw_out = raw;
  return itlinq::config_from_json(raw);
}

void require_experiment(const itlinq::ExperimentConfig& cfg,
                        const std::vector<itlinq::Experiment>& allowed,
                        const std::string& subcommand) {
  for (itlinq::Experiment e : allowed)
    if (cfg.experiment == e) return;
  throw itlinq::ConfigError("experiment '" +
                            std::string(itlinq::experiment_name(cfg.experiment)) +
                            "' cannot run under '" + subcommand + "'");
}

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return out;
}

int run_and_write(const itlinq::ExperimentConfig& cfg,
                  const std::string& output_dir) {
  const nlohmann::json canonical = itlinq::config_to_json(cfg);
  const std::string hash = itlinq::config_hash(canonical);
  std::cout << "config_hash: " << hash << "\n";

  const itlinq::ExperimentResult result = itlinq::run_experiment(cfg);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec)
    throw itlinq::IoError("cannot create output dir: " + output_dir + " (" +
                          ec.message() + ")");

  const auto emit = [&](const std::string& name, const std::string& content) {
    const std::string path = (fs::path(output_dir) / name).string();
    itlinq::write_file_atomic(path, content);
    std::cout << "wrote: " << path << "\n";
  };

  emit("results.csv", itlinq::results_csv(result.rows));
  emit("summary.json",
       itlinq::summary_json(canonical, hash, result).dump(2) + "\n");
  if (!result.rate_rows.empty())
    emit("rates.csv", itlinq::rates_csv(result.rate_rows));
  for (const auto& series : result.cdfs)
    emit("cdf_" + sanitize(series.scheme) + "_" + series.kind + ".csv",
         itlinq::cdf_csv(series));
  return kExitOk;
}

int dispatch(const std::string& subcommand, const RunOptions& opts) {
  using itlinq::Experiment;
  if (subcommand == "validate-config") {
    nlohmann::json raw;
    const itlinq::ExperimentConfig cfg = load_config(opts, &raw);
    const nlohmann::json canonical = itlinq::config_to_json(cfg);
    std::cout << "config_hash: " << itlinq::config_hash(canonical) << "\n"
              << "valid\n";
    return kExitOk;
  }

  const itlinq::ExperimentConfig cfg = load_config(opts, nullptr);
  if (subcommand == "sweep") {
    require_experiment(cfg, {Experiment::SumRateSweep}, subcommand);
  } else if (subcommand == "fraction") {
    require_experiment(cfg,
                       {Experiment::FractionVsN, Experiment::FadingFraction,
                        Experiment::GapVsN},
                       subcommand);
  } else if (subcommand == "theory") {
    require_experiment(cfg, {Experiment::TheoryCurves}, subcommand);
  }
  // "simulate" accepts every experiment.
  return run_and_write(cfg, opts.output_dir);
}

int list_presets(const std::string& name) {
  if (name.empty()) {
    for (const auto& p : itlinq::presets())
      std::printf("%-20s %s\n", p.name.c_str(), p.description.c_str());
    return kExitOk;
  }
  const itlinq::Preset* p = itlinq::find_preset(name);
  if (p == nullptr)
    throw itlinq::ConfigError("unknown preset '" + name + "'");
  std::cout << p->config.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"itlinq: link scheduling and capacity-fraction experiments"};
  app.set_version_flag("--version", std::string(itlinq::kVersion) + " (" +
                                        itlinq::kGitRev + ")");
  app.require_subcommand(1);

  RunOptions simulate_opts, sweep_opts, fraction_opts, theory_opts,
      validate_opts;
  std::string preset_to_show;

  auto* simulate =
      app.add_subcommand("simulate", "Run any experiment from a config");
  add_config_options(simulate, simulate_opts, /*with_output=*/true);
  auto* sweep = app.add_subcommand("sweep", "Run a sum-rate sweep config");
  add_config_options(sweep, sweep_opts, /*with_output=*/true);
  auto* fraction = app.add_subcommand(
      "fraction", "Run a capacity-fraction / gap / fading config");
  add_config_options(fraction, fraction_opts, /*with_output=*/true);
  auto* theory =
      app.add_subcommand("theory", "Tabulate the closed-form fraction curves");
  add_config_options(theory, theory_opts, /*with_output=*/true);
  auto* validate = app.add_subcommand(
      "validate-config", "Parse and validate a config; writes nothing");
  add_config_options(validate, validate_opts, /*with_output=*/false);
  auto* listp =
      app.add_subcommand("list-presets", "List embedded presets, or show one");
  listp->add_option("name", preset_to_show,
                    "Preset name to print as full JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (listp->parsed()) return list_presets(preset_to_show);
    if (simulate->parsed()) return dispatch("simulate", simulate_opts);
    if (sweep->parsed()) return dispatch("sweep", sweep_opts);
    if (fraction->parsed()) return dispatch("fraction", fraction_opts);
    if (theory->parsed()) return dispatch("theory", theory_opts);
    if (validate->parsed()) return dispatch("validate-config", validate_opts);
  } catch (const itlinq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const itlinq::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
