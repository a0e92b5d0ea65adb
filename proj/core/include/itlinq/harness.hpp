#pragma once

#include <string>
#include <utility>
#include <vector>

#include "itlinq/config.hpp"

namespace itlinq {

struct ResultRow {
  std::string experiment;
  int n = 0;
  std::string scheme;
  std::string statistic;
  double value = 0.0;
  double stderr_ = 0.0;
};

// One CDF trace destined for its own CSV file.
struct CdfSeries {
  std::string scheme;
  std::string kind;  // "link_rate" or "sum_rate"
  std::vector<std::pair<double, double>> points;
};

// Per-recorded-block rate rows for the optional rates.csv dump. When
// priority_draws > 1 each draw is its own scheduling block, numbered
// trial * priority_draws + draw.
struct RateRow {
  int trial = 0;
  std::string scheme;
  int link = 0;
  bool active = false;
  double sinr_db = 0.0;
  double rate_bits_s_hz = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;   // sorted canonically
  std::vector<CdfSeries> cdfs;   // LinkRateCdf only
  std::vector<RateRow> rate_rows;  // when dump_rates
};

// Dispatch on cfg.experiment. Results are a pure function of the config:
// trial substreams are derived from (master_seed, n index, trial index),
// so thread count and scheduling order cannot change the output.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentResult run_sum_rate_sweep(const ExperimentConfig& cfg);
ExperimentResult run_link_rate_cdf(const ExperimentConfig& cfg);
ExperimentResult run_fraction_vs_n(const ExperimentConfig& cfg);
ExperimentResult run_fading_fraction(const ExperimentConfig& cfg);
ExperimentResult run_gap_vs_n(const ExperimentConfig& cfg);
ExperimentResult run_theory_curves(const ExperimentConfig& cfg);

// Seed chain used by every experiment, exposed for replay in tests.
// idx = n_index * 2^32 + trial.
std::uint64_t trial_stream(std::uint64_t master_seed, std::uint64_t n_index,
                           std::uint64_t trial);
// Roles of the per-trial child streams.
enum class StreamRole : std::uint64_t {
  Topology = 1,
  Channel = 2,
  Priority = 3,
  Fading = 4
};
std::uint64_t role_stream(std::uint64_t trial_seed, StreamRole role);

}  // namespace itlinq
