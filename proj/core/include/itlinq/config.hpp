#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "itlinq/channel.hpp"
#include "itlinq/scheduling.hpp"
#include "itlinq/topology.hpp"

namespace itlinq {

enum class Experiment {
  SumRateSweep,
  LinkRateCdf,
  FractionVsN,
  FadingFraction,
  GapVsN,
  TheoryCurves
};

// Raised for anything wrong with a config document: unknown keys, type
// mismatches, missing fields, out-of-range values, or an experiment /
// subcommand mismatch.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SchemeSpec {
  std::string scheme;  // itlinq | fair_itlinq | flashlinq | tdma | all_on
  std::string label;   // row label; defaults to scheme plus distinguishing params
  ItlinqParams itlinq;
  FairItlinqParams fair;
  double gamma_tx_db = 9.0;
  double gamma_rx_db = 9.0;
  RxAggregate rx_aggregate = RxAggregate::Sum;
};

struct TopologySpec {
  TopologyModel model = TopologyModel::Square;
  double R = 0.0;
  double r0 = 0.0;
  double beta = 0.0;
  double side = 0.0;
  double len_min = 0.0;
  double len_max = 0.0;
};

// Fraction-family settings; beta_list overrides topology.beta per run.
struct FractionSpec {
  std::vector<double> beta_list;
  bool fading = false;
};

struct TheorySpec {
  std::vector<double> beta_list;
  bool normalized = true;  // gamma chosen so the beta<1 constant equals 1
};

struct ExperimentConfig {
  Experiment experiment = Experiment::SumRateSweep;
  std::uint64_t master_seed = 1;
  int trials = 100;
  int priority_draws = 1;  // per-trial priority redraws (LinkRateCdf)
  int threads = 0;         // 0 = hardware concurrency
  std::vector<int> n_list;
  TopologySpec topology;
  ChannelModel channel = Itu1411Model{};
  LinkBudget budget;
  std::vector<SchemeSpec> schemes;
  FractionSpec fraction;
  TheorySpec theory;
  bool dump_rates = false;            // per-block link rate CSV (LinkRateCdf)
  double tail_threshold_bits = 0.1;   // low-rate tail cutoff (bits/s/Hz)
};

// Strict parse: unknown keys anywhere in the document are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);

// Canonical echo with all defaults materialized; two configs that parse
// to the same experiment produce identical canonical forms.
nlohmann::json config_to_json(const ExperimentConfig& c);

// Apply one dotted-path override onto a raw JSON document before parsing.
// "schemes.0.eta=0.5" addresses array element 0; the shorthand
// "scheme.eta=0.5" fans out to every schemes[] entry carrying that key.
// The value is parsed as JSON when possible, else taken as a string.
void apply_override(nlohmann::json& j, const std::string& dotted_key,
                    const std::string& value);

// 16 hex chars, FNV-1a 64 over the canonical dump.
std::string config_hash(const nlohmann::json& canonical);

const char* experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);

}  // namespace itlinq
