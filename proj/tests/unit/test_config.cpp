#include "itlinq/config.hpp"

#include <algorithm>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "itlinq/presets.hpp"

namespace itlinq {
namespace {

using nlohmann::json;

json minimal_theory() {
  return json::parse(R"({
    "experiment": "theory_curves",
    "n_list": [8, 16],
    "topology": {"model": "disk", "R": 1000.0, "r0": 100.0, "beta": 1.0},
    "channel": {"model": "pathloss", "g0": 1.0, "alpha": 2.5},
    "budget": {"tx_power_dbm": 0.0, "noise_power_dbm": -110.0},
    "theory": {"beta_list": [0.5, 2.0]}
  })");
}

json minimal_sweep() {
  return json::parse(R"({
    "experiment": "sum_rate_sweep",
    "trials": 3,
    "n_list": [4],
    "topology": {"model": "square", "side": 1000.0, "len_min": 2.0, "len_max": 65.0},
    "channel": {"model": "itu1411"},
    "budget": {"tx_power_dbm": 20.0, "noise_power_dbm": -137.0},
    "schemes": [{"scheme": "itlinq", "eta": 0.7}, {"scheme": "all_on"}]
  })");
}

TEST(ConfigParse, MinimalDocumentsValidate) {
  EXPECT_NO_THROW(config_from_json(minimal_theory()));
  const ExperimentConfig c = config_from_json(minimal_sweep());
  EXPECT_EQ(c.experiment, Experiment::SumRateSweep);
  EXPECT_EQ(c.trials, 3);
  EXPECT_EQ(c.n_list, std::vector<int>{4});
  ASSERT_EQ(c.schemes.size(), 2u);
  EXPECT_EQ(c.schemes[0].scheme, "itlinq");
  EXPECT_DOUBLE_EQ(c.schemes[0].itlinq.eta, 0.7);
}

TEST(ConfigParse, DefaultsMaterialize) {
  const ExperimentConfig c = config_from_json(minimal_sweep());
  EXPECT_EQ(c.master_seed, 1u);
  EXPECT_EQ(c.priority_draws, 1);
  EXPECT_EQ(c.threads, 0);
  EXPECT_FALSE(c.dump_rates);
  EXPECT_DOUBLE_EQ(c.tail_threshold_bits, 0.1);
  EXPECT_DOUBLE_EQ(c.budget.bandwidth_hz, 1.0);
  const auto& itu = std::get<Itu1411Model>(c.channel);
  EXPECT_DOUBLE_EQ(itu.carrier_hz, 2.4e9);
  EXPECT_DOUBLE_EQ(itu.shadow_sigma_db, 10.0);
  EXPECT_EQ(itu.shadow_scope, ShadowScope::All);
  // itlinq labels carry the eta so sweeps over eta stay distinguishable.
  EXPECT_EQ(c.schemes[0].label, "itlinq_eta0.7");
  EXPECT_EQ(c.schemes[1].label, "all_on");
}

TEST(ConfigParse, UnknownKeysRejectedAtEveryLevel) {
  json root = minimal_sweep();
  root["surprise"] = 1;
  EXPECT_THROW(config_from_json(root), ConfigError);

  json topo = minimal_sweep();
  topo["topology"]["radius"] = 10.0;
  EXPECT_THROW(config_from_json(topo), ConfigError);

  json chan = minimal_sweep();
  chan["channel"]["gain"] = 1.0;
  EXPECT_THROW(config_from_json(chan), ConfigError);

  json budget = minimal_sweep();
  budget["budget"]["power"] = 10.0;
  EXPECT_THROW(config_from_json(budget), ConfigError);

  json scheme = minimal_sweep();
  scheme["schemes"][0]["margin"] = 25.0;
  EXPECT_THROW(config_from_json(scheme), ConfigError);

  // Scheme-specific keys do not leak across schemes.
  json leak = minimal_sweep();
  leak["schemes"][1]["eta"] = 0.5;  // all_on takes no parameters
  EXPECT_THROW(config_from_json(leak), ConfigError);

  json frac = minimal_theory();
  frac["theory"]["extra"] = true;
  EXPECT_THROW(config_from_json(frac), ConfigError);
}

TEST(ConfigParse, TypeMismatchesRejected) {
  json trials = minimal_sweep();
  trials["trials"] = "ten";
  EXPECT_THROW(config_from_json(trials), ConfigError);

  json frac_trials = minimal_sweep();
  frac_trials["trials"] = 2.5;
  EXPECT_THROW(config_from_json(frac_trials), ConfigError);

  json side = minimal_sweep();
  side["topology"]["side"] = "wide";
  EXPECT_THROW(config_from_json(side), ConfigError);

  json seed = minimal_sweep();
  seed["master_seed"] = -4;
  EXPECT_THROW(config_from_json(seed), ConfigError);

  json scheme_name = minimal_sweep();
  scheme_name["schemes"][0]["scheme"] = "magic";
  EXPECT_THROW(config_from_json(scheme_name), ConfigError);
}

TEST(ConfigParse, RangeValidation) {
  json bad_trials = minimal_sweep();
  bad_trials["trials"] = 0;
  EXPECT_THROW(config_from_json(bad_trials), ConfigError);

  json bad_n = minimal_sweep();
  bad_n["n_list"] = json::array();
  EXPECT_THROW(config_from_json(bad_n), ConfigError);

  json neg_n = minimal_sweep();
  neg_n["n_list"] = {4, 0};
  EXPECT_THROW(config_from_json(neg_n), ConfigError);

  json lens = minimal_sweep();
  lens["topology"]["len_min"] = 70.0;  // above len_max
  EXPECT_THROW(config_from_json(lens), ConfigError);

  json tail = minimal_sweep();
  tail["tail_threshold_bits"] = -0.5;
  EXPECT_THROW(config_from_json(tail), ConfigError);
}

TEST(ConfigParse, SectionExperimentGating) {
  // schemes on a fraction experiment
  json frac = json::parse(R"({
    "experiment": "fraction_vs_n",
    "n_list": [8],
    "topology": {"model": "disk", "R": 10000.0, "r0": 1000.0, "beta": 1.0},
    "channel": {"model": "pathloss"},
    "budget": {"tx_power_dbm": 0.0, "noise_power_dbm": -160.0},
    "fraction": {"beta_list": [0.5]}
  })");
  EXPECT_NO_THROW(config_from_json(frac));

  json with_schemes = frac;
  with_schemes["schemes"] = {json{{"scheme", "all_on"}}};
  EXPECT_THROW(config_from_json(with_schemes), ConfigError);

  json no_fraction = frac;
  no_fraction.erase("fraction");
  EXPECT_THROW(config_from_json(no_fraction), ConfigError);

  // fraction experiments insist on disk + pathloss
  json square = frac;
  square["topology"] =
      {{"model", "square"}, {"side", 1000.0}, {"len_min", 2.0}, {"len_max", 65.0}};
  EXPECT_THROW(config_from_json(square), ConfigError);

  json rayleigh = frac;
  rayleigh["channel"] = {{"model", "rayleigh_pathloss"}};
  EXPECT_THROW(config_from_json(rayleigh), ConfigError);

  // fraction block on a sweep
  json sweep = minimal_sweep();
  sweep["fraction"] = {{"beta_list", {0.5}}};
  EXPECT_THROW(config_from_json(sweep), ConfigError);

  // cdf runs take exactly one n
  json cdf = minimal_sweep();
  cdf["experiment"] = "link_rate_cdf";
  cdf["n_list"] = {4, 8};
  EXPECT_THROW(config_from_json(cdf), ConfigError);
  cdf["n_list"] = {4};
  EXPECT_NO_THROW(config_from_json(cdf));
}

TEST(ConfigParse, DuplicateLabelsRejected) {
  json j = minimal_sweep();
  j["schemes"] = {json{{"scheme", "itlinq"}, {"label", "x"}},
                  json{{"scheme", "all_on"}, {"label", "x"}}};
  EXPECT_THROW(config_from_json(j), ConfigError);
}

TEST(ConfigOverride, DottedPathsAndFanOut) {
  json j = minimal_sweep();
  apply_override(j, "trials", "7");
  EXPECT_EQ(j["trials"], 7);

  apply_override(j, "topology.side", "2000");
  EXPECT_DOUBLE_EQ(j["topology"]["side"].get<double>(), 2000.0);

  apply_override(j, "schemes.0.eta", "0.5");
  EXPECT_DOUBLE_EQ(j["schemes"][0]["eta"].get<double>(), 0.5);

  // scheme.X fans out to every scheme that carries X: only schemes[0] has eta.
  apply_override(j, "scheme.eta", "0.6");
  EXPECT_DOUBLE_EQ(j["schemes"][0]["eta"].get<double>(), 0.6);
  EXPECT_FALSE(j["schemes"][1].contains("eta"));

  // Bare strings stay strings.
  apply_override(j, "schemes.1.label", "baseline");
  EXPECT_EQ(j["schemes"][1]["label"], "baseline");

  // Nothing carries the key: hard error instead of silence.
  EXPECT_THROW(apply_override(j, "scheme.gamma_tx_db", "9"), ConfigError);
  EXPECT_THROW(apply_override(j, "schemes.5.eta", "0.5"), ConfigError);
  EXPECT_THROW(apply_override(j, "schemes.x.eta", "0.5"), ConfigError);
}

TEST(ConfigOverride, OverriddenDocumentStillValidates) {
  json j = minimal_sweep();
  apply_override(j, "scheme.eta", "0.55");
  const ExperimentConfig c = config_from_json(j);
  EXPECT_DOUBLE_EQ(c.schemes[0].itlinq.eta, 0.55);
  EXPECT_EQ(c.schemes[0].label, "itlinq_eta0.55");
}

TEST(ConfigCanonical, RoundTripIsIdempotent) {
  for (const json& doc : {minimal_theory(), minimal_sweep()}) {
    const ExperimentConfig c = config_from_json(doc);
    const json canon = config_to_json(c);
    const ExperimentConfig c2 = config_from_json(canon);
    EXPECT_EQ(config_to_json(c2), canon);
    EXPECT_EQ(config_hash(canon), config_hash(config_to_json(c2)));
  }
}

TEST(ConfigCanonical, HashIsStableHexAndKeySensitive) {
  const json canon = config_to_json(config_from_json(minimal_sweep()));
  const std::string h = config_hash(canon);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_TRUE(std::all_of(h.begin(), h.end(), [](char ch) {
    return std::isxdigit(static_cast<unsigned char>(ch));
  }));
  EXPECT_EQ(h, config_hash(canon));  // pure

  json tweaked = minimal_sweep();
  tweaked["trials"] = 4;
  EXPECT_NE(config_hash(config_to_json(config_from_json(tweaked))), h);
}

TEST(ConfigNames, ExperimentRoundTrip) {
  for (Experiment e :
       {Experiment::SumRateSweep, Experiment::LinkRateCdf,
        Experiment::FractionVsN, Experiment::FadingFraction, Experiment::GapVsN,
        Experiment::TheoryCurves})
    EXPECT_EQ(experiment_from_name(experiment_name(e)), e);
  EXPECT_THROW(experiment_from_name("bogus"), ConfigError);
}

TEST(Presets, AllEmbeddedPresetsValidate) {
  ASSERT_FALSE(presets().empty());
  for (const Preset& p : presets()) {
    SCOPED_TRACE(p.name);
    EXPECT_FALSE(p.description.empty());
    EXPECT_NO_THROW(config_from_json(p.config));
    EXPECT_EQ(find_preset(p.name), &p);
  }
  EXPECT_EQ(find_preset("no-such-preset"), nullptr);
}

TEST(Presets, StreetLevelPresetsPinTheToneBudget) {
  const Preset* p = find_preset("iv-b");
  ASSERT_NE(p, nullptr);
  const ExperimentConfig c = config_from_json(p->config);
  // Per-tone noise floor: -184 dBm/Hz + 10*log10(5 MHz / 512 tones) + 7 dB.
  EXPECT_DOUBLE_EQ(c.budget.noise_power_dbm, -137.10299956639812);
  EXPECT_DOUBLE_EQ(c.budget.tx_power_dbm, 20.0);
  EXPECT_EQ(c.n_list, std::vector<int>{1024});
  const auto& itu = std::get<Itu1411Model>(c.channel);
  EXPECT_EQ(itu.shadow_scope, ShadowScope::DirectOnly);
  // Scheme lineup: base and TIN-exponent ITLinQ, fair variant, FlashLinQ, all_on.
  ASSERT_EQ(c.schemes.size(), 5u);
  EXPECT_EQ(c.schemes[0].scheme, "itlinq");
  EXPECT_DOUBLE_EQ(c.schemes[0].itlinq.eta, 0.7);
  EXPECT_DOUBLE_EQ(c.schemes[1].itlinq.eta, 0.5);
  EXPECT_EQ(c.schemes[2].scheme, "fair_itlinq");
  EXPECT_EQ(c.schemes[3].scheme, "flashlinq");
  EXPECT_EQ(c.schemes[3].rx_aggregate, RxAggregate::Max);
  EXPECT_EQ(c.schemes[4].scheme, "all_on");
}

TEST(Presets, DiskPresetsUseLargeDisk) {
  const Preset* p = find_preset("iv-a");
  ASSERT_NE(p, nullptr);
  const ExperimentConfig c = config_from_json(p->config);
  EXPECT_EQ(c.topology.model, TopologyModel::Disk);
  EXPECT_DOUBLE_EQ(c.topology.R, 10000.0);
  EXPECT_DOUBLE_EQ(c.topology.r0, 1000.0);
  EXPECT_DOUBLE_EQ(c.budget.tx_power_dbm, 10.0);
  EXPECT_DOUBLE_EQ(c.budget.noise_power_dbm, -110.0);
}

}  // namespace
}  // namespace itlinq
