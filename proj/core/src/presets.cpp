#include "itlinq/presets.hpp"

namespace itlinq {

namespace {

using nlohmann::json;

// Noise floors are stated per measurement tone: -184 dBm/Hz density plus a
// 7 dB noise figure over a 5 MHz / 512 tone bandwidth for the microcell
// preset, and a normalization that makes the dense-network capacity
// fraction equal n^(beta-1) exactly for the disk presets.
std::vector<Preset> build() {
  std::vector<Preset> out;

  out.push_back(Preset{
      "iv-a",
      "Disk-cell sum-rate sweep: pathloss channel, ITLinQ vs TDMA vs "
      "no scheduling, n from 8 to 256",
      json::parse(R"({
        "experiment": "sum_rate_sweep",
        "master_seed": 1001,
        "trials": 100,
        "n_list": [8, 16, 32, 64, 128, 256],
        "topology": {"model": "disk", "R": 10000.0, "r0": 1000.0, "beta": 1.0},
        "channel": {"model": "pathloss", "g0": 1.0, "alpha": 2.5},
        "budget": {"tx_power_dbm": 10.0, "noise_power_dbm": -110.0,
                   "bandwidth_hz": 1.0},
        "schemes": [
          {"scheme": "itlinq", "eta": 0.7, "m_db": 25.0},
          {"scheme": "tdma"},
          {"scheme": "all_on"}
        ]
      })")});

  out.push_back(Preset{
      "iv-b",
      "Urban microcell sum-rate comparison: 1024 links in a 1 km square, "
      "LoS breakpoint channel with shadowing, all schedulers",
      json::parse(R"({
        "experiment": "sum_rate_sweep",
        "master_seed": 1002,
        "trials": 100,
        "n_list": [1024],
        "topology": {"model": "square", "side": 1000.0,
                     "len_min": 2.0, "len_max": 65.0},
        "channel": {"model": "itu1411", "carrier_hz": 2.4e9,
                    "h_b": 1.5, "h_m": 1.5, "shadow_sigma_db": 10.0,
                    "antenna_gain_db_per_device": -2.5,
                    "shadow_scope": "direct"},
        "budget": {"tx_power_dbm": 20.0,
                   "noise_power_dbm": -137.10299956639812,
                   "bandwidth_hz": 9765.625},
        "schemes": [
          {"scheme": "itlinq", "eta": 0.7, "m_db": 25.0},
          {"scheme": "itlinq", "eta": 0.5, "m_db": 25.0},
          {"scheme": "fair_itlinq", "eta": 0.7, "m_db": 25.0,
           "snr_th_db": 110.0, "eta_bar": 0.6, "m_bar_db": 20.0},
          {"scheme": "flashlinq", "gamma_tx_db": 9.0, "gamma_rx_db": 9.0,
           "rx_aggregate": "max"},
          {"scheme": "all_on"}
        ]
      })")});

  out.push_back(Preset{
      "iv-b-cdf",
      "Link-rate CDF in the urban microcell: per-link rates averaged over "
      "8 priority draws per drop, 1024 links",
      json::parse(R"({
        "experiment": "link_rate_cdf",
        "master_seed": 1003,
        "trials": 30,
        "priority_draws": 8,
        "n_list": [1024],
        "topology": {"model": "square", "side": 1000.0,
                     "len_min": 2.0, "len_max": 65.0},
        "channel": {"model": "itu1411", "carrier_hz": 2.4e9,
                    "h_b": 1.5, "h_m": 1.5, "shadow_sigma_db": 10.0,
                    "antenna_gain_db_per_device": -2.5,
                    "shadow_scope": "direct"},
        "budget": {"tx_power_dbm": 20.0,
                   "noise_power_dbm": -137.10299956639812,
                   "bandwidth_hz": 9765.625},
        "tail_threshold_bits": 0.1,
        "schemes": [
          {"scheme": "itlinq", "eta": 0.7, "m_db": 25.0},
          {"scheme": "fair_itlinq", "eta": 0.7, "m_db": 25.0,
           "snr_th_db": 110.0, "eta_bar": 0.6, "m_bar_db": 20.0},
          {"scheme": "flashlinq", "gamma_tx_db": 9.0, "gamma_rx_db": 9.0,
           "rx_aggregate": "max"}
        ]
      })")});

  out.push_back(Preset{
      "fraction-normalized",
      "Capacity fraction vs n on the disk: transmit budget normalized so "
      "the beta=0.5 theory curve is exactly n^(-1/2)",
      json::parse(R"({
        "experiment": "fraction_vs_n",
        "master_seed": 1004,
        "trials": 50,
        "n_list": [8, 16, 32, 64, 128, 256, 512, 1024],
        "topology": {"model": "disk", "R": 10000.0, "r0": 1000.0, "beta": 1.0},
        "channel": {"model": "pathloss", "g0": 1.0, "alpha": 2.5},
        "budget": {"tx_power_dbm": 0.0,
                   "noise_power_dbm": -138.9904810249571,
                   "bandwidth_hz": 1.0},
        "fraction": {"beta_list": [0.5, 1.0, 1.5, 2.0], "fading": false}
      })")});

  out.push_back(Preset{
      "fraction-gap",
      "Capacity gap vs n on the disk at a 160 dB transmit budget",
      json::parse(R"({
        "experiment": "gap_vs_n",
        "master_seed": 1005,
        "trials": 100,
        "n_list": [64, 256, 1024],
        "topology": {"model": "disk", "R": 10000.0, "r0": 1000.0, "beta": 1.0},
        "channel": {"model": "pathloss", "g0": 1.0, "alpha": 2.5},
        "budget": {"tx_power_dbm": 0.0, "noise_power_dbm": -160.0,
                   "bandwidth_hz": 1.0},
        "fraction": {"beta_list": [0.5, 1.0], "fading": false}
      })")});

  out.push_back(Preset{
      "fading",
      "Paired fading study: capacity fraction with and without Rayleigh "
      "fading on identical drops",
      json::parse(R"({
        "experiment": "fading_fraction",
        "master_seed": 1006,
        "trials": 200,
        "n_list": [256],
        "topology": {"model": "disk", "R": 10000.0, "r0": 1000.0, "beta": 1.0},
        "channel": {"model": "pathloss", "g0": 1.0, "alpha": 2.5},
        "budget": {"tx_power_dbm": 0.0, "noise_power_dbm": -160.0,
                   "bandwidth_hz": 1.0},
        "fraction": {"beta_list": [0.5], "fading": true}
      })")});

  out.push_back(Preset{
      "theory",
      "Closed-form capacity-fraction curves across all three regimes, "
      "normalized geometry",
      json::parse(R"({
        "experiment": "theory_curves",
        "master_seed": 1,
        "trials": 1,
        "n_list": [4, 8, 16, 32, 64, 128, 256, 512, 1024],
        "topology": {"model": "disk", "R": 10000.0, "r0": 1000.0, "beta": 1.0},
        "channel": {"model": "pathloss", "g0": 1.0, "alpha": 2.5},
        "budget": {"tx_power_dbm": 0.0, "noise_power_dbm": -120.0,
                   "bandwidth_hz": 1.0},
        "theory": {"beta_list": [0.5, 0.75, 1.0, 1.5, 2.0, 3.0],
                   "normalized": true}
      })")});

  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> kPresets = build();
  return kPresets;
}

const Preset* find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace itlinq
