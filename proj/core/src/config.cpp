#include "itlinq/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace itlinq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_keys_known(const json& obj, const std::string& where,
                        const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      fail("unknown key '" + key + "' in " + where);
  }
}

double get_double(const json& obj, const std::string& where,
                  const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail("missing key '" + key + "' in " + where);
  if (!it->is_number()) fail("key '" + key + "' in " + where + " must be a number");
  return it->get<double>();
}

double get_double_or(const json& obj, const std::string& where,
                     const std::string& key, double fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail("key '" + key + "' in " + where + " must be a number");
  return it->get<double>();
}

std::int64_t get_int(const json& obj, const std::string& where,
                     const std::string& key, std::int64_t fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer())
    fail("key '" + key + "' in " + where + " must be an integer");
  return it->get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& where, const std::string& key,
              bool fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) fail("key '" + key + "' in " + where + " must be a bool");
  return it->get<bool>();
}

std::string get_string(const json& obj, const std::string& where,
                       const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail("missing key '" + key + "' in " + where);
  if (!it->is_string()) fail("key '" + key + "' in " + where + " must be a string");
  return it->get<std::string>();
}

TopologySpec parse_topology(const json& j) {
  if (!j.is_object()) fail("'topology' must be an object");
  TopologySpec t;
  const std::string model = get_string(j, "topology", "model");
  if (model == "disk" || model == "closest_source") {
    t.model = model == "disk" ? TopologyModel::Disk : TopologyModel::ClosestSource;
    std::set<std::string> allowed = {"model", "R"};
    if (model == "disk") {
      allowed.insert("r0");
      allowed.insert("beta");
      t.r0 = get_double(j, "topology", "r0");
      t.beta = get_double_or(j, "topology", "beta", 0.0);
    }
    require_keys_known(j, "topology", allowed);
    t.R = get_double(j, "topology", "R");
    if (t.R <= 0) fail("topology.R must be > 0");
    if (model == "disk" && t.r0 <= 0) fail("topology.r0 must be > 0");
  } else if (model == "square") {
    t.model = TopologyModel::Square;
    require_keys_known(j, "topology", {"model", "side", "len_min", "len_max"});
    t.side = get_double(j, "topology", "side");
    t.len_min = get_double(j, "topology", "len_min");
    t.len_max = get_double(j, "topology", "len_max");
    if (!(0 < t.len_min && t.len_min <= t.len_max && t.len_max <= t.side))
      fail("topology: need 0 < len_min <= len_max <= side");
  } else {
    fail("topology.model must be disk, square, or closest_source");
  }
  return t;
}

ChannelModel parse_channel(const json& j) {
  if (!j.is_object()) fail("'channel' must be an object");
  const std::string model = get_string(j, "channel", "model");
  if (model == "pathloss" || model == "rayleigh_pathloss") {
    require_keys_known(j, "channel", {"model", "g0", "alpha"});
    const double g0 = get_double_or(j, "channel", "g0", 1.0);
    const double alpha = get_double_or(j, "channel", "alpha", 2.5);
    if (g0 <= 0 || alpha <= 0) fail("channel: g0 and alpha must be > 0");
    if (model == "pathloss") return PathLossModel{g0, alpha};
    return RayleighPathLossModel{g0, alpha};
  }
  if (model == "itu1411") {
    require_keys_known(j, "channel",
                       {"model", "carrier_hz", "h_b", "h_m", "shadow_sigma_db",
                        "antenna_gain_db_per_device", "shadow_scope"});
    Itu1411Model m;
    m.carrier_hz = get_double_or(j, "channel", "carrier_hz", 2.4e9);
    m.h_b = get_double_or(j, "channel", "h_b", 1.5);
    m.h_m = get_double_or(j, "channel", "h_m", 1.5);
    m.shadow_sigma_db = get_double_or(j, "channel", "shadow_sigma_db", 10.0);
    m.antenna_gain_db_per_device =
        get_double_or(j, "channel", "antenna_gain_db_per_device", -2.5);
    if (m.carrier_hz <= 0 || m.h_b <= 0 || m.h_m <= 0 || m.shadow_sigma_db < 0)
      fail("channel: invalid itu1411 parameters");
    if (j.contains("shadow_scope")) {
      const std::string scope = get_string(j, "channel", "shadow_scope");
      if (scope == "all")
        m.shadow_scope = ShadowScope::All;
      else if (scope == "direct")
        m.shadow_scope = ShadowScope::DirectOnly;
      else
        fail("channel.shadow_scope must be all or direct");
    }
    return m;
  }
  fail("channel.model must be pathloss, rayleigh_pathloss, or itu1411");
}

LinkBudget parse_budget(const json& j) {
  if (!j.is_object()) fail("'budget' must be an object");
  require_keys_known(j, "budget",
                     {"tx_power_dbm", "noise_power_dbm", "bandwidth_hz"});
  LinkBudget b;
  b.tx_power_dbm = get_double(j, "budget", "tx_power_dbm");
  b.noise_power_dbm = get_double(j, "budget", "noise_power_dbm");
  b.bandwidth_hz = get_double_or(j, "budget", "bandwidth_hz", 1.0);
  if (b.bandwidth_hz <= 0) fail("budget.bandwidth_hz must be > 0");
  return b;
}

std::string trim_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

SchemeSpec parse_scheme(const json& j, int index) {
  const std::string where = "schemes[" + std::to_string(index) + "]";
  if (!j.is_object()) fail(where + " must be an object");
  SchemeSpec s;
  s.scheme = get_string(j, where, "scheme");
  std::set<std::string> allowed = {"scheme", "label"};
  if (s.scheme == "itlinq") {
    allowed.insert({"eta", "m_db"});
  } else if (s.scheme == "fair_itlinq") {
    allowed.insert({"eta", "m_db", "snr_th_db", "eta_bar", "m_bar_db"});
  } else if (s.scheme == "flashlinq") {
    allowed.insert({"gamma_tx_db", "gamma_rx_db", "rx_aggregate"});
  } else if (s.scheme == "tdma" || s.scheme == "all_on") {
    // no parameters
  } else {
    fail(where + ": unknown scheme '" + s.scheme + "'");
  }
  require_keys_known(j, where, allowed);

  s.itlinq.eta = get_double_or(j, where, "eta", 0.7);
  s.itlinq.m_db = get_double_or(j, where, "m_db", 25.0);
  s.fair.base = s.itlinq;
  s.fair.snr_th_db = get_double_or(j, where, "snr_th_db", 110.0);
  s.fair.eta_bar = get_double_or(j, where, "eta_bar", 0.6);
  s.fair.m_bar_db = get_double_or(j, where, "m_bar_db", 20.0);
  s.gamma_tx_db = get_double_or(j, where, "gamma_tx_db", 9.0);
  s.gamma_rx_db = get_double_or(j, where, "gamma_rx_db", 9.0);
  if (j.contains("rx_aggregate")) {
    const std::string agg = get_string(j, where, "rx_aggregate");
    if (agg == "sum")
      s.rx_aggregate = RxAggregate::Sum;
    else if (agg == "max")
      s.rx_aggregate = RxAggregate::Max;
    else
      fail(where + ".rx_aggregate must be sum or max");
  }

  if (j.contains("label")) {
    s.label = get_string(j, where, "label");
  } else if (s.scheme == "itlinq") {
    s.label = "itlinq_eta" + trim_number(s.itlinq.eta);
  } else {
    s.label = s.scheme;
  }
  return s;
}

std::vector<double> parse_beta_list(const json& obj, const std::string& where) {
  const auto it = obj.find("beta_list");
  if (it == obj.end()) fail("missing key 'beta_list' in " + where);
  if (!it->is_array() || it->empty())
    fail(where + ".beta_list must be a nonempty array");
  std::vector<double> out;
  for (const auto& v : *it) {
    if (!v.is_number()) fail(where + ".beta_list entries must be numbers");
    const double beta = v.get<double>();
    if (beta <= 0) fail(where + ".beta_list entries must be > 0");
    out.push_back(beta);
  }
  return out;
}

}  // namespace

const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::SumRateSweep: return "sum_rate_sweep";
    case Experiment::LinkRateCdf: return "link_rate_cdf";
    case Experiment::FractionVsN: return "fraction_vs_n";
    case Experiment::FadingFraction: return "fading_fraction";
    case Experiment::GapVsN: return "gap_vs_n";
    case Experiment::TheoryCurves: return "theory_curves";
  }
  return "?";
}

Experiment experiment_from_name(const std::string& name) {
  for (Experiment e :
       {Experiment::SumRateSweep, Experiment::LinkRateCdf,
        Experiment::FractionVsN, Experiment::FadingFraction, Experiment::GapVsN,
        Experiment::TheoryCurves})
    if (name == experiment_name(e)) return e;
  fail("unknown experiment '" + name + "'");
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) fail("config root must be a JSON object");
  require_keys_known(j, "config",
                     {"experiment", "master_seed", "trials", "priority_draws",
                      "threads", "n_list", "topology", "channel", "budget",
                      "schemes", "fraction", "theory", "dump_rates",
                      "tail_threshold_bits"});

  ExperimentConfig c;
  c.experiment = experiment_from_name(get_string(j, "config", "experiment"));

  if (j.contains("master_seed")) {
    const auto& seed = j.at("master_seed");
    if (!seed.is_number_integer() || seed.get<std::int64_t>() < 0)
      fail("master_seed must be a nonnegative integer");
    c.master_seed = seed.get<std::uint64_t>();
  }

  c.trials = static_cast<int>(get_int(j, "config", "trials", 100));
  if (c.trials < 1) fail("trials must be >= 1");
  c.priority_draws = static_cast<int>(get_int(j, "config", "priority_draws", 1));
  if (c.priority_draws < 1) fail("priority_draws must be >= 1");
  c.threads = static_cast<int>(get_int(j, "config", "threads", 0));
  if (c.threads < 0) fail("threads must be >= 0");

  const auto n_it = j.find("n_list");
  if (n_it == j.end() || !n_it->is_array() || n_it->empty())
    fail("n_list must be a nonempty array");
  for (const auto& v : *n_it) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      fail("n_list entries must be integers >= 1");
    c.n_list.push_back(static_cast<int>(v.get<std::int64_t>()));
  }

  if (!j.contains("topology")) fail("missing 'topology'");
  c.topology = parse_topology(j.at("topology"));
  if (!j.contains("channel")) fail("missing 'channel'");
  c.channel = parse_channel(j.at("channel"));
  if (!j.contains("budget")) fail("missing 'budget'");
  c.budget = parse_budget(j.at("budget"));

  const bool wants_schemes = c.experiment == Experiment::SumRateSweep ||
                             c.experiment == Experiment::LinkRateCdf;
  if (wants_schemes) {
    const auto it = j.find("schemes");
    if (it == j.end() || !it->is_array() || it->empty())
      fail("schemes must be a nonempty array for this experiment");
    int idx = 0;
    for (const auto& sj : *it) c.schemes.push_back(parse_scheme(sj, idx++));
    std::set<std::string> labels;
    for (const auto& s : c.schemes)
      if (!labels.insert(s.label).second)
        fail("duplicate scheme label '" + s.label + "'");
  } else if (j.contains("schemes")) {
    fail("'schemes' is only valid for sum_rate_sweep / link_rate_cdf");
  }

  const bool fraction_family = c.experiment == Experiment::FractionVsN ||
                               c.experiment == Experiment::FadingFraction ||
                               c.experiment == Experiment::GapVsN;
  if (fraction_family) {
    if (!j.contains("fraction")) fail("missing 'fraction'");
    const json& f = j.at("fraction");
    if (!f.is_object()) fail("'fraction' must be an object");
    require_keys_known(f, "fraction", {"beta_list", "fading"});
    c.fraction.beta_list = parse_beta_list(f, "fraction");
    c.fraction.fading = get_bool(f, "fraction", "fading", false);
    if (c.topology.model != TopologyModel::Disk)
      fail("fraction experiments require the disk topology");
    if (!std::holds_alternative<PathLossModel>(c.channel))
      fail("fraction experiments require the pathloss channel (fading is "
           "handled by the experiment itself)");
  } else if (j.contains("fraction")) {
    fail("'fraction' is only valid for fraction experiments");
  }

  if (c.experiment == Experiment::TheoryCurves) {
    if (!j.contains("theory")) fail("missing 'theory'");
    const json& t = j.at("theory");
    if (!t.is_object()) fail("'theory' must be an object");
    require_keys_known(t, "theory", {"beta_list", "normalized"});
    c.theory.beta_list = parse_beta_list(t, "theory");
    c.theory.normalized = get_bool(t, "theory", "normalized", true);
    if (c.topology.model != TopologyModel::Disk)
      fail("theory_curves requires the disk topology");
    if (!c.theory.normalized && !std::holds_alternative<PathLossModel>(c.channel))
      fail("theory_curves with normalized=false derives gamma from a pathloss "
           "channel");
  } else if (j.contains("theory")) {
    fail("'theory' is only valid for theory_curves");
  }

  if (c.experiment == Experiment::LinkRateCdf && c.n_list.size() != 1)
    fail("link_rate_cdf requires exactly one entry in n_list");

  c.dump_rates = get_bool(j, "config", "dump_rates", false);
  c.tail_threshold_bits =
      get_double_or(j, "config", "tail_threshold_bits", 0.1);
  if (c.tail_threshold_bits < 0) fail("tail_threshold_bits must be >= 0");

  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = experiment_name(c.experiment);
  j["master_seed"] = c.master_seed;
  j["trials"] = c.trials;
  j["priority_draws"] = c.priority_draws;
  j["threads"] = c.threads;
  j["n_list"] = c.n_list;

  json topo;
  switch (c.topology.model) {
    case TopologyModel::Disk:
      topo = {{"model", "disk"},
              {"R", c.topology.R},
              {"r0", c.topology.r0},
              {"beta", c.topology.beta}};
      break;
    case TopologyModel::Square:
      topo = {{"model", "square"},
              {"side", c.topology.side},
              {"len_min", c.topology.len_min},
              {"len_max", c.topology.len_max}};
      break;
    case TopologyModel::ClosestSource:
      topo = {{"model", "closest_source"}, {"R", c.topology.R}};
      break;
  }
  j["topology"] = topo;

  if (const auto* pl = std::get_if<PathLossModel>(&c.channel)) {
    j["channel"] = {{"model", "pathloss"}, {"g0", pl->g0}, {"alpha", pl->alpha}};
  } else if (const auto* rl = std::get_if<RayleighPathLossModel>(&c.channel)) {
    j["channel"] = {
        {"model", "rayleigh_pathloss"}, {"g0", rl->g0}, {"alpha", rl->alpha}};
  } else {
    const auto& itu = std::get<Itu1411Model>(c.channel);
    j["channel"] = {
        {"model", "itu1411"},
        {"carrier_hz", itu.carrier_hz},
        {"h_b", itu.h_b},
        {"h_m", itu.h_m},
        {"shadow_sigma_db", itu.shadow_sigma_db},
        {"antenna_gain_db_per_device", itu.antenna_gain_db_per_device},
        {"shadow_scope", itu.shadow_scope == ShadowScope::All ? "all" : "direct"}};
  }

  j["budget"] = {{"tx_power_dbm", c.budget.tx_power_dbm},
                 {"noise_power_dbm", c.budget.noise_power_dbm},
                 {"bandwidth_hz", c.budget.bandwidth_hz}};

  if (!c.schemes.empty()) {
    json arr = json::array();
    for (const auto& s : c.schemes) {
      json sj;
      sj["scheme"] = s.scheme;
      sj["label"] = s.label;
      if (s.scheme == "itlinq" || s.scheme == "fair_itlinq") {
        sj["eta"] = s.itlinq.eta;
        sj["m_db"] = s.itlinq.m_db;
      }
      if (s.scheme == "fair_itlinq") {
        sj["snr_th_db"] = s.fair.snr_th_db;
        sj["eta_bar"] = s.fair.eta_bar;
        sj["m_bar_db"] = s.fair.m_bar_db;
      }
      if (s.scheme == "flashlinq") {
        sj["gamma_tx_db"] = s.gamma_tx_db;
        sj["gamma_rx_db"] = s.gamma_rx_db;
        sj["rx_aggregate"] = s.rx_aggregate == RxAggregate::Sum ? "sum" : "max";
      }
      arr.push_back(sj);
    }
    j["schemes"] = arr;
  }

  const bool fraction_family = c.experiment == Experiment::FractionVsN ||
                               c.experiment == Experiment::FadingFraction ||
                               c.experiment == Experiment::GapVsN;
  if (fraction_family)
    j["fraction"] = {{"beta_list", c.fraction.beta_list},
                     {"fading", c.fraction.fading}};
  if (c.experiment == Experiment::TheoryCurves)
    j["theory"] = {{"beta_list", c.theory.beta_list},
                   {"normalized", c.theory.normalized}};

  j["dump_rates"] = c.dump_rates;
  j["tail_threshold_bits"] = c.tail_threshold_bits;
  return j;
}

void apply_override(json& j, const std::string& dotted_key,
                    const std::string& value) {
  json parsed = json::parse(value, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) parsed = value;  // bare strings stay strings

  std::vector<std::string> parts;
  std::stringstream ss(dotted_key);
  std::string part;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  if (parts.empty()) fail("empty override key");

  // scheme.X fans out to every schemes[] entry that carries key X.
  if (parts.size() == 2 && parts[0] == "scheme") {
    if (!j.contains("schemes") || !j["schemes"].is_array())
      fail("override '" + dotted_key + "': config has no schemes array");
    int hits = 0;
    for (auto& entry : j["schemes"])
      if (entry.is_object() && entry.contains(parts[1])) {
        entry[parts[1]] = parsed;
        ++hits;
      }
    if (hits == 0)
      fail("override '" + dotted_key + "': no scheme carries key '" +
           parts[1] + "'");
    return;
  }

  json* cur = &j;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (cur->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(p);
      } catch (...) {
        fail("override '" + dotted_key + "': '" + p + "' is not an array index");
      }
      if (idx >= cur->size())
        fail("override '" + dotted_key + "': index " + p + " out of range");
      cur = &(*cur)[idx];
    } else if (cur->is_object()) {
      if (!cur->contains(p)) (*cur)[p] = json::object();
      cur = &(*cur)[p];
    } else {
      fail("override '" + dotted_key + "': '" + p + "' is not addressable");
    }
  }
  const std::string& last = parts.back();
  if (cur->is_array()) {
    std::size_t idx = 0;
    try {
      idx = std::stoul(last);
    } catch (...) {
      fail("override '" + dotted_key + "': '" + last + "' is not an array index");
    }
    if (idx >= cur->size())
      fail("override '" + dotted_key + "': index " + last + " out of range");
    (*cur)[idx] = parsed;
  } else if (cur->is_object()) {
    (*cur)[last] = parsed;
  } else {
    fail("override '" + dotted_key + "': target is not addressable");
  }
}

std::string config_hash(const json& canonical) {
  const std::string dump = canonical.dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a 64
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace itlinq
