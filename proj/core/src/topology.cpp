#include "itlinq/topology.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "itlinq/rng.hpp"

namespace itlinq {

namespace {

using nlohmann::json;

double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Area-uniform point on the disk of radius R around c: radius R*sqrt(u).
Point disk_point(Rng& rng, const Point& c, double R) {
  const double u = rng.uniform01();
  const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = R * std::sqrt(u);
  return {c.x + r * std::cos(th), c.y + r * std::sin(th)};
}

}  // namespace

LinkTopology gen_disk_topology(int n, double R, double r0, double beta,
                               std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_disk_topology: n must be >= 1");
  if (R <= 0 || r0 <= 0 || beta <= 0)
    throw std::invalid_argument("gen_disk_topology: R, r0, beta must be > 0");

  LinkTopology t;
  t.n = n;
  t.model = TopologyModel::Disk;
  t.seed = seed;
  t.R = R;
  t.r0 = r0;
  t.beta = beta;
  t.src.reserve(n);
  t.dst.reserve(n);

  Rng rng(seed);
  for (int i = 0; i < n; ++i) t.src.push_back(disk_point(rng, {0.0, 0.0}, R));
  const double rn = r0 * std::pow(static_cast<double>(n), -beta);
  for (int i = 0; i < n; ++i) t.dst.push_back(disk_point(rng, t.src[i], rn));
  return t;
}

LinkTopology gen_square_topology(int n, double side, double len_min,
                                 double len_max, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_square_topology: n must be >= 1");
  if (!(0 < len_min && len_min <= len_max && len_max <= side))
    throw std::invalid_argument(
        "gen_square_topology: need 0 < len_min <= len_max <= side");

  LinkTopology t;
  t.n = n;
  t.model = TopologyModel::Square;
  t.seed = seed;
  t.side = side;
  t.len_min = len_min;
  t.len_max = len_max;
  t.src.reserve(n);
  t.dst.resize(n);

  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, side);
    const double y = rng.uniform(0.0, side);
    t.src.push_back({x, y});
  }
  std::vector<double> len(n);
  for (int i = 0; i < n; ++i) len[i] = rng.uniform(len_min, len_max);
  for (int i = 0; i < n; ++i) {
    const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
    t.dst[i] = {t.src[i].x + len[i] * std::cos(th),
                t.src[i].y + len[i] * std::sin(th)};
  }
  return t;
}

std::vector<int> nearest_available_pairing(const std::vector<Point>& src,
                                           const std::vector<Point>& dst) {
  const int n = static_cast<int>(dst.size());
  std::vector<int> pair_of(n, -1);
  std::vector<bool> taken(src.size(), false);
  for (int j = 0; j < n; ++j) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(src.size()); ++i) {
      if (taken[i]) continue;
      const double d = dist(src[i], dst[j]);
      if (d < best_d) {  // ties keep the lower index
        best_d = d;
        best = i;
      }
    }
    pair_of[j] = best;
    taken[best] = true;
  }
  return pair_of;
}

LinkTopology gen_closest_source_topology(int n, double R, std::uint64_t seed) {
  if (n < 1)
    throw std::invalid_argument("gen_closest_source_topology: n must be >= 1");
  if (R <= 0)
    throw std::invalid_argument("gen_closest_source_topology: R must be > 0");

  Rng rng(seed);
  std::vector<Point> src(n), dst(n);
  for (int i = 0; i < n; ++i) src[i] = disk_point(rng, {0.0, 0.0}, R);
  for (int i = 0; i < n; ++i) dst[i] = disk_point(rng, {0.0, 0.0}, R);

  const std::vector<int> pair_of = nearest_available_pairing(src, dst);

  LinkTopology t;
  t.n = n;
  t.model = TopologyModel::ClosestSource;
  t.seed = seed;
  t.R = R;
  t.src.resize(n);
  t.dst = dst;
  for (int j = 0; j < n; ++j) t.src[j] = src[pair_of[j]];
  return t;
}

std::vector<double> pairwise_source_distances(const LinkTopology& t) {
  const int n = t.n;
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = dist(t.src[i], t.src[j]);
      d[static_cast<std::size_t>(i) * n + j] = v;
      d[static_cast<std::size_t>(j) * n + i] = v;
    }
  return d;
}

const char* topology_model_name(TopologyModel m) {
  switch (m) {
    case TopologyModel::Disk: return "disk";
    case TopologyModel::Square: return "square";
    case TopologyModel::ClosestSource: return "closest_source";
  }
  return "?";
}

std::string topology_to_json(const LinkTopology& t) {
  json j;
  j["model"] = topology_model_name(t.model);
  j["seed"] = t.seed;
  json params;
  switch (t.model) {
    case TopologyModel::Disk:
      params = {{"R", t.R}, {"r0", t.r0}, {"beta", t.beta}};
      break;
    case TopologyModel::Square:
      params = {{"side", t.side}, {"len_min", t.len_min}, {"len_max", t.len_max}};
      break;
    case TopologyModel::ClosestSource:
      params = {{"R", t.R}};
      break;
  }
  j["params"] = params;
  json src = json::array();
  json dst = json::array();
  for (int i = 0; i < t.n; ++i) {
    src.push_back({t.src[i].x, t.src[i].y});
    dst.push_back({t.dst[i].x, t.dst[i].y});
  }
  j["src"] = src;
  j["dst"] = dst;
  return j.dump(2);
}

LinkTopology topology_from_json(const std::string& text) {
  const json j = json::parse(text);
  LinkTopology t;
  const std::string model = j.at("model").get<std::string>();
  t.seed = j.at("seed").get<std::uint64_t>();
  const json& params = j.at("params");
  if (model == "disk") {
    t.model = TopologyModel::Disk;
    t.R = params.at("R").get<double>();
    t.r0 = params.at("r0").get<double>();
    t.beta = params.at("beta").get<double>();
  } else if (model == "square") {
    t.model = TopologyModel::Square;
    t.side = params.at("side").get<double>();
    t.len_min = params.at("len_min").get<double>();
    t.len_max = params.at("len_max").get<double>();
  } else if (model == "closest_source") {
    t.model = TopologyModel::ClosestSource;
    t.R = params.at("R").get<double>();
  } else {
    throw std::invalid_argument("topology_from_json: unknown model " + model);
  }
  for (const auto& p : j.at("src"))
    t.src.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  for (const auto& p : j.at("dst"))
    t.dst.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  if (t.src.size() != t.dst.size())
    throw std::invalid_argument("topology_from_json: src/dst length mismatch");
  t.n = static_cast<int>(t.src.size());
  return t;
}

}  // namespace itlinq
