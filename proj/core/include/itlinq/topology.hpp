#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace itlinq {

struct Point {
  double x = 0.0;  // meters
  double y = 0.0;  // meters
};

enum class TopologyModel { Disk, Square, ClosestSource };

// Node placement for n source->destination links plus the generation
// parameters echoed back for serialization / replay.
struct LinkTopology {
  int n = 0;
  std::vector<Point> src;
  std::vector<Point> dst;
  TopologyModel model = TopologyModel::Disk;
  std::uint64_t seed = 0;

  // Disk / ClosestSource params.
  double R = 0.0;     // cell radius (m)
  double r0 = 0.0;    // destination radius scale (m)
  double beta = 0.0;  // destination radius exponent

  // Square params.
  double side = 0.0;     // square side (m)
  double len_min = 0.0;  // link length lower bound (m)
  double len_max = 0.0;  // link length upper bound (m)
};

// Sources area-uniform on the disk of radius R; destination i uniform on
// the disk of radius r0*n^(-beta) around src[i].
LinkTopology gen_disk_topology(int n, double R, double r0, double beta,
                               std::uint64_t seed);

// Sources uniform in the side x side square; each destination at uniform
// length in [len_min, len_max] and uniform angle (may exit the square).
LinkTopology gen_square_topology(int n, double side, double len_min,
                                 double len_max, std::uint64_t seed);

// 2n points area-uniform on the disk of radius R; destination i is paired
// with its nearest source among those still unassigned, iterating
// destinations in index order; distance ties break to the lower source
// index.
LinkTopology gen_closest_source_topology(int n, double R, std::uint64_t seed);

// Row-major n x n matrix of |src[i] - src[j]| in meters, zero diagonal.
std::vector<double> pairwise_source_distances(const LinkTopology& t);

// Greedy assignment used by the ClosestSource model: pair_of[j] is the
// source index paired with destination j. Exposed for direct testing with
// injected points.
std::vector<int> nearest_available_pairing(const std::vector<Point>& src,
                                           const std::vector<Point>& dst);

// JSON document {model, params, seed, src, dst} for fixture replay.
std::string topology_to_json(const LinkTopology& t);
LinkTopology topology_from_json(const std::string& text);

const char* topology_model_name(TopologyModel m);

}  // namespace itlinq
