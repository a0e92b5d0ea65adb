#include "itlinq/itis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace itlinq {

namespace {

void check_ids(const std::vector<int>& subset, int n) {
  for (int id : subset)
    if (id < 0 || id >= n)
      throw std::out_of_range("link id out of range: " + std::to_string(id));
}

}  // namespace

bool is_itis(const std::vector<int>& subset, const SnrTable& s) {
  check_ids(subset, s.n);
  for (int i : subset) {
    double max_in = 0.0;   // strongest interference arriving at i
    double max_out = 0.0;  // strongest interference i causes
    for (int j : subset) {
      if (j == i) continue;
      max_in = std::max(max_in, s.inr_at(i, j));
      max_out = std::max(max_out, s.inr_at(j, i));
    }
    if (s.snr[i] < max_in * max_out) return false;
  }
  return true;
}

bool is_itis_sufficient(const std::vector<int>& subset, const SnrTable& s) {
  check_ids(subset, s.n);
  for (int i : subset) {
    const double root = std::sqrt(s.snr[i]);
    for (int j : subset) {
      if (j == i) continue;
      if (s.inr_at(i, j) > root || s.inr_at(j, i) > root) return false;
    }
  }
  return true;
}

double threshold_distance(int n, double gamma, double r0, double beta) {
  if (n < 1) throw std::invalid_argument("threshold_distance: n must be >= 1");
  const double nn = static_cast<double>(n);
  return gamma * std::pow(nn, -beta / 2.0) + r0 * std::pow(nn, -beta);
}

double gamma_constant(double p_linear, double n_linear, double g0, double r0,
                      double alpha) {
  if (p_linear <= 0 || n_linear <= 0 || g0 <= 0 || r0 <= 0 || alpha <= 0)
    throw std::invalid_argument("gamma_constant: all arguments must be > 0");
  return std::pow((p_linear / n_linear) * g0 * std::pow(r0, alpha),
                  1.0 / (2.0 * alpha));
}

ConflictGraph build_conflict_graph(const LinkTopology& t, double d_th) {
  ConflictGraph g;
  g.n = t.n;
  g.threshold_m = d_th;
  g.adj.assign(static_cast<std::size_t>(t.n) * t.n, 0);
  const std::vector<double> d = pairwise_source_distances(t);
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j)
      if (i != j && d[static_cast<std::size_t>(i) * t.n + j] <= d_th)
        g.adj[static_cast<std::size_t>(i) * t.n + j] = 1;
  return g;
}

CoverResult greedy_coloring(const ConflictGraph& g,
                            const std::vector<int>& order) {
  const int n = g.n;
  std::vector<int> color(n, -1);
  int used = 0;
  std::vector<char> busy;
  for (int v : order) {
    busy.assign(used + 1, 0);
    for (int u = 0; u < n; ++u)
      if (color[u] >= 0 && g.edge(v, u)) busy[color[u]] = 1;
    int c = 0;
    while (busy[c]) ++c;
    color[v] = c;
    used = std::max(used, c + 1);
  }
  CoverResult out;
  out.method = CoverMethod::GreedyColoring;
  out.kappa = used;
  out.classes.assign(used, {});
  for (int v = 0; v < n; ++v) out.classes[color[v]].push_back(v);
  return out;
}

std::vector<int> smallest_last_order(const ConflictGraph& g) {
  const int n = g.n;
  std::vector<int> deg(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.edge(i, j)) ++deg[i];
  std::vector<char> removed(n, 0);
  std::vector<int> order(n);
  for (int k = n - 1; k >= 0; --k) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!removed[v] && (best < 0 || deg[v] < deg[best])) best = v;
    order[k] = best;
    removed[best] = 1;
    for (int u = 0; u < n; ++u)
      if (!removed[u] && g.edge(best, u)) --deg[u];
  }
  return order;
}

namespace {

// k-colorability by backtracking over vertices in max-degree-first order,
// never opening more than one fresh color beyond those already used.
bool k_colorable(const ConflictGraph& g, const std::vector<int>& verts, int k,
                 std::vector<int>& color, std::size_t pos, int used) {
  if (pos == verts.size()) return true;
  const int v = verts[pos];
  const int limit = std::min(k, used + 1);
  for (int c = 0; c < limit; ++c) {
    bool ok = true;
    for (int u : verts)
      if (color[u] == c && g.edge(v, u)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    color[v] = c;
    if (k_colorable(g, verts, k, color, pos + 1, std::max(used, c + 1)))
      return true;
    color[v] = -1;
  }
  return false;
}

}  // namespace

CoverResult exact_chromatic(const ConflictGraph& g, int cap) {
  if (g.n > cap)
    throw std::invalid_argument("exact_chromatic: n exceeds cap " +
                                std::to_string(cap));
  std::vector<int> verts(g.n);
  for (int i = 0; i < g.n; ++i) verts[i] = i;
  std::sort(verts.begin(), verts.end(), [&](int a, int b) {
    int da = 0, db = 0;
    for (int u = 0; u < g.n; ++u) {
      da += g.edge(a, u);
      db += g.edge(b, u);
    }
    return da > db || (da == db && a < b);
  });

  std::vector<int> color(g.n, -1);
  int k = g.n == 0 ? 0 : 1;
  for (;; ++k) {
    std::fill(color.begin(), color.end(), -1);
    if (k_colorable(g, verts, k, color, 0, 0)) break;
  }
  CoverResult out;
  out.method = CoverMethod::ExactChromatic;
  out.kappa = k;
  out.classes.assign(k, {});
  for (int v = 0; v < g.n; ++v) out.classes[color[v]].push_back(v);
  return out;
}

CoverResult greedy_itis_cover(const SnrTable& s, const std::vector<int>& order) {
  // Incremental per-class state so each insertion test is O(class size):
  // for members m, max_in[m]/max_out[m] are the strongest INRs m receives
  // from / causes to the rest of its class.
  struct Class {
    std::vector<int> members;
    std::vector<double> max_in;
    std::vector<double> max_out;
  };
  std::vector<Class> classes;

  for (int x : order) {
    bool placed = false;
    for (auto& c : classes) {
      double in_x = 0.0, out_x = 0.0;
      for (int m : c.members) {
        in_x = std::max(in_x, s.inr_at(x, m));
        out_x = std::max(out_x, s.inr_at(m, x));
      }
      if (s.snr[x] < in_x * out_x) continue;
      bool ok = true;
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        const int m = c.members[k];
        const double min_ = std::max(c.max_in[k], s.inr_at(m, x));
        const double mout = std::max(c.max_out[k], s.inr_at(x, m));
        if (s.snr[m] < min_ * mout) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        const int m = c.members[k];
        c.max_in[k] = std::max(c.max_in[k], s.inr_at(m, x));
        c.max_out[k] = std::max(c.max_out[k], s.inr_at(x, m));
      }
      c.members.push_back(x);
      c.max_in.push_back(in_x);
      c.max_out.push_back(out_x);
      placed = true;
      break;
    }
    if (!placed) classes.push_back({{x}, {0.0}, {0.0}});
  }

  CoverResult out;
  out.method = CoverMethod::GreedyItisCover;
  out.kappa = static_cast<int>(classes.size());
  out.classes.reserve(classes.size());
  for (auto& c : classes) out.classes.push_back(std::move(c.members));
  return out;
}

namespace {

std::vector<int> mask_to_ids(std::uint32_t mask) {
  std::vector<int> ids;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) ids.push_back(i);
  return ids;
}

}  // namespace

CoverResult exact_itis_cover(const SnrTable& s, int cap) {
  const int n = s.n;
  if (n > cap)
    throw std::invalid_argument("exact_itis_cover: n exceeds cap " +
                                std::to_string(cap));
  if (n > 30) throw std::invalid_argument("exact_itis_cover: n too large");

  const std::uint32_t full = (n == 0) ? 0 : ((1u << n) - 1u);

  // ITIS family is downward closed (dropping a link only shrinks the
  // maxima), so covering with maximal ITISs and disjointifying afterwards
  // is exact.
  std::vector<char> itis(full + 1u, 0);
  itis[0] = 1;
  for (std::uint32_t m = 1; m <= full; ++m)
    itis[m] = is_itis(mask_to_ids(m), s) ? 1 : 0;

  std::vector<std::uint32_t> maximal;
  for (std::uint32_t m = 1; m <= full; ++m) {
    if (!itis[m]) continue;
    bool is_max = true;
    for (int b = 0; b < n && is_max; ++b)
      if (!(m & (1u << b)) && itis[m | (1u << b)]) is_max = false;
    if (is_max) maximal.push_back(m);
  }

  // Set-cover DP over subsets: extend the lowest uncovered link.
  const std::uint32_t states = full + 1u;
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> best(states, kInf);
  std::vector<std::uint32_t> via(states, 0);
  std::vector<std::uint32_t> prev(states, 0);
  best[0] = 0;
  for (std::uint32_t covered = 0; covered < full; ++covered) {
    if (best[covered] == kInf) continue;
    std::uint32_t low = 0;
    while (covered & (1u << low)) ++low;
    for (std::uint32_t set : maximal) {
      if (!(set & (1u << low))) continue;
      const std::uint32_t next = covered | set;
      if (best[covered] + 1 < best[next]) {
        best[next] = best[covered] + 1;
        via[next] = set;
        prev[next] = covered;
      }
    }
  }

  CoverResult out;
  out.method = CoverMethod::ExactItisCover;
  if (n == 0) {
    out.kappa = 0;
    return out;
  }
  out.kappa = best[full];
  std::uint32_t cur = full;
  std::uint32_t assigned = 0;
  while (cur != 0) {
    const std::uint32_t cls = via[cur] & ~assigned;  // disjointify
    out.classes.push_back(mask_to_ids(cls));
    assigned |= cls;
    cur = prev[cur];
  }
  std::reverse(out.classes.begin(), out.classes.end());
  return out;
}

TheoreticalFraction theoretical_fraction(double beta, int n, double R,
                                         double gamma) {
  if (beta <= 0) throw std::invalid_argument("theoretical_fraction: beta > 0");
  if (n < 2) throw std::invalid_argument("theoretical_fraction: n >= 2");
  TheoreticalFraction out;
  const double nn = static_cast<double>(n);
  if (beta < 1.0) {
    const double c =
        2.0 * std::numbers::pi_v<double> * R * R / (std::sqrt(3.0) * gamma * gamma);
    out.lambda = c * std::pow(nn, beta - 1.0);
  } else if (beta == 1.0) {
    if (n < 3)
      throw std::invalid_argument("theoretical_fraction: beta=1 needs n >= 3");
    out.lambda = std::log(std::log(nn)) / std::log(nn);
  } else {
    out.lambda = 1.0 / (std::floor(1.0 / (beta - 1.0) + 0.5) + 1.0);
  }
  out.gap_bits = out.lambda * std::log2(3.0 * nn);
  return out;
}

const char* cover_method_name(CoverMethod m) {
  switch (m) {
    case CoverMethod::GreedyColoring: return "greedy_coloring";
    case CoverMethod::ExactChromatic: return "exact_chromatic";
    case CoverMethod::GreedyItisCover: return "greedy_itis_cover";
    case CoverMethod::ExactItisCover: return "exact_itis_cover";
  }
  return "?";
}

std::string cover_to_json(const CoverResult& c) {
  nlohmann::json j;
  j["kappa"] = c.kappa;
  j["method"] = cover_method_name(c.method);
  j["classes"] = c.classes;
  return j.dump(2);
}

std::string conflict_graph_to_csv(const ConflictGraph& g) {
  std::ostringstream out;
  out << "i,j\n";
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (g.edge(i, j)) out << i << ',' << j << '\n';
  return out.str();
}

}  // namespace itlinq
