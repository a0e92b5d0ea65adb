#pragma once

#include <vector>

#include "itlinq/channel.hpp"
#include "itlinq/topology.hpp"

namespace itlinq {

// Symmetric boolean adjacency over links; edge when the two sources are
// within threshold_m of each other.
struct ConflictGraph {
  int n = 0;
  std::vector<std::uint8_t> adj;  // row-major, diagonal false
  double threshold_m = 0.0;

  bool edge(int i, int j) const {
    return adj[static_cast<std::size_t>(i) * n + j] != 0;
  }
};

enum class CoverMethod {
  GreedyColoring,
  ExactChromatic,
  GreedyItisCover,
  ExactItisCover
};

// Partition of {0..n-1} into classes; kappa = classes.size().
struct CoverResult {
  std::vector<std::vector<int>> classes;
  int kappa = 0;
  CoverMethod method = CoverMethod::GreedyItisCover;
};

// Condition test: for every i in subset,
//   snr[i] >= (max_j inr[i][j]) * (max_k inr[k][i])  over j,k in subset\{i};
// the max over an empty set is 0, so singletons (and the empty set) pass.
// Ties admit.
bool is_itis(const std::vector<int>& subset, const SnrTable& s);

// Stronger sufficient test: every cross INR involving i is <= sqrt(snr[i]).
bool is_itis_sufficient(const std::vector<int>& subset, const SnrTable& s);

// gamma * n^(-beta/2) + r0 * n^(-beta), meters.
double threshold_distance(int n, double gamma, double r0, double beta);

// ((P/N) * g0 * r0^alpha)^(1/(2*alpha)), meters. P and N linear.
double gamma_constant(double p_linear, double n_linear, double g0, double r0,
                      double alpha);

ConflictGraph build_conflict_graph(const LinkTopology& t, double d_th);

// Proper greedy coloring in the given vertex order; first color that no
// earlier-colored neighbor uses.
CoverResult greedy_coloring(const ConflictGraph& g,
                            const std::vector<int>& order);

// Smallest-last degeneracy order (repeatedly remove a minimum-degree
// vertex; color in reverse removal order). Ties break to the lower index.
std::vector<int> smallest_last_order(const ConflictGraph& g);

// Exact chromatic number by branch and bound; refuses n above cap.
CoverResult exact_chromatic(const ConflictGraph& g, int cap = 12);

// First-fit cover: iterate links in `order`, place each into the first
// class that still passes is_itis after insertion, else open a new class.
CoverResult greedy_itis_cover(const SnrTable& s, const std::vector<int>& order);

// Exact minimum ITIS cover via set-cover DP over maximal ITISs; classes
// are disjointified (valid because subsets of an ITIS are ITISs).
// Refuses n above cap.
CoverResult exact_itis_cover(const SnrTable& s, int cap = 10);

struct TheoreticalFraction {
  double lambda = 0.0;
  double gap_bits = 0.0;
};

// Closed-form capacity fraction by regime:
//   beta < 1: lambda = (2*pi*R^2/(sqrt(3)*gamma^2)) * n^(beta-1)
//   beta = 1: lambda = ln(ln n)/ln n            (needs n >= 3)
//   beta > 1: lambda = 1/(floor(1/(beta-1) + 1/2) + 1)
// gap_bits = lambda * log2(3n) in every regime.
TheoreticalFraction theoretical_fraction(double beta, int n, double R,
                                         double gamma);

const char* cover_method_name(CoverMethod m);

// {kappa, method, classes} JSON document.
std::string cover_to_json(const CoverResult& c);

// Edge list rows "i,j" (i < j) for cross-checking.
std::string conflict_graph_to_csv(const ConflictGraph& g);

}  // namespace itlinq
