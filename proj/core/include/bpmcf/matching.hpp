#pragma once

#include <vector>

#include "bpmcf/instance.hpp"
#include "bpmcf/solution.hpp"

namespace bpmcf::matching {

struct Edge {
  int u = 0;
  int v = 0;
  long long weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// General weighted graph used by the two-items-per-bin reduction. Vertices
/// 0..num_real-1 stand for items (by position in the instance), the next
/// num_artificial vertices are artificial singleton-bin markers.
struct PairGraph {
  int num_real = 0;
  int num_artificial = 0;
  std::vector<Edge> edges;

  int num_vertices() const { return num_real + num_artificial; }
};

/// Maximum-weight (not necessarily maximum-cardinality) matching on a
/// general graph, Edmonds' blossom algorithm with integer duals, O(V^3).
/// Returns the matched edges, ordered as they appear in `graph.edges`.
std::vector<Edge> max_weight_matching(const PairGraph& graph);

/// True when no bin can hold three items: n <= 2, or the three smallest
/// sizes already exceed the largest capacity.
bool applies(const Instance& instance);

/// Matching instance for exactly q paired bins: real-real edges for pairs
/// that fit the smallest bin (weight n+2 same color, n+1 otherwise) and an
/// edge of weight n^2 from every item to each of the n-2q artificial vertices.
/// Throws Error(InvalidQ) unless 0 <= q <= n/2 and n - q <= k.
PairGraph build_pair_graph(const Instance& instance, int q);

/// Exact solver for instances where applies() holds (throws
/// Error(InvalidInstance) otherwise). Tries every admissible q, converts each
/// maximum matching into bins (largest loads onto largest bins) and keeps the
/// best objective, ties to the smallest q. nodes_explored counts the q values
/// inspected.
SolveResult solve_two_per_bin(const Instance& instance);

}  // namespace bpmcf::matching
