#pragma once

#include <atomic>
#include <optional>
#include <vector>

#include "bpmcf/bdd.hpp"
#include "bpmcf/instance.hpp"
#include "bpmcf/solution.hpp"

namespace bpmcf::cpath {

struct SolverConfig {
  double time_limit_s = 1800.0;
  /// Equal-capacity bins are interchangeable: only the lowest-index bin of a
  /// group of same-capacity bins sitting on the same diagram node is branched on.
  bool use_symmetry = true;
  /// Seed the incumbent with greedy_incumbent().
  bool heuristic_incumbent = true;
  std::optional<long long> node_budget;
  /// Bound-based pruning (completion bound plus the per-color bin-count
  /// bounds). Capacity-infeasibility pruning is always on.
  bool use_bounds = true;
  /// Skip search states already explored with an equal or cheaper cost.
  bool use_memo = true;
  /// Cap on stored memo entries.
  std::size_t memo_capacity = 4'000'000;
  /// Polled alongside the clock; when set the search stops as on a time limit.
  const std::atomic<bool>* interrupt = nullptr;
};

/// Per distinct capacity, the diagram over the canonical item order.
struct DiagramSet {
  std::vector<bdd::Bdd> diagrams;
  std::vector<int> diagram_of_bin;

  const bdd::Bdd& for_bin(int b) const { return diagrams[diagram_of_bin[b]]; }
};

/// `canonical` must be in canonical item order. Bins with equal capacity
/// share a diagram.
DiagramSet build_diagrams(const Instance& canonical);

/// Bins partitioned by capacity, classes ordered by smallest member.
std::vector<std::vector<int>> symmetry_classes(const Instance& instance);

/// Colors by descending total size; each item goes to the first bin (by
/// descending remaining capacity, then index) that already holds its color
/// and still has room, otherwise to the first bin with room. Items are taken
/// in the instance's own order within a color. nullopt if some item fits
/// nowhere.
std::optional<Solution> greedy_incumbent(const Instance& instance);

/// Exact depth-first branch-and-bound over the per-bin diagrams: layer by
/// layer, the layer's item is sent down the one-arc of exactly one bin while
/// every other bin follows its zero-arc.
///
/// Accepts any instance; it is canonicalized internally and the returned
/// solution refers to the caller's item order. `build_s`, when given,
/// receives the diagram construction time (excluded from elapsed_s).
SolveResult solve(const Instance& instance, const SolverConfig& config = {},
                  double* build_s = nullptr);

}  // namespace bpmcf::cpath
