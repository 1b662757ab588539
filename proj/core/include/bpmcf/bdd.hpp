#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bpmcf/instance.hpp"

namespace bpmcf::bdd {

using NodeId = int;
using ArcId = int;
inline constexpr int kNone = -1;

/// Residual capacity and whether an item of the current layer's color has
/// already been taken on the way to this node.
struct NodeState {
  int remaining = 0;
  bool seen = false;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

struct Node {
  int layer = 0;
  NodeState state;
  ArcId zero_arc = kNone;
  ArcId one_arc = kNone;
};

struct Arc {
  NodeId from = kNone;
  NodeId to = kNone;
  std::int8_t domain = 0;  // 1 = item taken
  std::int8_t cost = 0;    // 1 only for the first item of a color in this bin
  int item = kNone;        // index into Bdd::items(); kNone on the empty-list arc
};

struct Stats {
  int nodes = 0;
  int arcs = 0;
  int max_width = 0;

  friend bool operator==(const Stats&, const Stats&) = default;
};

/// Exact, state-reduced decision diagram over an ordered item list for one
/// bin capacity.
///
/// Layer 0 holds the root with state (capacity, false). Arcs leaving layer
/// l-1 decide item l (1-based); the states reached after the last item are
/// merged into the single terminal at layer n. Nodes are stored layer by
/// layer in insertion order, arcs in creation order (zero-arc before one-arc
/// of each node), so both node and arc ids are stable across builds.
///
/// An empty item list gives root -> terminal with one zero-cost zero-arc.
class Bdd {
 public:
  /// `items` must be grouped by color (each color one contiguous block).
  static Bdd build(std::span<const Item> items, int capacity);

  int capacity() const noexcept { return capacity_; }
  const std::vector<Item>& items() const noexcept { return items_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  const Arc& arc(ArcId id) const { return arcs_[id]; }

  NodeId root() const noexcept { return 0; }
  NodeId terminal() const noexcept { return static_cast<NodeId>(nodes_.size()) - 1; }
  int num_layers() const noexcept { return static_cast<int>(layer_begin_.size()) - 1; }
  std::span<const NodeId> layer(int l) const;
  std::vector<int> layer_widths() const;

  /// Minimum cost over node-to-terminal paths, filled by one backward sweep
  /// at build time.
  int completion_cost(NodeId node) const { return completion_[node]; }

 private:
  int capacity_ = 0;
  std::vector<Item> items_;
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<NodeId> node_ids_;   // 0..N-1, backing storage for layer spans
  std::vector<int> layer_begin_;   // node id where each layer starts, plus end
  std::vector<int> completion_;
};

struct DecodedPath {
  std::vector<int> item_ids;  // ascending by layer
  int cost = 0;

  friend bool operator==(const DecodedPath&, const DecodedPath&) = default;
};

/// Items selected by the one-arcs of a root-to-terminal arc sequence and the
/// summed arc cost. Throws Error(MalformedPath) if the arcs are not a
/// consecutive root-to-terminal walk.
DecodedPath decode(const Bdd& bdd, std::span<const ArcId> path);

/// Every root-to-terminal path once, depth-first with the zero-arc explored
/// first. Throws Error(BudgetExceeded) beyond `max_paths`.
std::vector<DecodedPath> enumerate_paths(const Bdd& bdd, long long max_paths = 1'000'000);

inline int completion_bound(const Bdd& bdd, NodeId node) { return bdd.completion_cost(node); }

Stats stats(const Bdd& bdd);

/// Graphviz dump for debugging: dashed zero-arcs, solid one-arcs, arc cost
/// as the edge label.
std::string to_dot(const Bdd& bdd);

}  // namespace bpmcf::bdd
