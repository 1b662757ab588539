#include "bpmcf/bdd.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bpmcf/errors.hpp"

namespace bpmcf::bdd {
namespace {

// Per-layer state -> node lookup; remaining in [0, capacity], seen in {0,1}.
class StateIndex {
 public:
  explicit StateIndex(int capacity) : slots_(2 * (static_cast<std::size_t>(capacity) + 1), kNone) {}
  NodeId& at(NodeState s) { return slots_[2 * static_cast<std::size_t>(s.remaining) + s.seen]; }
  void clear() { std::fill(slots_.begin(), slots_.end(), kNone); }

 private:
  std::vector<NodeId> slots_;
};

}  // namespace

Bdd Bdd::build(std::span<const Item> items, int capacity) {
  Bdd d;
  d.capacity_ = capacity;
  d.items_.assign(items.begin(), items.end());
  const int n = static_cast<int>(items.size());

  d.nodes_.push_back(Node{0, {capacity, false}, kNone, kNone});
  d.layer_begin_.push_back(0);

  if (n == 0) {
    d.layer_begin_.push_back(1);
    d.nodes_.push_back(Node{1, {0, false}, kNone, kNone});
    d.arcs_.push_back(Arc{0, 1, 0, 0, kNone});
    d.nodes_[0].zero_arc = 0;
  } else {
    StateIndex index(capacity);
    for (int l = 1; l <= n; ++l) {
      const Item& item = items[l - 1];
      const bool last_layer = l == n;
      // Crossing into a new color block clears the seen flag before merging.
      const bool color_ends = last_layer || items[l].color != item.color;
      const int begin = d.layer_begin_.back();
      const int end = static_cast<int>(d.nodes_.size());
      d.layer_begin_.push_back(end);
      index.clear();

      auto target = [&](NodeState s) -> NodeId {
        if (last_layer) s = {0, false};
        else if (color_ends) s.seen = false;
        NodeId& slot = index.at(s);
        if (slot == kNone) {
          slot = static_cast<NodeId>(d.nodes_.size());
          d.nodes_.push_back(Node{l, s, kNone, kNone});
        }
        return slot;
      };

      for (NodeId u = begin; u < end; ++u) {
        const NodeState s = d.nodes_[u].state;
        const NodeId zero_to = target(s);
        d.nodes_[u].zero_arc = static_cast<ArcId>(d.arcs_.size());
        d.arcs_.push_back(Arc{u, zero_to, 0, 0, l - 1});

        if (s.remaining - item.size >= 0) {
          const NodeId one_to = target({s.remaining - item.size, true});
          d.nodes_[u].one_arc = static_cast<ArcId>(d.arcs_.size());
          d.arcs_.push_back(Arc{u, one_to, 1, static_cast<std::int8_t>(s.seen ? 0 : 1), l - 1});
        }
      }
    }
  }
  d.layer_begin_.push_back(static_cast<int>(d.nodes_.size()));

  d.node_ids_.resize(d.nodes_.size());
  std::iota(d.node_ids_.begin(), d.node_ids_.end(), 0);

  d.completion_.assign(d.nodes_.size(), 0);
  for (NodeId u = static_cast<NodeId>(d.nodes_.size()) - 2; u >= 0; --u) {
    const Node& node = d.nodes_[u];
    int best = d.completion_[d.arcs_[node.zero_arc].to];
    if (node.one_arc != kNone) {
      const Arc& a = d.arcs_[node.one_arc];
      best = std::min(best, a.cost + d.completion_[a.to]);
    }
    d.completion_[u] = best;
  }
  return d;
}

std::span<const NodeId> Bdd::layer(int l) const {
  const int begin = layer_begin_.at(l);
  const int end = layer_begin_.at(l + 1);
  return std::span<const NodeId>(node_ids_).subspan(begin, end - begin);
}

std::vector<int> Bdd::layer_widths() const {
  std::vector<int> widths;
  for (int l = 0; l < num_layers(); ++l) widths.push_back(layer_begin_[l + 1] - layer_begin_[l]);
  return widths;
}

DecodedPath decode(const Bdd& bdd, std::span<const ArcId> path) {
  DecodedPath out;
  NodeId at = bdd.root();
  for (ArcId id : path) {
    if (id < 0 || id >= static_cast<ArcId>(bdd.arcs().size())) {
      throw Error(ErrorCode::MalformedPath, "unknown arc " + std::to_string(id));
    }
    const Arc& a = bdd.arc(id);
    if (a.from != at) {
      throw Error(ErrorCode::MalformedPath, "arc " + std::to_string(id) + " does not continue the path");
    }
    if (a.domain == 1) out.item_ids.push_back(bdd.items()[a.item].id);
    out.cost += a.cost;
    at = a.to;
  }
  if (at != bdd.terminal()) throw Error(ErrorCode::MalformedPath, "path does not reach the terminal");
  return out;
}

std::vector<DecodedPath> enumerate_paths(const Bdd& bdd, long long max_paths) {
  std::vector<DecodedPath> paths;
  DecodedPath current;

  auto walk = [&](auto&& self, NodeId u) -> void {
    if (u == bdd.terminal()) {
      if (static_cast<long long>(paths.size()) >= max_paths) {
        throw Error(ErrorCode::BudgetExceeded,
                    "more than " + std::to_string(max_paths) + " root-terminal paths");
      }
      paths.push_back(current);
      return;
    }
    const Node& node = bdd.node(u);
    for (ArcId id : {node.zero_arc, node.one_arc}) {
      if (id == kNone) continue;
      const Arc& a = bdd.arc(id);
      if (a.domain == 1) current.item_ids.push_back(bdd.items()[a.item].id);
      current.cost += a.cost;
      self(self, a.to);
      current.cost -= a.cost;
      if (a.domain == 1) current.item_ids.pop_back();
    }
  };
  walk(walk, bdd.root());
  return paths;
}

Stats stats(const Bdd& bdd) {
  const auto widths = bdd.layer_widths();
  return Stats{static_cast<int>(bdd.nodes().size()), static_cast<int>(bdd.arcs().size()),
               *std::max_element(widths.begin(), widths.end())};
}

std::string to_dot(const Bdd& bdd) {
  std::ostringstream out;
  out << "digraph bdd {\n  rankdir=TB;\n";
  for (NodeId u = 0; u < static_cast<NodeId>(bdd.nodes().size()); ++u) {
    const Node& node = bdd.node(u);
    out << "  n" << u << " [label=\"(" << node.state.remaining << ',' << (node.state.seen ? 1 : 0)
        << ")\"];\n";
  }
  for (const Arc& a : bdd.arcs()) {
    out << "  n" << a.from << " -> n" << a.to << " [style=" << (a.domain == 1 ? "solid" : "dashed")
        << ", label=\"" << static_cast<int>(a.cost) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace bpmcf::bdd
