#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace bpmcf {

struct Item {
  int id = 0;     // >= 1, unique within an instance
  int size = 0;   // capacity units, >= 1
  int color = 0;  // group label, >= 1

  friend bool operator==(const Item&, const Item&) = default;
};

/// Problem input: colored items and one capacity per bin.
///
/// Construction validates the invariants (n >= 1 is not required so that the
/// degenerate empty instance stays representable for diagram tests; k >= 1,
/// sizes/colors/capacities >= 1 and unique ids are). Instances are immutable.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<Item> items, std::vector<int> bin_capacities);

  const std::vector<Item>& items() const noexcept { return items_; }
  const std::vector<int>& bin_capacities() const noexcept { return capacities_; }

  int num_items() const noexcept { return static_cast<int>(items_.size()); }
  int num_bins() const noexcept { return static_cast<int>(capacities_.size()); }

  /// Distinct colors, ascending.
  std::vector<int> colors() const;
  int max_capacity() const;
  bool uniform_capacity() const;
  std::int64_t total_size() const;

  /// Total size per color (S_g).
  std::map<int, std::int64_t> color_totals() const;
  /// Number of items per (color, size) class, i.e. |O_{g,s}|. Keys ordered by
  /// color then size, which also enumerates K_g for each g.
  std::map<std::pair<int, int>, int> color_size_classes() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Item> items_;
  std::vector<int> capacities_;
};

/// An instance re-ordered for diagram construction together with the map back
/// to the caller's item ids.
struct CanonicalInstance {
  Instance instance;
  /// original_id[i] is the id, in the source instance, of canonical item i+1.
  std::vector<int> original_id;
  /// source_position[i] is the index into the source items() of canonical item i+1.
  std::vector<int> source_position;
};

/// Ascending color, nonincreasing size within a color, ties by original id;
/// ids renumbered 1..n.
CanonicalInstance canonical_order(const Instance& instance);

/// Sum over colors of ceil(S_g / max_b B_b); a valid lower bound whenever the
/// instance is feasible.
int objective_lower_bound(const Instance& instance);

}  // namespace bpmcf
