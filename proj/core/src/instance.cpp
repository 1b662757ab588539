#include "bpmcf/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "bpmcf/errors.hpp"

namespace bpmcf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::CapacityViolation: return "CapacityViolation";
    case ErrorCode::UnassignedItem: return "UnassignedItem";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::MalformedPath: return "MalformedPath";
    case ErrorCode::InvalidQ: return "InvalidQ";
    case ErrorCode::InconsistentValues: return "InconsistentValues";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Instance::Instance(std::vector<Item> items, std::vector<int> bin_capacities)
    : items_(std::move(items)), capacities_(std::move(bin_capacities)) {
  if (capacities_.empty()) {
    throw Error(ErrorCode::InvalidInstance, "at least one bin is required");
  }
  for (std::size_t b = 0; b < capacities_.size(); ++b) {
    if (capacities_[b] < 1) {
      throw Error(ErrorCode::InvalidInstance,
                  "bin " + std::to_string(b) + " has capacity < 1");
    }
  }
  std::set<int> ids;
  for (const Item& item : items_) {
    if (item.id < 1 || item.size < 1 || item.color < 1) {
      throw Error(ErrorCode::InvalidInstance,
                  "item " + std::to_string(item.id) + ": id, size and color must be >= 1");
    }
    if (!ids.insert(item.id).second) {
      throw Error(ErrorCode::InvalidInstance, "duplicate item id " + std::to_string(item.id));
    }
  }
}

std::vector<int> Instance::colors() const {
  std::set<int> seen;
  for (const Item& item : items_) seen.insert(item.color);
  return {seen.begin(), seen.end()};
}

int Instance::max_capacity() const {
  return *std::max_element(capacities_.begin(), capacities_.end());
}

bool Instance::uniform_capacity() const {
  return std::adjacent_find(capacities_.begin(), capacities_.end(), std::not_equal_to<>()) ==
         capacities_.end();
}

std::int64_t Instance::total_size() const {
  return std::accumulate(items_.begin(), items_.end(), std::int64_t{0},
                         [](std::int64_t acc, const Item& item) { return acc + item.size; });
}

std::map<int, std::int64_t> Instance::color_totals() const {
  std::map<int, std::int64_t> totals;
  for (const Item& item : items_) totals[item.color] += item.size;
  return totals;
}

std::map<std::pair<int, int>, int> Instance::color_size_classes() const {
  std::map<std::pair<int, int>, int> classes;
  for (const Item& item : items_) ++classes[{item.color, item.size}];
  return classes;
}

CanonicalInstance canonical_order(const Instance& instance) {
  const auto& items = instance.items();
  std::vector<int> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Item& x = items[a];
    const Item& y = items[b];
    if (x.color != y.color) return x.color < y.color;
    if (x.size != y.size) return x.size > y.size;
    return x.id < y.id;
  });

  CanonicalInstance out;
  std::vector<Item> reordered;
  reordered.reserve(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Item& src = items[order[i]];
    reordered.push_back({static_cast<int>(i) + 1, src.size, src.color});
    out.original_id.push_back(src.id);
    out.source_position.push_back(order[i]);
  }
  out.instance = Instance(std::move(reordered), instance.bin_capacities());
  return out;
}

int objective_lower_bound(const Instance& instance) {
  const std::int64_t cap = instance.max_capacity();
  std::int64_t bound = 0;
  for (const auto& [color, total] : instance.color_totals()) {
    bound += (total + cap - 1) / cap;
  }
  return static_cast<int>(bound);
}

}  // namespace bpmcf
