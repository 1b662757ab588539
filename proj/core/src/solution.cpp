#include "bpmcf/solution.hpp"

#include <cstdio>
#include <set>
#include <string>

#include "bpmcf/errors.hpp"

namespace bpmcf {

int count_color_fragments(const Instance& instance, const std::vector<int>& bin_of) {
  std::set<std::pair<int, int>> incidences;
  const auto& items = instance.items();
  for (std::size_t i = 0; i < items.size() && i < bin_of.size(); ++i) {
    incidences.emplace(bin_of[i], items[i].color);
  }
  return static_cast<int>(incidences.size());
}

Solution evaluate(const Instance& instance, const std::vector<int>& bin_of) {
  const auto& items = instance.items();
  if (bin_of.size() != items.size()) {
    throw Error(ErrorCode::UnassignedItem, "assignment covers " + std::to_string(bin_of.size()) +
                                               " of " + std::to_string(items.size()) + " items");
  }
  std::vector<long long> load(instance.num_bins(), 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const int b = bin_of[i];
    if (b < 0 || b >= instance.num_bins()) {
      throw Error(ErrorCode::UnassignedItem,
                  "item " + std::to_string(items[i].id) + " is not assigned to a valid bin");
    }
    load[b] += items[i].size;
  }
  for (int b = 0; b < instance.num_bins(); ++b) {
    if (load[b] > instance.bin_capacities()[b]) {
      throw Error(ErrorCode::CapacityViolation,
                  "bin " + std::to_string(b) + " holds " + std::to_string(load[b]) +
                      " > capacity " + std::to_string(instance.bin_capacities()[b]));
    }
  }
  return Solution{bin_of, count_color_fragments(instance, bin_of)};
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::TimeLimit: return "TimeLimit";
  }
  return "Unknown";
}

std::optional<SolveStatus> parse_status(const std::string& text) {
  for (SolveStatus s : {SolveStatus::Optimal, SolveStatus::Feasible, SolveStatus::Infeasible,
                        SolveStatus::TimeLimit}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

std::optional<double> SolveReport::gap_pct() const {
  if (!upper_bound) return std::nullopt;
  if (*upper_bound == lower_bound || *upper_bound == 0) return 0.0;
  return 100.0 * static_cast<double>(*upper_bound - lower_bound) / *upper_bound;
}

std::string format_gap(std::optional<double> gap, int precision) {
  if (!gap) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, *gap);
  return buf;
}

Solution to_source(const CanonicalInstance& canonical, const Solution& solution) {
  Solution out;
  out.objective = solution.objective;
  out.bin_of.assign(solution.bin_of.size(), -1);
  for (std::size_t i = 0; i < solution.bin_of.size(); ++i) {
    out.bin_of[canonical.source_position[i]] = solution.bin_of[i];
  }
  return out;
}

}  // namespace bpmcf
