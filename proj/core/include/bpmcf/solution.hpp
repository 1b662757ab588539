#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpmcf/instance.hpp"

namespace bpmcf {

/// A total assignment of items to bins. bin_of is aligned with
/// Instance::items(): bin_of[i] is the 0-based bin of items()[i].
struct Solution {
  std::vector<int> bin_of;
  int objective = 0;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Checks the assignment and computes sum_g n_g. Throws Error with
/// UnassignedItem (mapping not total, or a bin index out of range) or
/// CapacityViolation.
Solution evaluate(const Instance& instance, const std::vector<int>& bin_of);

/// Number of (bin, color) pairs with at least one item; no feasibility checks.
int count_color_fragments(const Instance& instance, const std::vector<int>& bin_of);

enum class SolveStatus { Optimal, Feasible, Infeasible, TimeLimit };

const char* to_string(SolveStatus status);
std::optional<SolveStatus> parse_status(const std::string& text);

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  int lower_bound = 0;
  std::optional<int> upper_bound;
  double elapsed_s = 0.0;
  long long nodes_explored = 0;

  /// 100 * (UB - LB) / UB; 0 when UB == LB; nullopt ("inf") without an UB.
  std::optional<double> gap_pct() const;
};

/// "inf" for a missing gap, otherwise fixed notation with `precision` digits.
std::string format_gap(std::optional<double> gap, int precision = 2);

struct SolveResult {
  std::optional<Solution> solution;
  SolveReport report;
};

/// Re-expresses a solution of a canonicalized instance in terms of the source
/// instance the canonical form was derived from.
Solution to_source(const CanonicalInstance& canonical, const Solution& solution);

}  // namespace bpmcf
