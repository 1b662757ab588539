#pragma once

#include "bpmcf/instance.hpp"
#include "bpmcf/solution.hpp"

namespace bpmcf {

/// Raw exhaustive enumeration of every capacity-feasible assignment, no
/// symmetry or objective pruning. Intended as a ground-truth oracle for small
/// instances (n <= ~12, k <= ~4). The returned optimum is the lexicographically
/// smallest bin_of vector among the minimum-objective assignments.
///
/// Throws Error(BudgetExceeded) once more than `node_limit` search nodes have
/// been visited.
SolveResult brute_force_solve(const Instance& instance, long long node_limit = 100'000'000);

}  // namespace bpmcf
