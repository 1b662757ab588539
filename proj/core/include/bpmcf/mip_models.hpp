#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpmcf/bdd.hpp"
#include "bpmcf/consistent_path.hpp"
#include "bpmcf/instance.hpp"
#include "bpmcf/solution.hpp"

namespace bpmcf::mip {

enum class Formulation { IP, ANF };

const char* to_string(Formulation f);
std::optional<Formulation> parse_formulation(const std::string& text);

/// What a model variable stands for.
struct VarMeaning {
  enum class Kind { Assign, ColorUsed, ArcFlow } kind = Kind::Assign;
  int bin = 0;
  int item = 0;   // Assign: canonical item id
  int color = 0;  // ColorUsed
  int arc = 0;    // ArcFlow: arc id in the bin's diagram
};

struct ModelFile {
  Formulation formulation = Formulation::IP;
  std::string text;
  std::vector<std::string> variables;  // declaration order
  std::map<std::string, VarMeaning> var_index;
  int num_constraints = 0;
};

/// Direct formulation in CPLEX LP format: x_b{b}_o{o} assigns item o to bin
/// b, y_b{b}_g{g} marks color g present in bin b. Rows: assign_o{o} (each item
/// once), cap_b{b} (capacity), link_b{b}_o{o} (x <= y of the item's color).
/// `canonical` must be in canonical order.
ModelFile emit_ip(const Instance& canonical);

/// Arc-based network-flow formulation over the per-bin diagrams: one binary
/// z_b{b}_a{arc} per (bin, arc), flow conservation at internal nodes, unit
/// source/sink rows, and one joint row per (color, size) class requiring its
/// one-arcs to be taken exactly |O_{g,s}| times.
ModelFile emit_anf(const Instance& canonical, const cpath::DiagramSet& diagrams);
ModelFile emit_anf(const Instance& canonical);

/// Parses "name value" lines (blank lines and '#' comments skipped). Values
/// within 1e-6 of 0 or 1 are rounded; anything else is InconsistentValues.
std::map<std::string, int> parse_values(const std::string& text);

/// Maps external 0/1 values back to an assignment of the canonical instance
/// and checks it with evaluate(). Variables missing from `values` are 0.
/// Throws Error(InconsistentValues) when the values are not a valid
/// selection (an item covered twice, flow that is not one path per bin, a
/// joint class covered the wrong number of times).
Solution import_solution(const Instance& canonical, Formulation formulation,
                         const std::map<std::string, int>& values);

}  // namespace bpmcf::mip
