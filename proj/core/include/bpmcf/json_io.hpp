#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bpmcf/instance.hpp"
#include "bpmcf/solution.hpp"

namespace bpmcf {

/// Generator provenance attached to an instance file as "meta".
struct InstanceMeta {
  int k = 0;
  int capacity = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

struct InstanceDocument {
  Instance instance;
  std::optional<InstanceMeta> meta;
};

/// {"bins":[...],"items":[{"id":..,"size":..,"color":..},...]} plus optional
/// "meta":{"k":..,"B":..,"seed":..}. Output is compact and key-ordered, so it
/// is byte-stable for a given instance.
std::string instance_to_json(const Instance& instance,
                             const std::optional<InstanceMeta>& meta = std::nullopt);
InstanceDocument instance_from_json(const std::string& text);

/// {"objective":..,"bin_of":{"<id>":bin,...},"status":".."}; objective is null
/// and bin_of empty when there is no solution.
std::string solution_to_json(const Instance& instance, const std::optional<Solution>& solution,
                             SolveStatus status);

struct SolutionDocument {
  std::optional<Solution> solution;
  SolveStatus status = SolveStatus::Infeasible;
};

/// Parses a solution file against its instance; the assignment is re-checked
/// with evaluate().
SolutionDocument solution_from_json(const Instance& instance, const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bpmcf
