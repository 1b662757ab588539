#pragma once

#include <stdexcept>
#include <string>

namespace bpmcf {

enum class ErrorCode {
  InvalidInstance,
  CapacityViolation,
  UnassignedItem,
  BudgetExceeded,
  MalformedPath,
  InvalidQ,
  InconsistentValues,
  ParseError,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this one exception type; the
// code tells callers (and the CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bpmcf
