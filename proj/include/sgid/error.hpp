#pragma once

#include <stdexcept>
#include <string>

namespace sgid {

/// Bad user-supplied configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// An exact computation was asked to explore more states than allowed (CLI exit code 3).
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Two mutually exclusive certificates fired on the same pattern.  This is an
/// implementation bug by construction, never a data error (CLI exit code 4).
struct InternalConflict : std::runtime_error {
  explicit InternalConflict(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sgid
