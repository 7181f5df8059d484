#pragma once

#include <stdexcept>
#include <string>

namespace voa {

// Thrown when a computation would produce states above the configured
// degree cutoff. Callers either pick a larger cutoff or treat the run
// as out of range; results are never silently truncated.
struct CutoffError : std::runtime_error {
  explicit CutoffError(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition violations: bad indices, mismatched ambient spaces,
// inhomogeneous inputs where homogeneous ones are required, malformed text.
struct StructuralError : std::invalid_argument {
  explicit StructuralError(const std::string& msg) : std::invalid_argument(msg) {}
};

// An exact computation reached a state that the underlying algebra forbids
// (e.g. a linear system that must be solvable has no solution). Indicates
// a bug or non-algebra input, not a user error.
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace voa
