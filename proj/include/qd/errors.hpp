#pragma once

#include <stdexcept>
#include <string>

namespace qd {

/// Raised when an input violates a documented precondition or invariant
/// (bad dimensions, failed density-matrix validation, malformed files).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an internal consistency check fails (eigensolver breakdown,
/// certificate reconstruction failure). Indicates a bug or numerical
/// corruption, not bad user input.
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qd
