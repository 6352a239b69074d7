#pragma once

#include <stdexcept>
#include <string>

namespace khat {

/// Raised when operands live on different base spaces or have incompatible
/// matrix shapes, or when a constructor's invariant fails.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for operations the model cannot represent (for instance realizing
/// an odd form on a base with torus factors).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace khat
