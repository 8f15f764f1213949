#pragma once

#include <stdexcept>
#include <string>

namespace hazcast {

/// Raised when caller-supplied data (files, documents, flags) is unusable.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the library detects a broken internal invariant, e.g. a
/// document produced by the parser that fails its own validation.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hazcast
