#pragma once

#include <stdexcept>
#include <string>

namespace pgl3glue {

/// Malformed or invalid input: files, gluing data, out-of-domain arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation that could not complete or detected an inconsistency
/// (non-convergence, violated identity, mismatched double computation).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pgl3glue
