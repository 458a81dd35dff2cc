#pragma once

#include <stdexcept>
#include <string>

namespace mrep {

// Malformed or unparseable input (unknown letter, bad shape, bad JSON).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition or numerical check on otherwise well-formed data failed.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size limit (depth cap, enumeration bound) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that must hold by construction was violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mrep
