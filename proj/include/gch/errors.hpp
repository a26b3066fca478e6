#pragma once

#include <stdexcept>
#include <string>

namespace gch {

/// Invalid run configuration or parameters (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands defined on incompatible grids.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A function-space precondition (e.g. boundary values) does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field picked up NaN or Inf.
class CorruptStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gch
