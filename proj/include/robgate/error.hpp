#pragma once

#include <stdexcept>
#include <string>

namespace robgate {

/// Bad argument: non-unit axis, non-unitary matrix, empty sequence, bad grid.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root finder could not bracket or converge.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quaternion sign gauge could not be fixed (reference component vanishes).
class GaugeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too few samples between the noise floor and the ceiling to fit an order.
class WindowExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CSV or pulse-program text.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace robgate
