#pragma once

#include <stdexcept>
#include <string>

namespace qjump {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Qubit/pool counts outside the supported range.
struct CapacityError : Error {
  using Error::Error;
};

// Mismatched qubit counts or vector lengths between operands.
struct ShapeError : Error {
  using Error::Error;
};

// Invalid layer descriptor (bad qubit index, malformed Pauli string, ...).
struct DescriptorError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  ParseError(int line_number, const std::string& what)
      : Error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
};

struct ConfigError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

// Metric matrix E has no numerically nonzero eigenvalue.
struct DegenerateMetricError : NumericalError {
  using NumericalError::NumericalError;
};

// The conic combination collapsed to (numerically) zero.
struct DegenerateJumpError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace qjump
