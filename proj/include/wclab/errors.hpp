#pragma once

#include <stdexcept>
#include <string>

namespace wclab {

// Subcube level exceeds the resolution, or its base has bits at or above the level.
class InvalidSubcube : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested order needs more resolved coordinates than the function carries.
class ResolutionTooCoarse : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OrderOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A_n^alpha is not defined for alpha = -1, -2, ...; tables are restricted to alpha > -1.
class UndefinedCoefficient : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateAtom : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad experiment grid or run configuration.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computed quantity was NaN/inf, or an internal numeric self-check failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wclab
