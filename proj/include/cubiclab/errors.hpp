#pragma once

#include <stdexcept>
#include <string>

namespace cubiclab {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotEiconalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotStronglyElliptic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NegativeRadicand : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonIdempotentInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SelectorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FormFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cubiclab
