#pragma once

#include <stdexcept>
#include <string>

namespace dsn {

// Input problems: malformed files, violated type invariants, bad dimensions.
// The CLI maps these to exit code 2.
class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric problems discovered while computing on valid inputs.
// The CLI maps these to exit code 1.
class ComputationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class ValidationError : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class DimensionMismatch : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class EmptyInput : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class IndexOutOfRange : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class SampleTooSmall : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

// A reciprocal of zero inside a diversity evaluation: some category has
// positive proportion but a zero inclusion-weighted abundance.
class DegenerateInner : public ComputationFailure {
 public:
  using ComputationFailure::ComputationFailure;
};

// A correlation argument with zero variance.
class DegenerateVariance : public ComputationFailure {
 public:
  using ComputationFailure::ComputationFailure;
};

// Every optimizer start failed to produce an evaluable point.
class NoImprovement : public ComputationFailure {
 public:
  using ComputationFailure::ComputationFailure;
};

class IoFailure : public ComputationFailure {
 public:
  using ComputationFailure::ComputationFailure;
};

}  // namespace dsn
