#pragma once

#include <stdexcept>
#include <string>

namespace ginoe {

// Caller handed us something outside an operation's contract. CLI maps to exit 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Argument lies outside the admissible interval [lo, hi] (open or closed per op).
class RangeError : public UsageError {
 public:
  RangeError(const std::string& what, double lo, double hi);
  double lower() const { return lo_; }
  double upper() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

class PrecisionError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Computation ran but could not deliver. CLI maps to exit 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double previous, double last);
  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace ginoe
