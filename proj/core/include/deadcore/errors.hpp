#pragma once

#include <stdexcept>
#include <string>

namespace deadcore {

/// Argument outside the mathematical domain of a model function (e.g. s < 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A probe series or snapshot set does not cover the interval a bound needs.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certificate preconditions (e.g. positivity on [0, T/2]) are not met.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CflViolation : public std::runtime_error {
 public:
  CflViolation(const std::string& what, long cell) : std::runtime_error(what), cell_(cell) {}
  long cell() const { return cell_; }

 private:
  long cell_;
};

}  // namespace deadcore
