#pragma once

#include <stdexcept>
#include <string>

namespace hypercone {

/// Invalid dimensions, out-of-range indices, malformed inputs.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine failed to converge or produced inconsistent results.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix required to be positive definite is not.
class NotPositiveDefinite : public std::runtime_error {
 public:
  NotPositiveDefinite(const std::string& what, double min_eigenvalue)
      : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// A supplied set of matrices is not a basis (rank deficient or not traceless).
class DegenerateBasis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random sampling failed to produce a generic point within the resample budget.
class DegenerateSampling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hypercone
