#pragma once

#include <stdexcept>
#include <string>

namespace biotfs {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside its documented domain (bad sizes, negative parameters, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A factorization or Cholesky step met a non-positive pivot.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// An iterative method hit its iteration cap before reaching tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, int iterations, double residual)
      : Error(what), iterations_(iterations), residual_(residual) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// The discrete problem violates a structural hypothesis (inf-sup, K*_dr).
class DegenerateDiscretization : public Error {
 public:
  using Error::Error;
};

}  // namespace biotfs
