#pragma once

#include <stdexcept>
#include <string>

namespace ptdyn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatches and undersized inputs.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Parameters outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Result would overflow double precision.
class RangeError : public Error {
 public:
  using Error::Error;
};

class ExceptionalPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SingularParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A transformation step whose generator degenerates (e.g. beta1 == 0 for the
// quadratic gauge step).
class ChainStepError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonRealSpectrumError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedRepresentationError : public DomainError {
 public:
  using DomainError::DomainError;
};

class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double last_stable_z)
      : Error(what), last_stable_z_(last_stable_z) {}
  double last_stable_z() const noexcept { return last_stable_z_; }

 private:
  double last_stable_z_;
};

}  // namespace ptdyn
