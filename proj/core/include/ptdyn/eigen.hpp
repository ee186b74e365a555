#pragma once

#include <vector>

#include "ptdyn/errors.hpp"
#include "ptdyn/matrix.hpp"

namespace ptdyn::linalg {

// Residual contract tolerance: ||A v - lambda v|| <= tol * ||A||_F.
inline constexpr double kDefaultEigTolerance = 1e-10;
// QR sweeps allowed per eigenvalue before giving up.
inline constexpr int kQrIterationsPerEigenvalue = 30;

struct EigenDecomposition {
  std::vector<Complex> eigenvalues;  // canonical order, see sort_spectrum
  ComplexMatrix eigenvectors;        // unit columns matching eigenvalues
  bool converged = true;
  double max_residual = 0.0;  // max ||A v - lambda v|| / ||A||_F
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, EigenDecomposition partial)
      : Error(what), partial_(std::move(partial)) {}
  const EigenDecomposition& partial() const noexcept { return partial_; }

 private:
  EigenDecomposition partial_;
};

// Hessenberg reduction, complex single-shift QR to Schur form, then
// back-substitution for eigenvectors.
EigenDecomposition eig_general(const ComplexMatrix& a, double tol = kDefaultEigTolerance);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // orthonormal columns
};

// Cyclic Jacobi; the input is symmetrized as (A + A^H)/2.
HermitianEigen hermitian_eig(const ComplexMatrix& a);

// One-sided Jacobi; descending. Small singular values keep high relative
// accuracy, which the numerical-rank test relies on.
std::vector<double> singular_values(const ComplexMatrix& a);

// Number of singular values above abs_tol.
int numerical_rank(const ComplexMatrix& a, double abs_tol);

}  // namespace ptdyn::linalg
