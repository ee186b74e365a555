#pragma once

#include "ptdyn/matrix.hpp"

namespace ptdyn::linalg {

// Matrix exponential by scaling and squaring with a diagonal Padé approximant
// of degree 3, 5, 7, 9 or 13 chosen from the 1-norm. Diagonal input is
// exponentiated entrywise.
ComplexMatrix expm(const ComplexMatrix& a);

// exp(theta*G) * H * exp(-theta*G).
ComplexMatrix similarity_conjugate(const ComplexMatrix& h, const ComplexMatrix& g, Complex theta);

}  // namespace ptdyn::linalg
