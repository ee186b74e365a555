#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptdyn/matrix.hpp"

namespace ptdyn::linalg {

// Real parts within this relative distance count as tied.
inline constexpr double kOrderingTieTolerance = 1e-9;

// Permutation putting values in canonical order: ascending real part, ties
// broken by ascending imaginary part. Near-equal real parts are chained into
// tie groups so the order is well defined.
std::vector<std::size_t> canonical_order(std::span<const Complex> values,
                                         double tie_tol = kOrderingTieTolerance);

void sort_spectrum(std::vector<Complex>& values, double tie_tol = kOrderingTieTolerance);

// Largest distance between matched elements under a greedy closest-pair
// matching. Sizes must agree.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace ptdyn::linalg
