#pragma once

#include <cstddef>

#include "ptdyn/matrix.hpp"

namespace ptdyn::fock {

using linalg::Complex;
using linalg::ComplexMatrix;

inline constexpr int kMinTruncation = 8;

// Truncated ladder operator: sqrt(n+1) on the superdiagonal. Any size >= 1.
ComplexMatrix annihilation(std::size_t n);

struct FockOps {
  int n_trunc = 0;
  double mass = 1.0;
  double omega = 1.0;
  ComplexMatrix a, a_dag, n_op, x_op, p_op;
  ComplexMatrix k_plus, k_zero, k_minus;  // a_dag^2/2, (n + 1/2)/2, a^2/2
};

// x = (a + a_dag)/sqrt(2 m w), p = i sqrt(m w / 2)(a_dag - a).
FockOps build_fock_ops(int n_trunc, double mass = 1.0, double omega = 1.0);

}  // namespace ptdyn::fock
