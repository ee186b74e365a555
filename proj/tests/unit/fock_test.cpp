#include <gtest/gtest.h>

#include <cmath>

#include "ptdyn/errors.hpp"
#include "ptdyn/fock.hpp"

namespace {

using ptdyn::linalg::Complex;
using ptdyn::linalg::ComplexMatrix;
using ptdyn::linalg::max_abs_diff;
using namespace ptdyn::fock;

TEST(Annihilation, TruncatedCommutatorPattern) {
  const ComplexMatrix a = annihilation(4);
  const ComplexMatrix c = commutator(a, a.adjoint());
  const ComplexMatrix expected{
      {1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, -3.0}};
  EXPECT_LT(max_abs_diff(c, expected), 1e-14);
  EXPECT_THROW(annihilation(0), ptdyn::DimensionError);
}

TEST(BuildFockOps, QuadraturesAreHermitian) {
  const auto ops = build_fock_ops(32, 2.0, 0.5);
  EXPECT_LT(max_abs_diff(ops.x_op, ops.x_op.adjoint()), 1e-15);
  EXPECT_LT(max_abs_diff(ops.p_op, ops.p_op.adjoint()), 1e-15);
}

TEST(BuildFockOps, CanonicalCommutatorOnLeadingBlock) {
  const auto ops = build_fock_ops(16);
  const ComplexMatrix c = commutator(ops.x_op, ops.p_op).block(0, 0, 15, 15);
  EXPECT_LT(max_abs_diff(c, Complex(0, 1) * ComplexMatrix::identity(15)), 1e-14);
}

TEST(BuildFockOps, SuOneOneRelationOnLeadingBlock) {
  const int n = 16;
  const auto ops = build_fock_ops(n);
  const ComplexMatrix r = commutator(ops.k_zero, ops.k_plus) - ops.k_plus;
  EXPECT_LT(r.block(0, 0, n - 2, n - 2).max_abs(), 1e-14 * n);
  const ComplexMatrix s = commutator(ops.k_minus, ops.k_plus) - 2.0 * ops.k_zero;
  EXPECT_LT(s.block(0, 0, n - 2, n - 2).max_abs(), 1e-14 * n);
}

TEST(BuildFockOps, NumberOperatorIsDiagonal) {
  const auto ops = build_fock_ops(8);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(ops.n_op(i, i).real(), double(i), 1e-14);
  EXPECT_LT(max_abs_diff(ops.n_op, ops.a_dag * ops.a), 1e-14);
}

TEST(BuildFockOps, InvalidArgumentsThrow) {
  EXPECT_THROW(build_fock_ops(4), ptdyn::DomainError);
  EXPECT_THROW(build_fock_ops(8, 0.0), ptdyn::DomainError);
  EXPECT_THROW(build_fock_ops(8, 1.0, -1.0), ptdyn::DomainError);
}

}  // namespace
