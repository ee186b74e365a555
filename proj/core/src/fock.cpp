#include "ptdyn/fock.hpp"

#include <cmath>

#include "ptdyn/errors.hpp"

namespace ptdyn::fock {

ComplexMatrix annihilation(std::size_t n) {
  if (n == 0) throw DimensionError("annihilation: size must be positive");
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = std::sqrt(static_cast<double>(i + 1));
  return a;
}

FockOps build_fock_ops(int n_trunc, double mass, double omega) {
  if (n_trunc < kMinTruncation) {
    throw DomainError("build_fock_ops: n_trunc must be at least " +
                      std::to_string(kMinTruncation));
  }
  if (!(mass > 0.0) || !(omega > 0.0) || !std::isfinite(mass) || !std::isfinite(omega)) {
    throw DomainError("build_fock_ops: mass and omega must be positive");
  }
  const auto n = static_cast<std::size_t>(n_trunc);
  FockOps ops;
  ops.n_trunc = n_trunc;
  ops.mass = mass;
  ops.omega = omega;
  ops.a = annihilation(n);
  ops.a_dag = ops.a.transpose();
  ops.n_op = ComplexMatrix(n, n);
  ops.k_zero = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    ops.n_op(i, i) = static_cast<double>(i);
    ops.k_zero(i, i) = 0.5 * (static_cast<double>(i) + 0.5);
  }
  const double mw = mass * omega;
  ops.x_op = (1.0 / std::sqrt(2.0 * mw)) * (ops.a + ops.a_dag);
  ops.p_op = Complex(0.0, std::sqrt(mw / 2.0)) * (ops.a_dag - ops.a);
  ops.k_plus = 0.5 * (ops.a_dag * ops.a_dag);
  ops.k_minus = 0.5 * (ops.a * ops.a);
  return ops;
}

}  // namespace ptdyn::fock
