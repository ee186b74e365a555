#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ptdyn/errors.hpp"
#include "ptdyn/fock.hpp"
#include "ptdyn/scaling.hpp"

namespace {

using ptdyn::linalg::Complex;
using ptdyn::linalg::ComplexMatrix;
using ptdyn::linalg::max_abs_diff;
using namespace ptdyn::scaling;

constexpr double kPi = std::numbers::pi;

DeformationParams deformation(double eps, int k, int n = 256) {
  DeformationParams d;
  d.eps_def = eps;
  d.k_int = k;
  d.n_trunc = n;
  return d;
}

TEST(ScalingGenerator, TracelessHermitianAndImaginary) {
  const ComplexMatrix d = scaling_generator(16);
  EXPECT_LT(std::abs(d.trace()), 1e-14);
  EXPECT_LT(max_abs_diff(d, d.adjoint()), 1e-14);
  const ComplexMatrix id = Complex(0, 1) * d;
  EXPECT_LT(max_abs_diff(id, -id.adjoint()), 1e-14);
  for (auto z : d.data()) EXPECT_EQ(z.real(), 0.0);
}

TEST(ScalingGenerator, MatchesQuadratureProductOnLeadingBlock) {
  const ComplexMatrix d = scaling_generator(16);
  EXPECT_NEAR(d(0, 2).imag(), -std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(d(2, 0).imag(), std::sqrt(2.0) / 2.0, 1e-15);
  const auto ops = ptdyn::fock::build_fock_ops(16);
  const ComplexMatrix sym = 0.5 * (ops.x_op * ops.p_op + ops.p_op * ops.x_op);
  EXPECT_LT(max_abs_diff(d.block(0, 0, 14, 14), sym.block(0, 0, 14, 14)), 1e-14);
  EXPECT_THROW(scaling_generator(8), ptdyn::DomainError);
}

TEST(WickParameters, Examples) {
  const auto w0 = wick_parameters(deformation(0.0, 0));
  EXPECT_EQ(w0.r, 0.0);
  EXPECT_NEAR(std::abs(w0.phase - 1.0), 0.0, 1e-16);

  const auto w2 = wick_parameters(deformation(2.0, 0));
  EXPECT_NEAR(w2.r, kPi / 6.0, 1e-15);
  EXPECT_NEAR(std::abs(w2.phase - std::polar(1.0, kPi / 3.0)), 0.0, 1e-15);

  const auto w1 = wick_parameters(deformation(1.0, 1));
  EXPECT_NEAR(w1.r, kPi / 2.0, 1e-15);
  EXPECT_NEAR(std::abs(w1.phase + 1.0), 0.0, 1e-15);
}

TEST(WickParameters, DefiningPhaseIdentity) {
  for (double eps : {0.0, 0.5, 1.0, 2.0, 3.7}) {
    for (int k : {-2, 0, 1, 3}) {
      const auto w = wick_parameters(deformation(eps, k));
      const Complex lhs = std::exp(Complex(0, 2 * w.r));
      const Complex rhs = std::exp(Complex(0, -w.r * (2 + eps) + kPi * eps / 2));
      EXPECT_LT(std::abs(lhs - rhs), 1e-14) << eps << " " << k;
      EXPECT_LT(std::abs(w.phase - lhs), 1e-14);
    }
  }
}

TEST(ScaleCheck, ZeroIsExact) {
  const auto e = scale_check(0.0, 64);
  EXPECT_EQ(e.max_err_x, 0.0);
  EXPECT_EQ(e.max_err_p, 0.0);
}

TEST(ScaleCheck, RealAndImaginaryArguments) {
  const auto real = scale_check(0.3, 128, 0.25);
  EXPECT_LT(real.max_err_x, 1e-8);
  EXPECT_LT(real.max_err_p, 1e-8);
  const auto imag = scale_check(Complex(0, kPi / 4), 256);
  EXPECT_LT(imag.max_err_x, 1e-6);
  EXPECT_LT(imag.max_err_p, 1e-6);
}

TEST(ScaleCheck, PreconditionsEnforced) {
  EXPECT_THROW(scale_check(2.5, 128), ptdyn::DomainError);
  EXPECT_THROW(scale_check(0.3, 32), ptdyn::DomainError);
  EXPECT_THROW(scale_check(0.3, 128, 0.0), ptdyn::DomainError);
}

TEST(RoundTrip, IdentityForModerateArguments) {
  for (Complex r : {Complex(0.5, 0.0), Complex(-1.0, 0.0), Complex(0.3, 0.6)}) {
    EXPECT_LT(round_trip_check(r, 128), 1e-9) << r;
  }
}

TEST(DeformedEquivalent, UndeformedIdentity) {
  EXPECT_LT(deformed_equivalent_check(deformation(0.0, 0, 128)), 1e-10);
}

TEST(DeformedEquivalent, QuarticCaseBothBranches) {
  EXPECT_LT(deformed_equivalent_check(deformation(2.0, 0)), 1e-5);
  EXPECT_LT(deformed_equivalent_check(deformation(2.0, 1)), 1e-5);
}

TEST(DeformedEquivalent, UnsupportedExponentsThrow) {
  EXPECT_THROW(deformed_equivalent_check(deformation(1.0, 0)),
               ptdyn::UnsupportedRepresentationError);
  EXPECT_THROW(deformed_equivalent_check(deformation(2.5, 0)),
               ptdyn::UnsupportedRepresentationError);
  EXPECT_THROW(deformed_equivalent_check(deformation(2.0, 0, 64)), ptdyn::DomainError);
}

TEST(DeformedEquivalent, DetailReportsBlock) {
  const auto d = deformed_equivalent_detail(deformation(2.0, 0));
  EXPECT_EQ(d.n_trunc, 256);
  EXPECT_EQ(d.block, static_cast<int>(256 * kHighPowerInteriorFraction));
  EXPECT_GT(d.series_order, 0);
  EXPECT_FALSE(d.order_capped);
}

TEST(GeneralDeformation, Examples) {
  const std::vector<double> quadratic{0.0, 0.0, 1.0};
  EXPECT_LT(general_deformation_check(quadratic, 256), 1e-5);
  const std::vector<double> none;
  EXPECT_LT(general_deformation_check(none, 128), 1e-5);
  const std::vector<double> cubic{0.0, 0.0, 0.0, 1.0};
  EXPECT_LT(general_deformation_check(cubic, 256), 1e-4);
}

TEST(GeneralDeformation, PreconditionsEnforced) {
  const std::vector<double> bad{0.0, NAN};
  EXPECT_THROW(general_deformation_check(bad, 128), ptdyn::DomainError);
  const std::vector<double> ok{1.0};
  EXPECT_THROW(general_deformation_check(ok, 64), ptdyn::DomainError);
}

TEST(CoherentMap, Examples) {
  EXPECT_EQ(coherent_map_check(0.0, 64), 0.0);
  EXPECT_LT(coherent_map_check(1.0, 128), 1e-6);
  EXPECT_LT(coherent_map_check(-2.5, 128), 1e-6);
  EXPECT_THROW(coherent_map_check(1.0, 32), ptdyn::DomainError);
}

TEST(CoherentSpectrum, SpectraAgree) {
  EXPECT_LT(coherent_spectrum_check(1.0, 10), 1e-8);
  EXPECT_THROW(coherent_spectrum_check(1.0, 64), ptdyn::DomainError);
}

}  // namespace
