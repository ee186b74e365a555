#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"

namespace {

using ptdyn::Regime;
using ptdyn::linalg::ComplexMatrix;
using ptdyn::testing::Gen;
using namespace ptdyn::fock;

TEST(SwansonProperties, NuFormSpectrumMatchesGswSpectrum) {
  Gen gen;
  for (int draw = 0; draw < 100; ++draw) {
    const auto p = gen.swanson_params(64);
    if (!(p.lambda > 0.0)) continue;
    const double mass = gen.uniform(0.3, 3.0);
    const double omega = gen.uniform(0.3, 3.0);
    const auto form = nu_form(p, mass, omega);
    const auto e = gsw_spectrum(p, 8);
    for (int n = 0; n < 8; ++n) {
      EXPECT_NEAR(form.energy(n), e[static_cast<std::size_t>(n)],
                  1e-12 * std::max(1.0, std::abs(e[static_cast<std::size_t>(n)])))
          << draw;
    }
  }
}

TEST(SwansonProperties, NuHamiltonianReproducesMatrixOnLeadingBlock) {
  Gen gen(31);
  for (int draw = 0; draw < 30; ++draw) {
    const auto p = gen.swanson_params(24);
    const double mass = gen.uniform(0.5, 2.0);
    const double omega = gen.uniform(0.5, 2.0);
    const auto ops = build_fock_ops(24, mass, omega);
    const ComplexMatrix h = nu_hamiltonian(nu_form(p, mass, omega), ops);
    const ComplexMatrix ref = build_gsw(p);
    EXPECT_LT(ptdyn::linalg::max_abs_diff(h.block(0, 0, 20, 20), ref.block(0, 0, 20, 20)), 1e-11)
        << draw;
  }
}

TEST(SwansonProperties, RegimeMatchesDiscriminant) {
  Gen gen(32);
  for (int draw = 0; draw < 200; ++draw) {
    const auto p = gen.swanson_params(32);
    const auto c = chain_coefficients(p);
    const double d = discriminant(p);
    EXPECT_EQ(c.regime, regime_from_discriminant(d)) << draw;
    if (c.regime == Regime::kUnbroken) {
      EXPECT_EQ(c.lambda_tilde.imag(), 0.0) << draw;
    } else if (c.regime == Regime::kBroken) {
      EXPECT_EQ(c.lambda_tilde.real(), 0.0) << draw;
    }
    EXPECT_EQ(c.lambda_tilde_partner, std::conj(c.lambda_tilde)) << draw;
  }
}

TEST(SwansonProperties, GaugeChainRemovesLinearTerms) {
  Gen gen(33);
  int checked = 0;
  for (int draw = 0; draw < 40; ++draw) {
    auto p = gen.swanson_params(48, 0.5);
    if (p.beta1 == 0.0) continue;
    // Keep the gauge exponents moderate so truncated expm stays well conditioned.
    p.alpha1 = std::copysign(std::min(std::abs(p.alpha1), 1.0), p.alpha1);
    p.alpha2 = std::copysign(std::min(std::abs(p.alpha2), 1.0), p.alpha2);
    const auto chain = transform_chain(p);
    EXPECT_LT(chain.h2_residual, 1e-8) << draw;
    ++checked;
  }
  EXPECT_GT(checked, 30);
}

}  // namespace
