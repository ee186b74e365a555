#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"

namespace {

using ptdyn::linalg::Complex;
using ptdyn::testing::Gen;
using namespace ptdyn::lattice;

TEST(LatticeProperties, HermitianGeneratorConservesNorm) {
  Gen gen;
  for (int draw = 0; draw < 5; ++draw) {
    const auto c = gen.hermitian_lattice(gen.integer(8, 24), 3.0, 2e-3);
    auto psi = gen.vector(static_cast<std::size_t>(c.n_sites));
    const double n0 = std::pow(ptdyn::linalg::vector_norm(psi), 2);
    const auto traj = propagate_rk4(c, psi);
    for (double n : traj.norms) EXPECT_NEAR(n / n0, 1.0, 1e-8) << draw;
  }
}

TEST(LatticeProperties, RungeKuttaAgreesWithOracle) {
  Gen gen(51);
  for (int draw = 0; draw < 5; ++draw) {
    LatticeConfig c;
    c.lambda = gen.uniform(-0.5, 0.5);
    c.alpha1 = gen.uniform(0.2, 1.0);
    c.alpha2 = gen.uniform(0.2, 1.0);
    c.beta = gen.uniform(-0.2, 0.2);
    c.n_sites = 20;
    c.z_max = 1.0;
    c.dz = 1e-3;
    const auto psi = site_excitation(c.n_sites, gen.integer(0, 5));
    const auto traj = propagate_rk4(c, psi);
    const auto ref = propagate_oracle(c, psi, c.z_max);
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      worst = std::max(worst, std::abs(traj.amplitudes.back()[i] - ref[i]));
    }
    EXPECT_LT(worst, 1e-6) << draw;
  }
}

TEST(LatticeProperties, Linearity) {
  Gen gen(52);
  LatticeConfig c;
  c.alpha1 = 0.8;
  c.alpha2 = 0.5;
  c.n_sites = 12;
  c.z_max = 0.5;
  c.dz = 1e-2;
  const auto a = gen.vector(12);
  const auto b = gen.vector(12);
  const Complex s = gen.complex();
  ptdyn::linalg::ComplexVector mix(12);
  for (std::size_t i = 0; i < 12; ++i) mix[i] = a[i] + s * b[i];
  const auto ta = propagate_rk4(c, a).amplitudes.back();
  const auto tb = propagate_rk4(c, b).amplitudes.back();
  const auto tm = propagate_rk4(c, mix).amplitudes.back();
  for (std::size_t i = 0; i < 12; ++i) EXPECT_LT(std::abs(tm[i] - ta[i] - s * tb[i]), 1e-13);
}

}  // namespace
