#include <gtest/gtest.h>

#include <cmath>

#include "ptdyn/errors.hpp"
#include "ptdyn/lattice.hpp"
#include "ptdyn/swanson.hpp"

namespace {

using ptdyn::linalg::Complex;
using ptdyn::linalg::ComplexMatrix;
using ptdyn::linalg::ComplexVector;
using ptdyn::linalg::max_abs_diff;
using namespace ptdyn::lattice;

LatticeConfig glauber_fock(double z_max = 2.0) {
  LatticeConfig c;
  c.n_sites = 40;
  c.z_max = z_max;
  c.dz = 1e-3;
  return c;
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

TEST(LatticeConfig, StepCountEndsOnZMax) {
  LatticeConfig c;
  c.z_max = 2.0;
  c.dz = 1e-3;
  EXPECT_EQ(c.step_count(), 2000);
  c.dz = 0.3;
  EXPECT_EQ(c.step_count(), 7);
}

TEST(LatticeConfig, ValidationRejectsBadInput) {
  LatticeConfig c;
  c.n_sites = 3;
  EXPECT_THROW(c.validate(), ptdyn::DomainError);
  c = LatticeConfig{};
  c.dz = 0.0;
  EXPECT_THROW(c.validate(), ptdyn::DomainError);
  c = LatticeConfig{};
  c.z_max = 1e-4;
  EXPECT_THROW(c.validate(), ptdyn::DomainError);
  c = LatticeConfig{};
  c.beta = INFINITY;
  EXPECT_THROW(c.validate(), ptdyn::DomainError);
}

TEST(BuildLatticeGenerator, DiagonalRamp) {
  LatticeConfig c;
  c.lambda = 1.0;
  c.alpha1 = c.alpha2 = 0.0;
  c.n_sites = 6;
  const ComplexMatrix m = build_lattice_generator(c);
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(m(n, n), Complex(n + 0.5, 0.0));
  EXPECT_EQ(m.max_abs(), 5.5);
}

TEST(BuildLatticeGenerator, EntryPattern) {
  LatticeConfig c;
  c.lambda = 0.4;
  c.alpha1 = 0.7;
  c.alpha2 = -0.3;
  c.beta = 0.2;
  c.n_sites = 8;
  const ComplexMatrix m = build_lattice_generator(c);
  EXPECT_DOUBLE_EQ(m(3, 2).real(), 0.7 * std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(m(3, 4).real(), -0.3 * std::sqrt(4.0));
  EXPECT_DOUBLE_EQ(m(3, 1).real(), 0.2 * std::sqrt(3.0 * 2.0));
  EXPECT_DOUBLE_EQ(m(3, 5).real(), 0.2 * std::sqrt(4.0 * 5.0));
}

TEST(BuildLatticeGenerator, EqualsSwansonMatrixWithEqualBetas) {
  LatticeConfig c;
  c.lambda = 1.1;
  c.alpha1 = 0.6;
  c.alpha2 = 0.9;
  c.beta = 0.25;
  c.n_sites = 12;
  ptdyn::fock::SwansonParams p;
  p.lambda = c.lambda;
  p.alpha1 = c.alpha1;
  p.alpha2 = c.alpha2;
  p.beta1 = p.beta2 = c.beta;
  p.n_trunc = c.n_sites;
  EXPECT_LT(max_abs_diff(build_lattice_generator(c), ptdyn::fock::build_gsw(p)), 1e-15);
}

TEST(SiteExcitation, UnitVector) {
  const auto v = site_excitation(5, 2);
  EXPECT_EQ(v.size(), 5U);
  EXPECT_EQ(v[2], Complex(1.0, 0.0));
  EXPECT_THROW(site_excitation(5, 5), ptdyn::DimensionError);
}

TEST(PropagateOracle, ZeroDistanceAndDecoupledPhases) {
  LatticeConfig c;
  c.lambda = 0.8;
  c.alpha1 = c.alpha2 = 0.0;
  c.n_sites = 6;
  ComplexVector psi(6, Complex(1.0, 0.0));
  const auto same = propagate_oracle(c, psi, 0.0);
  EXPECT_LT(max_diff(same, psi), 1e-16);
  const auto out = propagate_oracle(c, psi, 1.3);
  for (std::size_t n = 0; n < 6; ++n) {
    EXPECT_LT(std::abs(out[n] - std::polar(1.0, 0.8 * (n + 0.5) * 1.3)), 1e-14);
  }
}

TEST(PropagateRk4, MatchesOracleOnGlauberFockLattice) {
  const auto c = glauber_fock();
  const auto psi0 = site_excitation(c.n_sites, 0);
  const auto traj = propagate_rk4(c, psi0);
  ASSERT_EQ(traj.z_samples.size(), 2001U);
  EXPECT_EQ(traj.z_samples.front(), 0.0);
  EXPECT_DOUBLE_EQ(traj.z_samples.back(), 2.0);
  for (std::size_t s = 0; s < traj.z_samples.size(); s += 250) {
    const auto ref = propagate_oracle(c, psi0, traj.z_samples[s]);
    EXPECT_LT(max_diff(traj.amplitudes[s], ref), 1e-6) << traj.z_samples[s];
  }
}

TEST(PropagateRk4, ConservesNormForHermitianGenerator) {
  LatticeConfig c = glauber_fock(10.0);
  c.lambda = 0.3;
  c.beta = 0.1;
  c.dz = 2e-3;
  const auto traj = propagate_rk4(c, site_excitation(c.n_sites, 3));
  for (double n : traj.norms) EXPECT_NEAR(n, 1.0, 1e-8);
}

TEST(PropagateRk4, ZeroFieldStaysZero) {
  const auto c = glauber_fock(0.1);
  const ComplexVector zero(c.n_sites);
  const auto traj = propagate_rk4(c, zero);
  for (const auto& a : traj.amplitudes) {
    for (const auto& v : a) EXPECT_EQ(v, Complex(0.0, 0.0));
  }
}

TEST(PropagateRk4, BlowUpReportsLastStableDistance) {
  LatticeConfig c;
  c.alpha1 = 3.0;
  c.alpha2 = -3.0;
  c.n_sites = 20;
  c.z_max = 50.0;
  c.dz = 1e-2;
  try {
    propagate_rk4(c, site_excitation(c.n_sites, 0));
    FAIL() << "expected BlowUpError";
  } catch (const ptdyn::BlowUpError& e) {
    EXPECT_GT(e.last_stable_z(), 0.0);
    EXPECT_LT(e.last_stable_z(), 50.0);
  }
}

TEST(PropagateRk4, InvalidStateThrows) {
  const auto c = glauber_fock(0.1);
  const ComplexVector short_state(3);
  EXPECT_THROW(propagate_rk4(c, short_state), ptdyn::DimensionError);
  ComplexVector bad(c.n_sites);
  bad[0] = NAN;
  EXPECT_THROW(propagate_rk4(c, bad), ptdyn::DomainError);
}

}  // namespace
