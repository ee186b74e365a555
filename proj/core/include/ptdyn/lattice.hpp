#pragma once

#include <span>
#include <vector>

#include "ptdyn/matrix.hpp"

namespace ptdyn::lattice {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

inline constexpr int kMinSites = 4;
// Squared norm above which an integration is declared unstable.
inline constexpr double kBlowUpNormSq = 1e12;

// Waveguide array with index ramp lambda (n + 1/2), nearest-neighbour hoppings
// alpha1 (from site n-1) and alpha2 (from site n+1) and next-nearest hopping beta.
struct LatticeConfig {
  double lambda = 0.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double beta = 0.0;
  int n_sites = 40;
  double z_max = 10.0;
  double dz = 1e-3;

  void validate() const;
  // Number of equal steps of size at most dz that end exactly on z_max.
  int step_count() const;
};

struct LatticeTrajectory {
  std::vector<double> z_samples;
  std::vector<ComplexVector> amplitudes;
  std::vector<double> norms;  // squared norm per sample
};

// M with i dPsi/dZ = -M Psi; couplings to sites >= n_sites are dropped.
ComplexMatrix build_lattice_generator(const LatticeConfig& c);

// Unit excitation of a single site.
ComplexVector site_excitation(int n_sites, int site);

// Classical fixed-step RK4 on dPsi/dZ = i M Psi, sampled at every step
// including Z = 0. Throws BlowUpError once the squared norm exceeds
// kBlowUpNormSq or stops being finite.
LatticeTrajectory propagate_rk4(const LatticeConfig& c, std::span<const Complex> psi0);

// expm(i M z) psi0.
ComplexVector propagate_oracle(const LatticeConfig& c, std::span<const Complex> psi0, double z);

}  // namespace ptdyn::lattice
