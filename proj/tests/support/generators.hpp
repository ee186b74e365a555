#pragma once

// Hand-rolled generators for property tests. Doubles come from the top 53 bits
// of mt19937_64 so sequences are identical across standard libraries.

#include <cmath>
#include <cstdint>
#include <random>

#include "ptdyn/lattice.hpp"
#include "ptdyn/matrix.hpp"
#include "ptdyn/spin.hpp"
#include "ptdyn/swanson.hpp"

namespace ptdyn::testing {

inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

class Gen {
 public:
  explicit Gen(std::uint64_t seed = kDefaultSeed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double sign() { return (rng_() & 1U) != 0U ? 1.0 : -1.0; }
  linalg::Complex complex(double scale = 1.0) {
    return {uniform(-scale, scale), uniform(-scale, scale)};
  }

  linalg::ComplexMatrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0) {
    linalg::ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex(scale);
    return m;
  }

  linalg::ComplexMatrix hermitian(std::size_t n, double scale = 1.0) {
    const auto m = matrix(n, n, scale);
    return 0.5 * (m + m.adjoint());
  }

  linalg::ComplexVector vector(std::size_t n, double scale = 1.0) {
    linalg::ComplexVector v(n);
    for (auto& x : v) x = complex(scale);
    return v;
  }

  // |k|/|gamma| is drawn in [1 + margin, 3] for unbroken and [0, 1 - margin]
  // for broken parameters.
  spin::SpinParams spin_params(Regime regime, double margin = 0.1) {
    spin::SpinParams p;
    p.j = spin::SpinQuantumNumber::from_twice(integer(1, 4));
    p.epsilon = uniform(-3.0, 3.0);
    p.gamma = sign() * uniform(0.2, 2.0);
    double ratio = 1.0;
    if (regime == Regime::kUnbroken) ratio = uniform(1.0 + margin, 3.0);
    if (regime == Regime::kBroken) ratio = uniform(0.0, 1.0 - margin);
    p.k = sign() * ratio * std::abs(p.gamma);
    return p;
  }

  // Valid for the gauge chain with lambda^2 - 4 beta1 beta2 >= min_gap.
  fock::SwansonParams swanson_params(int n_trunc, double min_gap = 0.1) {
    fock::SwansonParams p;
    p.n_trunc = n_trunc;
    do {
      p.lambda = uniform(0.5, 3.0);
      const double s = sign();
      p.alpha1 = s * uniform(0.2, 2.0);
      p.alpha2 = s * uniform(0.2, 2.0);
      p.beta1 = uniform(-1.0, 1.0);
      p.beta2 = uniform(-1.0, 1.0);
    } while (p.lambda * p.lambda - 4.0 * p.beta1 * p.beta2 < min_gap);
    return p;
  }

  lattice::LatticeConfig hermitian_lattice(int n_sites, double z_max, double dz) {
    lattice::LatticeConfig c;
    c.lambda = uniform(-1.0, 1.0);
    c.alpha1 = uniform(0.2, 1.0);
    c.alpha2 = c.alpha1;
    c.beta = uniform(-0.3, 0.3);
    c.n_sites = n_sites;
    c.z_max = z_max;
    c.dz = dz;
    return c;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ptdyn::testing
