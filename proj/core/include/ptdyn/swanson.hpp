#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptdyn/fock.hpp"
#include "ptdyn/regime.hpp"

namespace ptdyn::fock {

inline constexpr double kDefaultRegimeTol = 1e-9;
// Below this value of lambda^2 - 4 beta1 beta2 the real spectrum is flagged
// as close to the exceptional point.
inline constexpr double kNearExceptionalGap = 1e-6;
inline constexpr int kDefaultTruncation = 128;

// H = lambda (n + 1/2) + alpha1 a_dag + alpha2 a + beta1 a_dag^2 + beta2 a^2.
struct SwansonParams {
  double lambda = 1.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  int n_trunc = kDefaultTruncation;

  void validate() const;
};

ComplexMatrix build_gsw(const SwansonParams& p);

// 4 beta1 (alpha1^2 beta2 - alpha2^2 beta1) / (alpha1^2 lambda^2).
double discriminant(const SwansonParams& p);

Regime regime_from_discriminant(double d, double tol = kDefaultRegimeTol);

// lambda * sqrt(1 - d), principal root.
Complex lambda_tilde(const SwansonParams& p);

// Closed-form coefficients of the three-step gauge chain and the squeeze.
struct ChainCoefficients {
  double gamma1 = 0.0;  // linear-gauge coefficient of a_dag
  double gamma2 = 0.0;  // linear-gauge coefficient of a
  double delta = 0.0;   // constant shift
  Complex zeta;         // quadratic gauge, "+" root
  Complex zeta_discarded;
  Complex lambda_tilde;
  Complex lambda_tilde_partner;  // complex conjugate
  double discriminant = 0.0;
  Regime regime = Regime::kUnbroken;
  double quadratic_coupling = 0.0;  // alpha2 beta1 / alpha1, multiplies a_dag^2 + a^2
  std::optional<double> squeeze_arg;    // 2 alpha2 beta1 / (alpha1 lambda_tilde)
  std::optional<double> squeeze_angle;  // -artanh(squeeze_arg)/2
};

ChainCoefficients chain_coefficients(const SwansonParams& p, double tol = kDefaultRegimeTol);

struct SwansonChain : ChainCoefficients {
  int n_trunc = 0;
  ComplexMatrix eta1, eta2, eta3;  // diagonal, linear and quadratic gauges
  ComplexMatrix squeeze;           // exp(angle (K+ - K-)), empty without a real angle
  ComplexMatrix h_gsw, h1, h2, h3, h3_diag;  // h3/h3_diag may be empty
  // Max entrywise deviation from the closed forms on the leading quarter block.
  double h2_residual = 0.0;
  double h3_residual = 0.0;
  double h3_diag_residual = 0.0;
  std::vector<std::string> notes;
};

SwansonChain transform_chain(const SwansonParams& p, double tol = kDefaultRegimeTol);

// sqrt(lambda^2 - 4 beta1 beta2)(n + 1/2) + delta for n < n_levels.
std::vector<double> gsw_spectrum(const SwansonParams& p, int n_levels);

// Message when lambda^2 - 4 beta1 beta2 is positive but tiny.
std::optional<std::string> spectrum_warning(const SwansonParams& p);

// Coefficients of H = nu1 p^2 + nu2 x^2 + i nu3 (xp + px) + i nu4 p + nu5 x.
struct NuForm {
  std::array<double, 5> nu{};
  double energy(int n) const;
};

NuForm nu_form(const SwansonParams& p, double mass = 1.0, double omega = 1.0);

// The same Hamiltonian assembled from quadrature matrices.
ComplexMatrix nu_hamiltonian(const NuForm& form, const FockOps& ops);

// exp(-i delta t) exp(-i t [g (a_dag^2 + a^2) + lambda_tilde (n + 1/2)]) psi0.
linalg::ComplexVector evolve_h3(const SwansonChain& chain, std::span<const Complex> psi0, double t);

// eta1^-1 eta2^-1 eta3^-1 S |n>, an eigenvector of H_gsw with energy E_n.
linalg::ComplexVector intertwined_eigenstate(const SwansonChain& chain, int n);

struct RegimeSweepRow {
  double discriminant = 0.0;
  Complex lambda_ratio;  // lambda_tilde / lambda
  Regime regime = Regime::kUnbroken;
};

// For each discriminant on a uniform grid, beta2 is solved with the other
// parameters held fixed and lambda_tilde/lambda recomputed.
std::vector<RegimeSweepRow> regime_sweep(const SwansonParams& base, double d_min, double d_max,
                                         int n_points, double tol = kDefaultRegimeTol);

}  // namespace ptdyn::fock
