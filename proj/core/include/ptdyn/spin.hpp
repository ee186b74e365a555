#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ptdyn/defect.hpp"
#include "ptdyn/matrix.hpp"
#include "ptdyn/regime.hpp"

namespace ptdyn::spin {

using linalg::Complex;
using linalg::ComplexMatrix;

// Relative tolerance on ||k| - |gamma|| / max(|k|, |gamma|) for the
// exceptional regime.
inline constexpr double kDefaultExceptionalTol = 1e-9;

// Spin quantum number j, stored as the positive integer 2j.
class SpinQuantumNumber {
 public:
  static SpinQuantumNumber from_twice(int twice_j);
  static SpinQuantumNumber from_value(double j);

  int twice() const noexcept { return twice_; }
  double value() const noexcept { return twice_ / 2.0; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(twice_) + 1; }

  friend bool operator==(SpinQuantumNumber, SpinQuantumNumber) = default;

 private:
  explicit SpinQuantumNumber(int twice) : twice_(twice) {}
  int twice_;
};

// H = epsilon*I + i*gamma*Jz + k*Jx in spin units.
struct SpinParams {
  SpinQuantumNumber j = SpinQuantumNumber::from_twice(1);
  double epsilon = 0.0;
  double gamma = 0.0;
  double k = 0.0;

  void validate() const;
};

// How k and gamma are read: spin units (J operators) or, for j = 1/2 only,
// Pauli units where H = epsilon + i*gamma*sigma_z + k*sigma_x.
enum class Convention { kSpin, kPauli };

// Two-level parameters given in Pauli units, converted with sigma = 2J.
SpinParams from_pauli(double epsilon, double gamma, double k);

struct SpinOperators {
  ComplexMatrix jx, jy, jz;
};

SpinOperators build_spin_ops(SpinQuantumNumber j);
SpinOperators build_spin_ops(double j);

ComplexMatrix build_pt_hamiltonian(const SpinParams& p);

Regime regime_of(const SpinParams& p, double tol = kDefaultExceptionalTol);

// Principal ln sqrt((k + gamma) / (k - gamma)); throws ExceptionalPointError
// at |k| = |gamma|.
Complex hermitian_angle(const SpinParams& p, double tol = kDefaultExceptionalTol);

struct HermitianMap {
  Complex theta0;
  ComplexMatrix h0;            // exp(theta0 Jy) H exp(-theta0 Jy)
  Complex jx_coefficient;      // Hilbert-Schmidt projection of H0 on Jx
  double jz_coefficient_abs;  // should vanish
};

HermitianMap hermitian_map(const SpinParams& p, double tol = kDefaultExceptionalTol);

// exp(-theta0 Jy) H0 exp(theta0 Jy).
ComplexMatrix inverse_map(const ComplexMatrix& h0, Complex theta0, SpinQuantumNumber j);

// epsilon + l*sqrt(k^2 - gamma^2) for l = -j..j, principal root.
std::vector<Complex> analytic_spectrum(const SpinParams& p);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;  // numeric, clusters snapped, canonical order
  std::vector<Complex> analytic_eigenvalues;
  Regime regime = Regime::kUnbroken;
  linalg::DefectReport defect;
  std::optional<Complex> theta0;  // empty in the exceptional regime
  int exceptional_order = 0;      // largest cluster size at an exceptional point
  double max_deviation = 0.0;     // numeric vs analytic multiset distance
};

SpectrumReport classify_region(const SpinParams& p, double tol = kDefaultExceptionalTol);

struct SweepRow {
  double k = 0.0;  // in the caller's convention
  int level_index = 0;
  Complex energy;
  Regime regime = Regime::kUnbroken;
};

// Uniform k grid k_min + i*(k_max - k_min)/(n_points - 1); one row per level
// in canonical eigenvalue order (tracks are not continued analytically).
// With Convention::kPauli the template's epsilon and gamma, like k, are read in
// Pauli units and converted per point with from_pauli.
std::vector<SweepRow> sweep_spectrum(const SpinParams& tmpl, double k_min, double k_max,
                                     int n_points, Convention convention = Convention::kSpin,
                                     unsigned threads = 1, double tol = kDefaultExceptionalTol);

}  // namespace ptdyn::spin
