#pragma once

#include <span>

#include "ptdyn/matrix.hpp"

namespace ptdyn::scaling {

using linalg::Complex;
using linalg::ComplexMatrix;

inline constexpr double kDefaultInteriorFraction = 0.5;
// Used once the compared operator contains x^4 or higher powers.
inline constexpr double kHighPowerInteriorFraction = 0.25;
inline constexpr int kMinGeneratorTruncation = 16;
inline constexpr int kMinScaleTruncation = 64;
inline constexpr int kMinDeformationTruncation = 128;
inline constexpr double kMaxScaleModulus = 2.0;
// Largest size for the double-precision similarity T H T^-1; T's condition
// number grows like exp(n).
inline constexpr int kMaxCoherentSpectrumTruncation = 12;
// Target bound on the dropped tail of each adjoint-action series.
inline constexpr double kSeriesTailTolerance = 1e-24;

// eps_def is the deformation exponent in p^2 + x^2 (ix)^eps, k_int the branch
// integer selecting the rotation.
struct DeformationParams {
  double eps_def = 0.0;
  int k_int = 0;
  int n_trunc = 256;
  double interior_fraction = kDefaultInteriorFraction;

  void validate() const;
};

struct WickParameters {
  double r = 0.0;
  Complex phase{1.0, 0.0};       // exp(2ir)
  Complex tau_factor{1.0, 0.0};  // tau = t * tau_factor
};

WickParameters wick_parameters(const DeformationParams& d);

// D = (xp + px)/2 = (i/2)(a_dag^2 - a^2) on the truncated Fock basis.
ComplexMatrix scaling_generator(int n_trunc);

struct ScaleErrors {
  double max_err_x = 0.0;
  double max_err_p = 0.0;
};

// Diagnostics shared by the series-based checks.
struct CheckDetail {
  double max_err = 0.0;
  int n_trunc = 0;
  int block = 0;         // size of the compared leading block
  int series_order = 0;  // highest commutator order summed
  bool order_capped = false;  // truncation too small for the tail target
};

// Errors are max |S X S^-1 - reference| over the leading
// floor(interior_fraction * n_trunc) block, relative to max(1, max |reference|).
// S X S^-1 is summed as sum_n r^n/n! ad_D^n(X) in extended precision on exactly
// truncated operators, so the only error left is the dropped series tail and
// whatever the truncation edge reaches inside the block.
ScaleErrors scale_check(Complex r, int n_trunc, double interior_fraction = kDefaultInteriorFraction);

// Applies S_r then S_-r to x and p; returns the larger deviation from the start.
double round_trip_check(Complex r, int n_trunc, double interior_fraction = kDefaultInteriorFraction);

// p^2 + x^2 (ix)^eps mapped by S_r to phase * (p^2 + x^(2+eps)). Only even
// integer eps is representable; interior fraction is capped at
// kHighPowerInteriorFraction when eps > 0.
double deformed_equivalent_check(const DeformationParams& d);
CheckDetail deformed_equivalent_detail(const DeformationParams& d);

// p^2 + V(ix) mapped by S_{pi/2} to -p^2 + V(x); coeffs[m] multiplies x^m.
double general_deformation_check(std::span<const double> coeffs, int n_trunc,
                                 double interior_fraction = kDefaultInteriorFraction);
CheckDetail general_deformation_detail(std::span<const double> coeffs, int n_trunc,
                                       double interior_fraction = kDefaultInteriorFraction);

// T (lambda/sqrt2) x T^-1 against lambda a with T = exp(-p^2/2).
double coherent_map_check(double lambda_amp, int n_trunc,
                          double interior_fraction = kDefaultInteriorFraction);

// Spectra of H = (lambda/sqrt2) x and T H T^-1 computed independently in double
// precision, T = U exp(-L/2) U^H from the Hermitian split p^2 = U L U^H.
// Returns the multiset distance between the two spectra.
double coherent_spectrum_check(double lambda_amp, int n_trunc);

}  // namespace ptdyn::scaling
