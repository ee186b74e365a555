#include "ptdyn/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mp_banded.hpp"
#include "ptdyn/eigen.hpp"
#include "ptdyn/errors.hpp"
#include "ptdyn/fock.hpp"
#include "ptdyn/spectrum.hpp"

namespace ptdyn::scaling {

namespace {

using detail::BandedMp;
using detail::MpComplex;

constexpr mpfr_rnd_t kRound = MPFR_RNDN;
constexpr double kLog2Of10 = 3.321928094887362;
// Digits kept beyond the tail target so the double-precision result is clean.
constexpr double kGuardDigits = 16.0;
constexpr mpfr_prec_t kGuardBits = 64;
// Every generator used here couples Fock levels two apart.
constexpr int kGeneratorReach = 2;

enum class Generator { kDilation, kNegativeHalfMomentumSquared };

using OperatorBuilder = std::function<BandedMp(std::size_t, mpfr_prec_t)>;
using ScaleBuilder = std::function<MpComplex(mpfr_prec_t)>;

struct Step {
  double modulus = 0.0;  // |s|
  int order = 0;
  ScaleBuilder scale;
};

struct SeriesPlan {
  int block = 0;
  int width = 0;
  bool capped = false;
  mpfr_prec_t precision = 0;
};

// Smallest L whose dropped tail sum_{n>L} a^n/n! <= a^(L+1)/(L+1)! e^a meets the
// tail target, where a bounds the growth of ad_G on the operand.
int tail_order(double a) {
  if (!(a > 0.0)) return 0;
  const double log_target = std::log(kSeriesTailTolerance);
  for (int order = 0; order < 100000; ++order) {
    const double log_tail = (order + 1) * std::log(a) - std::lgamma(order + 2.0) + a;
    if (log_tail <= log_target) return order;
  }
  throw RangeError("adjoint series: growth rate too large for a finite order");
}

int block_size(int n_trunc, double fraction) {
  return std::max(1, static_cast<int>(std::floor(fraction * n_trunc)));
}

// Sizes the working truncation so the leading block stays exact through every
// commutator. The operand's own truncation edge reaches poly_degree/2 + 1 levels
// in; each commutator pulls it kGeneratorReach further. When n_trunc is too small
// the orders are cut and the check reports whatever error remains.
SeriesPlan plan_series(std::vector<Step>& steps, int n_trunc, double fraction, int poly_degree) {
  SeriesPlan plan;
  const int edge = poly_degree / 2 + 1;
  plan.block = std::min(block_size(n_trunc, fraction), n_trunc - edge);
  const int available = (n_trunc - plan.block - edge) / kGeneratorReach;
  auto total = [&] {
    int sum = 0;
    for (const auto& s : steps) sum += s.order;
    return sum;
  };
  while (total() > available) {
    plan.capped = true;
    auto largest = std::max_element(steps.begin(), steps.end(),
                                    [](const Step& a, const Step& b) { return a.order < b.order; });
    --largest->order;
  }
  plan.width = plan.block + edge + kGeneratorReach * total();

  // Rounding in the n-th commutator is amplified by up to (|s| rho)^n/n!, with
  // rho bounding ||ad_G|| on the working truncation.
  const double rho = 2.0 * plan.width;
  double digits = -std::log10(kSeriesTailTolerance) + kGuardDigits;
  for (const auto& s : steps) {
    double worst = 0.0;
    for (int n = 1; n <= s.order; ++n) {
      worst = std::max(worst, n * std::log10(s.modulus * rho) - std::lgamma(n + 1.0) / std::log(10.0));
    }
    digits += worst;
  }
  plan.precision = static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + kGuardBits;
  return plan;
}

BandedMp build_generator(Generator g, std::size_t n, mpfr_prec_t prec) {
  return g == Generator::kDilation ? detail::dilation_operator(n, prec)
                                   : detail::negative_half_momentum_squared(n, prec);
}

CheckDetail run_series(Generator generator, std::vector<Step> steps, int n_trunc, double fraction,
                       int poly_degree, const OperatorBuilder& operand,
                       const OperatorBuilder& reference) {
  const SeriesPlan plan = plan_series(steps, n_trunc, fraction, poly_degree);
  const auto w = static_cast<std::size_t>(plan.width);
  const BandedMp g = build_generator(generator, w, plan.precision);
  BandedMp value = operand(w, plan.precision);
  CheckDetail out;
  for (const auto& s : steps) {
    value = detail::adjoint_series(g, value, s.scale(plan.precision), s.order);
    out.series_order = std::max(out.series_order, s.order);
  }
  const BandedMp ref = reference(w, plan.precision);
  const auto dev = detail::compare_leading_block(value, ref, static_cast<std::size_t>(plan.block));
  out.max_err = dev.max_abs_diff / std::max(1.0, dev.max_reference);
  out.n_trunc = n_trunc;
  out.block = plan.block;
  out.order_capped = plan.capped;
  return out;
}

MpComplex mp_constant(std::complex<double> z, mpfr_prec_t prec) { return MpComplex(z, prec); }

// exp(i * theta) for real theta.
MpComplex mp_unit(mpfr_srcptr theta, mpfr_prec_t prec) {
  MpComplex out(prec);
  mpfr_set(out.im(), theta, kRound);
  out.exp();
  return out;
}

BandedMp identity(std::size_t n, mpfr_prec_t prec) {
  BandedMp id(n, 0, 0, prec);
  for (std::size_t i = 0; i < n; ++i) mpfr_set_ui(id.re(i, i), 1, kRound);
  return id;
}

BandedMp power_of_x(std::size_t n, int m, mpfr_prec_t prec) {
  if (m == 0) return identity(n, prec);
  const BandedMp x = detail::position_operator(n, prec);
  BandedMp out = detail::position_operator(n, prec);
  for (int i = 1; i < m; ++i) out = detail::multiply(out, x);
  return out;
}

BandedMp momentum_squared(std::size_t n, mpfr_prec_t prec) {
  const BandedMp p = detail::momentum_operator(n, prec);
  return detail::multiply(p, p);
}

struct Term {
  BandedMp op;
  MpComplex coeff;
};

BandedMp combine(std::size_t n, mpfr_prec_t prec, const std::vector<Term>& terms) {
  int lower = 0;
  int upper = 0;
  for (const auto& t : terms) {
    lower = std::max(lower, t.op.lower());
    upper = std::max(upper, t.op.upper());
  }
  BandedMp out = detail::zeros_like(n, lower, upper, prec);
  for (const auto& t : terms) detail::add_scaled(out, t.op, t.coeff);
  return out;
}

void check_fraction(double f, const char* where) {
  if (!(f > 0.0 && f < 1.0)) {
    throw DomainError(std::string(where) + ": interior_fraction must lie in (0, 1)");
  }
}

// pi * num / den in extended precision.
void set_pi_ratio(mpfr_ptr out, double num, double den) {
  mpfr_const_pi(out, kRound);
  mpfr_mul_d(out, out, num, kRound);
  mpfr_div_d(out, out, den, kRound);
}

ScaleBuilder fixed_scale(std::complex<double> s) {
  return [s](mpfr_prec_t prec) { return mp_constant(s, prec); };
}

CheckDetail scale_single(Complex r, int n_trunc, double fraction, bool momentum) {
  std::vector<Step> steps{{std::abs(r), tail_order(std::abs(r)), fixed_scale(r)}};
  // ad_D x = -i x and ad_D p = i p.
  const Complex exponent = momentum ? Complex(-r.imag(), r.real()) : Complex(r.imag(), -r.real());
  OperatorBuilder op = [momentum](std::size_t n, mpfr_prec_t prec) {
    return momentum ? detail::momentum_operator(n, prec) : detail::position_operator(n, prec);
  };
  OperatorBuilder ref = [momentum, exponent](std::size_t n, mpfr_prec_t prec) {
    MpComplex c(exponent, prec);
    c.exp();
    std::vector<Term> terms;
    terms.push_back({momentum ? detail::momentum_operator(n, prec) : detail::position_operator(n, prec),
                     std::move(c)});
    return combine(n, prec, terms);
  };
  return run_series(Generator::kDilation, std::move(steps), n_trunc, fraction, 1, op, ref);
}

void check_scale_args(Complex r, int n_trunc, double fraction, const char* where) {
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || std::abs(r) > kMaxScaleModulus) {
    throw DomainError(std::string(where) + ": |r| must be at most 2");
  }
  if (n_trunc < kMinScaleTruncation) {
    throw DomainError(std::string(where) + ": n_trunc must be at least " +
                      std::to_string(kMinScaleTruncation));
  }
  check_fraction(fraction, where);
}

}  // namespace

void DeformationParams::validate() const {
  if (!std::isfinite(eps_def) || eps_def < 0.0) {
    throw DomainError("DeformationParams: eps_def must be finite and nonnegative");
  }
  if (n_trunc < 1) throw DomainError("DeformationParams: n_trunc must be positive");
  check_fraction(interior_fraction, "DeformationParams");
}

WickParameters wick_parameters(const DeformationParams& d) {
  d.validate();
  const double turn = d.eps_def + 4.0 * d.k_int;
  WickParameters w;
  w.r = std::numbers::pi * turn / (2.0 * (d.eps_def + 4.0));
  w.phase = std::polar(1.0, std::numbers::pi * turn / (d.eps_def + 4.0));
  w.tau_factor = w.phase;
  return w;
}

ComplexMatrix scaling_generator(int n_trunc) {
  if (n_trunc < kMinGeneratorTruncation) {
    throw DomainError("scaling_generator: n_trunc must be at least " +
                      std::to_string(kMinGeneratorTruncation));
  }
  const auto n = static_cast<std::size_t>(n_trunc);
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double v = 0.5 * std::sqrt(static_cast<double>((i + 1) * (i + 2)));
    d(i + 2, i) = Complex(0.0, v);
    d(i, i + 2) = Complex(0.0, -v);
  }
  return d;
}

ScaleErrors scale_check(Complex r, int n_trunc, double interior_fraction) {
  check_scale_args(r, n_trunc, interior_fraction, "scale_check");
  ScaleErrors out;
  out.max_err_x = scale_single(r, n_trunc, interior_fraction, false).max_err;
  out.max_err_p = scale_single(r, n_trunc, interior_fraction, true).max_err;
  return out;
}

double round_trip_check(Complex r, int n_trunc, double interior_fraction) {
  check_scale_args(r, n_trunc, interior_fraction, "round_trip_check");
  double worst = 0.0;
  for (const bool momentum : {false, true}) {
    const int order = tail_order(std::abs(r));
    std::vector<Step> steps{{std::abs(r), order, fixed_scale(r)}, {std::abs(r), order, fixed_scale(-r)}};
    OperatorBuilder op = [momentum](std::size_t n, mpfr_prec_t prec) {
      return momentum ? detail::momentum_operator(n, prec) : detail::position_operator(n, prec);
    };
    worst = std::max(worst, run_series(Generator::kDilation, std::move(steps), n_trunc,
                                       interior_fraction, 1, op, op)
                                .max_err);
  }
  return worst;
}

CheckDetail deformed_equivalent_detail(const DeformationParams& d) {
  d.validate();
  if (std::floor(d.eps_def) != d.eps_def || std::fmod(d.eps_def, 2.0) != 0.0) {
    throw UnsupportedRepresentationError(
        "deformed_equivalent_check: (ix)^eps is polynomial only for even integer eps");
  }
  if (d.n_trunc < kMinDeformationTruncation) {
    throw DomainError("deformed_equivalent_check: n_trunc must be at least " +
                      std::to_string(kMinDeformationTruncation));
  }
  const int power = 2 + static_cast<int>(d.eps_def);
  const double fraction =
      power >= 4 ? std::min(d.interior_fraction, kHighPowerInteriorFraction) : d.interior_fraction;
  // (ix)^eps = (-1)^(eps/2) x^eps
  const double sign = (static_cast<int>(d.eps_def) / 2) % 2 == 0 ? 1.0 : -1.0;
  const double turn = d.eps_def + 4.0 * d.k_int;
  const double den = 2.0 * (d.eps_def + 4.0);
  const WickParameters w = wick_parameters(d);

  ScaleBuilder scale = [turn, den](mpfr_prec_t prec) {
    MpComplex s(prec);
    set_pi_ratio(s.re(), turn, den);
    return s;
  };
  // ad_D p^2 = 2i p^2 and ad_D x^m = -i m x^m.
  const double growth = std::abs(w.r) * std::max(2, power);
  std::vector<Step> steps{{std::abs(w.r), tail_order(growth), scale}};

  OperatorBuilder op = [power, sign](std::size_t n, mpfr_prec_t prec) {
    std::vector<Term> terms;
    terms.push_back({momentum_squared(n, prec), mp_constant(1.0, prec)});
    terms.push_back({power_of_x(n, power, prec), mp_constant(sign, prec)});
    return combine(n, prec, terms);
  };
  OperatorBuilder ref = [power, turn, den](std::size_t n, mpfr_prec_t prec) {
    detail::MpArray theta(1, prec);
    set_pi_ratio(theta[0], 2.0 * turn, den);  // 2r
    std::vector<Term> terms;
    terms.push_back({momentum_squared(n, prec), mp_unit(theta[0], prec)});
    terms.push_back({power_of_x(n, power, prec), mp_unit(theta[0], prec)});
    return combine(n, prec, terms);
  };
  return run_series(Generator::kDilation, std::move(steps), d.n_trunc, fraction, power, op, ref);
}

double deformed_equivalent_check(const DeformationParams& d) {
  return deformed_equivalent_detail(d).max_err;
}

CheckDetail general_deformation_detail(std::span<const double> coeffs, int n_trunc,
                                       double interior_fraction) {
  if (n_trunc < kMinDeformationTruncation) {
    throw DomainError("general_deformation_check: n_trunc must be at least " +
                      std::to_string(kMinDeformationTruncation));
  }
  check_fraction(interior_fraction, "general_deformation_check");
  int degree = 0;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (!std::isfinite(coeffs[m])) {
      throw DomainError("general_deformation_check: coefficients must be finite");
    }
    if (coeffs[m] != 0.0) degree = static_cast<int>(m);
  }
  const std::vector<double> c(coeffs.begin(), coeffs.begin() + (coeffs.empty() ? 0 : degree + 1));
  const double fraction =
      degree >= 4 ? std::min(interior_fraction, kHighPowerInteriorFraction) : interior_fraction;

  ScaleBuilder scale = [](mpfr_prec_t prec) {
    MpComplex s(prec);
    set_pi_ratio(s.re(), 1.0, 2.0);
    return s;
  };
  const double r = std::numbers::pi / 2.0;
  std::vector<Step> steps{{r, tail_order(r * std::max(2, degree)), scale}};

  OperatorBuilder op = [c](std::size_t n, mpfr_prec_t prec) {
    static constexpr Complex kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<Term> terms;
    terms.push_back({momentum_squared(n, prec), mp_constant(1.0, prec)});
    for (std::size_t m = 0; m < c.size(); ++m) {
      if (c[m] == 0.0) continue;
      terms.push_back({power_of_x(n, static_cast<int>(m), prec), mp_constant(c[m] * kPowersOfI[m % 4], prec)});
    }
    return combine(n, prec, terms);
  };
  OperatorBuilder ref = [c](std::size_t n, mpfr_prec_t prec) {
    std::vector<Term> terms;
    terms.push_back({momentum_squared(n, prec), mp_constant(-1.0, prec)});
    for (std::size_t m = 0; m < c.size(); ++m) {
      if (c[m] == 0.0) continue;
      terms.push_back({power_of_x(n, static_cast<int>(m), prec), mp_constant(c[m], prec)});
    }
    return combine(n, prec, terms);
  };
  return run_series(Generator::kDilation, std::move(steps), n_trunc, fraction, std::max(2, degree),
                    op, ref);
}

double general_deformation_check(std::span<const double> coeffs, int n_trunc,
                                 double interior_fraction) {
  return general_deformation_detail(coeffs, n_trunc, interior_fraction).max_err;
}

double coherent_map_check(double lambda_amp, int n_trunc, double interior_fraction) {
  if (!std::isfinite(lambda_amp)) throw DomainError("coherent_map_check: lambda must be finite");
  if (n_trunc < kMinScaleTruncation) {
    throw DomainError("coherent_map_check: n_trunc must be at least " +
                      std::to_string(kMinScaleTruncation));
  }
  check_fraction(interior_fraction, "coherent_map_check");
  // ad_G x = i p and ad_G p = 0 for G = -p^2/2, so the series stops after the
  // second commutator; the third is summed as a zero check.
  constexpr int kNilpotentOrder = 3;
  std::vector<Step> steps{{1.0, kNilpotentOrder, fixed_scale(1.0)}};
  OperatorBuilder op = [lambda_amp](std::size_t n, mpfr_prec_t prec) {
    MpComplex c(prec);
    mpfr_sqrt_ui(c.re(), 2, kRound);
    mpfr_d_div(c.re(), lambda_amp, c.re(), kRound);
    std::vector<Term> terms;
    terms.push_back({detail::position_operator(n, prec), std::move(c)});
    return combine(n, prec, terms);
  };
  OperatorBuilder ref = [lambda_amp](std::size_t n, mpfr_prec_t prec) {
    std::vector<Term> terms;
    terms.push_back({detail::ladder_lowering(n, prec), mp_constant(lambda_amp, prec)});
    return combine(n, prec, terms);
  };
  return run_series(Generator::kNegativeHalfMomentumSquared, std::move(steps), n_trunc,
                    interior_fraction, 1, op, ref)
      .max_err;
}

double coherent_spectrum_check(double lambda_amp, int n_trunc) {
  if (!std::isfinite(lambda_amp)) {
    throw DomainError("coherent_spectrum_check: lambda must be finite");
  }
  if (n_trunc < fock::kMinTruncation || n_trunc > kMaxCoherentSpectrumTruncation) {
    throw DomainError("coherent_spectrum_check: n_trunc must lie in [" +
                      std::to_string(fock::kMinTruncation) + ", " +
                      std::to_string(kMaxCoherentSpectrumTruncation) + "]");
  }
  const auto ops = fock::build_fock_ops(n_trunc);
  const auto n = static_cast<std::size_t>(n_trunc);
  const auto split = linalg::hermitian_eig(ops.p_op * ops.p_op);
  std::vector<Complex> down(n);
  std::vector<Complex> up(n);
  for (std::size_t i = 0; i < n; ++i) {
    down[i] = std::exp(-0.5 * split.values[i]);
    up[i] = std::exp(0.5 * split.values[i]);
  }
  const ComplexMatrix& u = split.vectors;
  const ComplexMatrix t = u * ComplexMatrix::diagonal(down) * u.adjoint();
  const ComplexMatrix t_inv = u * ComplexMatrix::diagonal(up) * u.adjoint();
  const ComplexMatrix h = (lambda_amp / std::numbers::sqrt2) * ops.x_op;
  const auto before = linalg::eig_general(h);
  const auto after = linalg::eig_general(t * h * t_inv);
  return linalg::multiset_distance(before.eigenvalues, after.eigenvalues);
}

}  // namespace ptdyn::scaling
