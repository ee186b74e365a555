#include "ptdyn/swanson.hpp"

#include <cmath>
#include <string>

#include "ptdyn/errors.hpp"
#include "ptdyn/expm.hpp"

namespace ptdyn::fock {

namespace {

ComplexMatrix number_plus_half(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = static_cast<double>(i) + 0.5;
  return m;
}

void add_identity(ComplexMatrix& m, Complex s) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += s;
}

double leading_block_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t q = a.rows() / 4;
  return linalg::max_abs_diff(a.block(0, 0, q, q), b.block(0, 0, q, q));
}

// (sqrt(lambda^2 - 4 beta1 beta2), checked)
double spectral_gap(const SwansonParams& p) {
  const double gap2 = p.lambda * p.lambda - 4.0 * p.beta1 * p.beta2;
  if (!(gap2 > 0.0)) {
    throw NonRealSpectrumError("lambda^2 - 4 beta1 beta2 must be positive for a real spectrum");
  }
  return std::sqrt(gap2);
}

double closed_form_delta(const SwansonParams& p, double denom) {
  return (p.alpha1 * p.alpha1 * p.beta2 + p.alpha2 * p.alpha2 * p.beta1 -
          p.lambda * p.alpha1 * p.alpha2) /
         denom;
}

}  // namespace

void SwansonParams::validate() const {
  for (double v : {lambda, alpha1, alpha2, beta1, beta2}) {
    if (!std::isfinite(v)) throw DomainError("SwansonParams: parameters must be finite");
  }
  if (n_trunc < kMinTruncation) {
    throw DomainError("SwansonParams: n_trunc must be at least " + std::to_string(kMinTruncation));
  }
}

ComplexMatrix build_gsw(const SwansonParams& p) {
  p.validate();
  const auto n = static_cast<std::size_t>(p.n_trunc);
  const ComplexMatrix a = annihilation(n);
  const ComplexMatrix ad = a.transpose();
  ComplexMatrix h = p.lambda * number_plus_half(n);
  h += p.alpha1 * ad;
  h += p.alpha2 * a;
  h += p.beta1 * (ad * ad);
  h += p.beta2 * (a * a);
  return h;
}

double discriminant(const SwansonParams& p) {
  if (p.alpha1 == 0.0 || p.lambda == 0.0) {
    throw SingularParameterError("discriminant: requires alpha1 != 0 and lambda != 0");
  }
  return 4.0 * p.beta1 * (p.alpha1 * p.alpha1 * p.beta2 - p.alpha2 * p.alpha2 * p.beta1) /
         (p.alpha1 * p.alpha1 * p.lambda * p.lambda);
}

Regime regime_from_discriminant(double d, double tol) {
  if (std::abs(d - 1.0) <= tol) return Regime::kExceptional;
  return d < 1.0 ? Regime::kUnbroken : Regime::kBroken;
}

Complex lambda_tilde(const SwansonParams& p) {
  return p.lambda * std::sqrt(Complex(1.0 - discriminant(p), 0.0));
}

ChainCoefficients chain_coefficients(const SwansonParams& p, double tol) {
  p.validate();
  if (p.alpha1 == 0.0 || p.alpha2 == 0.0 || !(p.alpha1 * p.alpha2 > 0.0)) {
    throw DomainError("transform_chain: requires alpha1 * alpha2 > 0");
  }
  if (p.lambda == 0.0) throw SingularParameterError("transform_chain: lambda must be nonzero");
  const double denom = p.lambda * p.lambda - 4.0 * p.beta1 * p.beta2;
  const double denom_scale = std::max(p.lambda * p.lambda, std::abs(4.0 * p.beta1 * p.beta2));
  if (std::abs(denom) <= 1e-14 * denom_scale) {
    throw SingularParameterError("transform_chain: lambda^2 = 4 beta1 beta2, gauge undefined");
  }
  if (p.beta1 == 0.0) {
    throw ChainStepError("transform_chain: beta1 = 0, skip the quadratic gauge step");
  }

  ChainCoefficients c;
  // sqrt(alpha2/alpha1) equals alpha2/sqrt(alpha1 alpha2) for positive alphas
  // and keeps the right sign when both are negative.
  const double ratio = std::sqrt(p.alpha2 / p.alpha1);
  c.gamma1 = ratio * (p.alpha1 * p.lambda - 2.0 * p.alpha2 * p.beta1) / denom;
  c.gamma2 = (1.0 / ratio) * (p.alpha2 * p.lambda - 2.0 * p.alpha1 * p.beta2) / denom;
  c.delta = closed_form_delta(p, denom);
  c.discriminant = discriminant(p);
  c.regime = regime_from_discriminant(c.discriminant, tol);
  c.lambda_tilde = lambda_tilde(p);
  c.lambda_tilde_partner = std::conj(c.lambda_tilde);
  c.quadratic_coupling = p.alpha2 * p.beta1 / p.alpha1;
  // lambda_tilde = lambda + 4 g zeta fixes the root
  c.zeta = (c.lambda_tilde - p.lambda) / (4.0 * c.quadratic_coupling);
  c.zeta_discarded = (-c.lambda_tilde - p.lambda) / (4.0 * c.quadratic_coupling);
  if (c.regime == Regime::kUnbroken) {
    const double arg = 2.0 * c.quadratic_coupling / c.lambda_tilde.real();
    c.squeeze_arg = arg;
    if (std::abs(arg) < 1.0) c.squeeze_angle = -0.5 * std::atanh(arg);
  }
  return c;
}

SwansonChain transform_chain(const SwansonParams& p, double tol) {
  SwansonChain chain;
  static_cast<ChainCoefficients&>(chain) = chain_coefficients(p, tol);
  chain.n_trunc = p.n_trunc;
  const auto n = static_cast<std::size_t>(p.n_trunc);
  const auto ops = build_fock_ops(p.n_trunc);
  const ComplexMatrix nh = number_plus_half(n);
  const ComplexMatrix ad2 = ops.a_dag * ops.a_dag;
  const ComplexMatrix a2 = ops.a * ops.a;

  chain.h_gsw = build_gsw(p);

  const double log_ratio = 0.5 * std::log(p.alpha2 / p.alpha1);
  chain.eta1 = ComplexMatrix(n, n);
  ComplexMatrix eta1_inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    chain.eta1(i, i) = std::exp(log_ratio * static_cast<double>(i));
    eta1_inv(i, i) = std::exp(-log_ratio * static_cast<double>(i));
  }
  chain.h1 = chain.eta1 * chain.h_gsw * eta1_inv;

  const ComplexMatrix linear_gen = chain.gamma1 * ops.a_dag - chain.gamma2 * ops.a;
  chain.eta2 = linalg::expm(linear_gen);
  chain.h2 = chain.eta2 * chain.h1 * linalg::expm(-linear_gen);

  ComplexMatrix h2_expected = p.lambda * nh + chain.quadratic_coupling * ad2 +
                              (p.alpha1 * p.beta2 / p.alpha2) * a2;
  add_identity(h2_expected, chain.delta);
  chain.h2_residual = leading_block_deviation(chain.h2, h2_expected);

  try {
    const ComplexMatrix quad_gen = chain.zeta * a2;
    chain.eta3 = linalg::expm(quad_gen);
    chain.h3 = chain.eta3 * chain.h2 * linalg::expm(-quad_gen);
  } catch (const RangeError&) {
    chain.notes.emplace_back("quadratic gauge overflows at this truncation; H3 not formed");
  }
  if (!chain.h3.empty()) {
    ComplexMatrix h3_expected = chain.lambda_tilde * nh + chain.quadratic_coupling * (ad2 + a2);
    add_identity(h3_expected, chain.delta);
    chain.h3_residual = leading_block_deviation(chain.h3, h3_expected);
  }

  if (chain.squeeze_angle && !chain.h3.empty()) {
    const ComplexMatrix squeeze_gen = *chain.squeeze_angle * (ops.k_plus - ops.k_minus);
    chain.squeeze = linalg::expm(squeeze_gen);
    chain.h3_diag = linalg::expm(-squeeze_gen) * chain.h3 * chain.squeeze;
    const double sign = chain.lambda_tilde.real() > 0.0 ? 1.0 : -1.0;
    ComplexMatrix diag_expected = (sign * spectral_gap(p)) * nh;
    add_identity(diag_expected, chain.delta);
    chain.h3_diag_residual = leading_block_deviation(chain.h3_diag, diag_expected);
  } else if (chain.regime == Regime::kUnbroken) {
    chain.notes.emplace_back("squeeze argument outside (-1, 1); H3 not diagonalized");
  }
  return chain;
}

std::vector<double> gsw_spectrum(const SwansonParams& p, int n_levels) {
  p.validate();
  if (n_levels < 0 || n_levels > p.n_trunc / 4) {
    throw DomainError("gsw_spectrum: n_levels must lie in [0, n_trunc/4]");
  }
  if (!(p.lambda > 0.0)) throw DomainError("gsw_spectrum: lambda must be positive");
  const double gap = spectral_gap(p);
  const double delta = closed_form_delta(p, gap * gap);
  std::vector<double> out(static_cast<std::size_t>(n_levels));
  for (int k = 0; k < n_levels; ++k) out[static_cast<std::size_t>(k)] = gap * (k + 0.5) + delta;
  return out;
}

std::optional<std::string> spectrum_warning(const SwansonParams& p) {
  const double gap2 = p.lambda * p.lambda - 4.0 * p.beta1 * p.beta2;
  if (gap2 > 0.0 && gap2 < kNearExceptionalGap) {
    return "lambda^2 - 4 beta1 beta2 = " + std::to_string(gap2) +
           " is close to zero; spectrum is near the exceptional point";
  }
  return std::nullopt;
}

double NuForm::energy(int n) const {
  const auto& [n1, n2, n3, n4, n5] = nu;
  const double det = n1 * n2 + n3 * n3;
  if (!(det > 0.0)) throw NonRealSpectrumError("nu_form: nu1 nu2 + nu3^2 must be positive");
  return std::sqrt(det) * (2.0 * n + 1.0) + (n4 * n4 * n2 - n5 * n5 * n1 - 2.0 * n3 * n4 * n5) /
                                                (4.0 * det);
}

NuForm nu_form(const SwansonParams& p, double mass, double omega) {
  p.validate();
  if (!(mass > 0.0) || !(omega > 0.0)) throw DomainError("nu_form: mass and omega must be positive");
  const double mw = mass * omega;
  NuForm f;
  f.nu = {(p.lambda - p.beta1 - p.beta2) / (2.0 * mw), 0.5 * mw * (p.lambda + p.beta1 + p.beta2),
          0.5 * (p.beta2 - p.beta1), (p.alpha2 - p.alpha1) / std::sqrt(2.0 * mw),
          std::sqrt(0.5 * mw) * (p.alpha1 + p.alpha2)};
  const double det = f.nu[0] * f.nu[1] + f.nu[2] * f.nu[2];
  if (!(det > 0.0)) throw NonRealSpectrumError("nu_form: nu1 nu2 + nu3^2 must be positive");
  return f;
}

ComplexMatrix nu_hamiltonian(const NuForm& form, const FockOps& ops) {
  const auto& x = ops.x_op;
  const auto& pm = ops.p_op;
  ComplexMatrix h = form.nu[0] * (pm * pm) + form.nu[1] * (x * x);
  h += Complex(0.0, form.nu[2]) * (x * pm + pm * x);
  h += Complex(0.0, form.nu[3]) * pm;
  h += form.nu[4] * x;
  return h;
}

linalg::ComplexVector evolve_h3(const SwansonChain& chain, std::span<const Complex> psi0,
                                double t) {
  const auto n = static_cast<std::size_t>(chain.n_trunc);
  if (psi0.size() != n) throw DimensionError("evolve_h3: state dimension must equal n_trunc");
  if (t == 0.0) return {psi0.begin(), psi0.end()};
  const ComplexMatrix a = annihilation(n);
  const ComplexMatrix ad = a.transpose();
  const ComplexMatrix generator =
      chain.quadratic_coupling * (ad * ad + a * a) + chain.lambda_tilde * number_plus_half(n);
  auto psi = linalg::expm(Complex(0.0, -t) * generator) * psi0;
  const Complex phase = std::exp(Complex(0.0, -chain.delta * t));
  for (auto& z : psi) z *= phase;
  return psi;
}

linalg::ComplexVector intertwined_eigenstate(const SwansonChain& chain, int n) {
  if (chain.regime != Regime::kUnbroken || chain.squeeze.empty() || chain.eta3.empty()) {
    throw DomainError("intertwined_eigenstate: requires an unbroken, diagonalized chain");
  }
  if (n < 0 || n > chain.n_trunc / 4) {
    throw DomainError("intertwined_eigenstate: n must lie in [0, n_trunc/4]");
  }
  const auto dim = static_cast<std::size_t>(chain.n_trunc);
  const ComplexMatrix a = annihilation(dim);
  const ComplexMatrix ad = a.transpose();
  linalg::ComplexVector v = chain.squeeze.column(static_cast<std::size_t>(n));
  v = linalg::expm(-chain.zeta * (a * a)) * v;
  v = linalg::expm(-(chain.gamma1 * ad - chain.gamma2 * a)) * v;
  for (std::size_t i = 0; i < dim; ++i) v[i] /= chain.eta1(i, i);
  return v;
}

std::vector<RegimeSweepRow> regime_sweep(const SwansonParams& base, double d_min, double d_max,
                                         int n_points, double tol) {
  base.validate();
  if (!(d_min < d_max) || n_points < 2) {
    throw DomainError("regime_sweep: need d_min < d_max and at least two points");
  }
  if (base.alpha1 == 0.0 || base.beta1 == 0.0 || base.lambda == 0.0) {
    throw SingularParameterError("regime_sweep: requires alpha1, beta1, lambda nonzero");
  }
  std::vector<RegimeSweepRow> rows;
  rows.reserve(static_cast<std::size_t>(n_points));
  const double a1sq = base.alpha1 * base.alpha1;
  for (int i = 0; i < n_points; ++i) {
    const double d = d_min + (i * (d_max - d_min)) / (n_points - 1);
    SwansonParams p = base;
    p.beta2 = (d * a1sq * p.lambda * p.lambda / (4.0 * p.beta1) + p.alpha2 * p.alpha2 * p.beta1) /
              a1sq;
    const double achieved = discriminant(p);
    rows.push_back({d, std::sqrt(Complex(1.0 - achieved, 0.0)),
                    regime_from_discriminant(achieved, tol)});
  }
  return rows;
}

}  // namespace ptdyn::fock
