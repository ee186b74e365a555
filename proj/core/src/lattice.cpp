#include "ptdyn/lattice.hpp"

#include <cmath>
#include <string>

#include "ptdyn/errors.hpp"
#include "ptdyn/expm.hpp"

namespace ptdyn::lattice {

namespace {

// Band reach of the generator.
constexpr std::size_t kReach = 2;
// Slack when z_max is an integer multiple of dz up to rounding.
constexpr double kStepSlack = 1e-9;

void check_state(const LatticeConfig& c, std::span<const Complex> psi0, const char* where) {
  c.validate();
  if (psi0.size() != static_cast<std::size_t>(c.n_sites)) {
    throw DimensionError(std::string(where) + ": initial state must have n_sites entries");
  }
  for (const Complex& v : psi0) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError(std::string(where) + ": initial state must be finite");
    }
  }
}

double norm_sq(const ComplexVector& v) {
  double s = 0.0;
  for (const Complex& x : v) s += std::norm(x);
  return s;
}

// out = i M v using the five nonzero diagonals.
void apply_generator(const ComplexMatrix& m, const ComplexVector& v, ComplexVector& out) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= kReach ? i - kReach : 0;
    const std::size_t hi = std::min(n - 1, i + kReach);
    Complex acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += m(i, j) * v[j];
    out[i] = Complex(-acc.imag(), acc.real());
  }
}

}  // namespace

void LatticeConfig::validate() const {
  for (double v : {lambda, alpha1, alpha2, beta, z_max, dz}) {
    if (!std::isfinite(v)) throw DomainError("LatticeConfig: parameters must be finite");
  }
  if (n_sites < kMinSites) {
    throw DomainError("LatticeConfig: n_sites must be at least " + std::to_string(kMinSites));
  }
  if (!(dz > 0.0)) throw DomainError("LatticeConfig: dz must be positive");
  if (!(z_max >= dz)) throw DomainError("LatticeConfig: z_max must be at least dz");
}

int LatticeConfig::step_count() const {
  validate();
  const double ratio = z_max / dz;
  if (ratio > 1e9) throw DomainError("LatticeConfig: z_max / dz exceeds 1e9 steps");
  return static_cast<int>(std::ceil(ratio - kStepSlack * ratio));
}

ComplexMatrix build_lattice_generator(const LatticeConfig& c) {
  c.validate();
  const auto n = static_cast<std::size_t>(c.n_sites);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<double>(i);
    m(i, i) = c.lambda * (x + 0.5);
    if (i >= 1) m(i, i - 1) = c.alpha1 * std::sqrt(x);
    if (i + 1 < n) m(i, i + 1) = c.alpha2 * std::sqrt(x + 1.0);
    if (i >= 2) m(i, i - 2) = c.beta * std::sqrt(x * (x - 1.0));
    if (i + 2 < n) m(i, i + 2) = c.beta * std::sqrt((x + 1.0) * (x + 2.0));
  }
  return m;
}

ComplexVector site_excitation(int n_sites, int site) {
  if (n_sites < 1 || site < 0 || site >= n_sites) {
    throw DimensionError("site_excitation: site must lie in [0, n_sites)");
  }
  ComplexVector v(static_cast<std::size_t>(n_sites));
  v[static_cast<std::size_t>(site)] = 1.0;
  return v;
}

LatticeTrajectory propagate_rk4(const LatticeConfig& c, std::span<const Complex> psi0) {
  check_state(c, psi0, "propagate_rk4");
  const ComplexMatrix m = build_lattice_generator(c);
  const int steps = c.step_count();
  const double h = c.z_max / steps;
  const std::size_t n = psi0.size();

  LatticeTrajectory traj;
  traj.z_samples.reserve(static_cast<std::size_t>(steps) + 1);
  traj.amplitudes.reserve(static_cast<std::size_t>(steps) + 1);
  traj.norms.reserve(static_cast<std::size_t>(steps) + 1);

  ComplexVector psi(psi0.begin(), psi0.end());
  ComplexVector k1(n), k2(n), k3(n), k4(n), stage(n);
  traj.z_samples.push_back(0.0);
  traj.amplitudes.push_back(psi);
  traj.norms.push_back(norm_sq(psi));

  for (int s = 1; s <= steps; ++s) {
    apply_generator(m, psi, k1);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + 0.5 * h * k1[i];
    apply_generator(m, stage, k2);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + 0.5 * h * k2[i];
    apply_generator(m, stage, k3);
    for (std::size_t i = 0; i < n; ++i) stage[i] = psi[i] + h * k3[i];
    apply_generator(m, stage, k4);
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const double z = s == steps ? c.z_max : s * h;
    const double ns = norm_sq(psi);
    if (!std::isfinite(ns) || ns > kBlowUpNormSq) {
      throw BlowUpError("propagate_rk4: squared norm exceeded 1e12 at Z = " + std::to_string(z),
                        traj.z_samples.back());
    }
    traj.z_samples.push_back(z);
    traj.amplitudes.push_back(psi);
    traj.norms.push_back(ns);
  }
  return traj;
}

ComplexVector propagate_oracle(const LatticeConfig& c, std::span<const Complex> psi0, double z) {
  check_state(c, psi0, "propagate_oracle");
  if (!std::isfinite(z)) throw DomainError("propagate_oracle: z must be finite");
  if (z == 0.0) return ComplexVector(psi0.begin(), psi0.end());
  const ComplexMatrix m = build_lattice_generator(c);
  return linalg::expm(Complex(0.0, z) * m) * psi0;
}

}  // namespace ptdyn::lattice
