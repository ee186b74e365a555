#include "ptdyn/spin.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptdyn/eigen.hpp"
#include "ptdyn/errors.hpp"
#include "ptdyn/expm.hpp"
#include "ptdyn/parallel.hpp"
#include "ptdyn/spectrum.hpp"

namespace ptdyn::spin {

namespace {

// Imaginary parts of a PT-unbroken spectrum below this fraction of ||H|| are
// roundoff and reported as zero.
constexpr double kRealSpectrumTol = 1e-9;

bool near_exceptional(double k, double gamma, double tol) {
  const double scale = std::max(std::abs(k), std::abs(gamma));
  return std::abs(std::abs(k) - std::abs(gamma)) <= tol * scale;
}

Complex hs_coefficient(const ComplexMatrix& h, const ComplexMatrix& basis) {
  // tr(H B) / tr(B B) for Hermitian B
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t l = 0; l < h.cols(); ++l) {
      num += h(i, l) * basis(l, i);
      den += std::norm(basis(l, i));
    }
  }
  return num / den;
}

}  // namespace

SpinQuantumNumber SpinQuantumNumber::from_twice(int twice_j) {
  if (twice_j <= 0) throw DomainError("spin: 2j must be a positive integer");
  return SpinQuantumNumber(twice_j);
}

SpinQuantumNumber SpinQuantumNumber::from_value(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!std::isfinite(j) || rounded < 1.0 || std::abs(twice - rounded) > 1e-12 ||
      rounded > 1e6) {
    throw DomainError("spin: j must be a positive half-integer, got " + std::to_string(j));
  }
  return SpinQuantumNumber(static_cast<int>(rounded));
}

void SpinParams::validate() const {
  if (!std::isfinite(epsilon) || !std::isfinite(gamma) || !std::isfinite(k)) {
    throw DomainError("spin: parameters must be finite");
  }
}

SpinParams from_pauli(double epsilon, double gamma, double k) {
  return SpinParams{SpinQuantumNumber::from_twice(1), epsilon, 2.0 * gamma, 2.0 * k};
}

SpinOperators build_spin_ops(SpinQuantumNumber j) {
  const std::size_t n = j.dimension();
  const double jv = j.value();
  ComplexMatrix jz(n, n), jplus(n, n);
  // basis index i <-> m = j - i
  for (std::size_t i = 0; i < n; ++i) {
    const double m = jv - static_cast<double>(i);
    jz(i, i) = m;
    if (i > 0) jplus(i - 1, i) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix jminus = jplus.adjoint();
  SpinOperators ops;
  ops.jx = 0.5 * (jplus + jminus);
  ops.jy = Complex(0.0, -0.5) * (jplus - jminus);
  ops.jz = std::move(jz);
  return ops;
}

SpinOperators build_spin_ops(double j) { return build_spin_ops(SpinQuantumNumber::from_value(j)); }

ComplexMatrix build_pt_hamiltonian(const SpinParams& p) {
  p.validate();
  const auto ops = build_spin_ops(p.j);
  ComplexMatrix h = Complex(0.0, p.gamma) * ops.jz + p.k * ops.jx;
  for (std::size_t i = 0; i < h.rows(); ++i) h(i, i) += p.epsilon;
  return h;
}

Regime regime_of(const SpinParams& p, double tol) {
  if (near_exceptional(p.k, p.gamma, tol)) return Regime::kExceptional;
  return std::abs(p.k) > std::abs(p.gamma) ? Regime::kUnbroken : Regime::kBroken;
}

Complex hermitian_angle(const SpinParams& p, double tol) {
  p.validate();
  if (near_exceptional(p.k, p.gamma, tol)) {
    throw ExceptionalPointError("hermitian_map: |k| = |gamma|, the similarity map does not exist");
  }
  const Complex ratio = (p.k + p.gamma) / (p.k - p.gamma);
  return 0.5 * std::log(ratio);
}

HermitianMap hermitian_map(const SpinParams& p, double tol) {
  const Complex theta0 = hermitian_angle(p, tol);
  const auto ops = build_spin_ops(p.j);
  HermitianMap out;
  out.theta0 = theta0;
  out.h0 = linalg::similarity_conjugate(build_pt_hamiltonian(p), ops.jy, theta0);
  out.jx_coefficient = hs_coefficient(out.h0, ops.jx);
  out.jz_coefficient_abs = std::abs(hs_coefficient(out.h0, ops.jz));
  return out;
}

ComplexMatrix inverse_map(const ComplexMatrix& h0, Complex theta0, SpinQuantumNumber j) {
  const auto ops = build_spin_ops(j);
  return linalg::similarity_conjugate(h0, ops.jy, -theta0);
}

std::vector<Complex> analytic_spectrum(const SpinParams& p) {
  p.validate();
  const Complex root = std::sqrt(Complex(p.k * p.k - p.gamma * p.gamma, 0.0));
  std::vector<Complex> out;
  out.reserve(p.j.dimension());
  for (int twice_l = -p.j.twice(); twice_l <= p.j.twice(); twice_l += 2) {
    out.push_back(p.epsilon + (twice_l / 2.0) * root);
  }
  return out;
}

SpectrumReport classify_region(const SpinParams& p, double tol) {
  if (!(tol > 0.0)) throw DomainError("classify_region: tolerance must be positive");
  const ComplexMatrix h = build_pt_hamiltonian(p);
  const auto eig = linalg::eig_general(h);

  SpectrumReport report;
  report.regime = regime_of(p, tol);
  report.defect = linalg::defect_analysis(h, eig.eigenvalues);
  report.eigenvalues = linalg::snap_to_clusters(report.defect);
  if (report.regime == Regime::kUnbroken) {
    const double cutoff = kRealSpectrumTol * std::max(1.0, h.norm_fro());
    for (auto& e : report.eigenvalues)
      if (std::abs(e.imag()) <= cutoff) e = e.real();
  }
  linalg::sort_spectrum(report.eigenvalues);
  report.analytic_eigenvalues = analytic_spectrum(p);
  if (report.regime != Regime::kExceptional) {
    report.theta0 = hermitian_angle(p, tol);
  } else {
    for (const auto& c : report.defect.clusters)
      report.exceptional_order = std::max(report.exceptional_order, c.algebraic);
  }
  report.max_deviation =
      linalg::multiset_distance(report.eigenvalues, report.analytic_eigenvalues);
  return report;
}

std::vector<SweepRow> sweep_spectrum(const SpinParams& tmpl, double k_min, double k_max,
                                     int n_points, Convention convention, unsigned threads,
                                     double tol) {
  tmpl.validate();
  if (!(k_min < k_max)) throw DomainError("sweep_spectrum: k_min must be below k_max");
  if (n_points < 2) throw DomainError("sweep_spectrum: need at least two points");
  if (convention == Convention::kPauli && tmpl.j.twice() != 1) {
    throw DomainError("sweep_spectrum: Pauli convention requires j = 1/2");
  }

  const std::size_t levels = tmpl.j.dimension();
  const auto count = static_cast<std::size_t>(n_points);
  std::vector<SweepRow> rows(count * levels);
  parallel_for(count, threads, [&](std::size_t i) {
    const double k =
        k_min + (static_cast<double>(i) * (k_max - k_min)) / static_cast<double>(count - 1);
    SpinParams p = tmpl;
    if (convention == Convention::kPauli) {
      p = from_pauli(tmpl.epsilon, tmpl.gamma, k);
    } else {
      p.k = k;
    }
    const auto report = classify_region(p, tol);
    for (std::size_t l = 0; l < levels; ++l) {
      rows[i * levels + l] = SweepRow{k, static_cast<int>(l), report.eigenvalues[l], report.regime};
    }
  });
  return rows;
}

}  // namespace ptdyn::spin
