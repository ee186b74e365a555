#include "ptdyn/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ptdyn/spectrum.hpp"

namespace ptdyn::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kGrowthLimit = 1e100;

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// G = [[c, s], [-conj(s), c]] with G * (a, b)^T = (r, 0)^T.
struct Givens {
  double c = 1.0;
  Complex s = 0.0;
};

Givens make_givens(Complex a, Complex b, Complex& r) {
  const double na = std::abs(a);
  const double nb = std::abs(b);
  if (nb == 0.0) {
    r = a;
    return {};
  }
  if (na == 0.0) {
    r = nb;
    return {0.0, std::conj(b) / nb};
  }
  const double rho = std::hypot(na, nb);
  const Complex phase = a / na;
  r = phase * rho;
  return {na / rho, phase * std::conj(b) / rho};
}

// Rows p, p+1 of columns [c0, c1) <- G * rows.
void rotate_rows(ComplexMatrix& m, std::size_t p, const Givens& g, std::size_t c0,
                 std::size_t c1) {
  for (std::size_t j = c0; j < c1; ++j) {
    const Complex x = m(p, j);
    const Complex y = m(p + 1, j);
    m(p, j) = g.c * x + g.s * y;
    m(p + 1, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// Columns p, p+1 of rows [r0, r1) <- columns * G^H.
void rotate_cols(ComplexMatrix& m, std::size_t p, const Givens& g, std::size_t r0,
                 std::size_t r1) {
  for (std::size_t i = r0; i < r1; ++i) {
    const Complex u = m(i, p);
    const Complex v = m(i, p + 1);
    m(i, p) = u * g.c + v * std::conj(g.s);
    m(i, p + 1) = -u * g.s + v * g.c;
  }
}

// In-place Householder reduction to upper Hessenberg form; q accumulates the
// transformations so that a_original = q * h * q^H.
void reduce_to_hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double below = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) below += std::norm(h(i, k));
    if (below == 0.0) continue;  // already reduced in this column

    const Complex x0 = h(k + 1, k);
    const double xnorm = std::sqrt(below + std::norm(x0));
    const Complex phase = x0 == Complex{} ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * xnorm;

    const std::size_t len = n - k - 1;
    v[0] = x0 - alpha;
    for (std::size_t i = 1; i < len; ++i) v[i] = h(k + 1 + i, k);
    double vv = 0.0;
    for (std::size_t i = 0; i < len; ++i) vv += std::norm(v[i]);
    const double beta = 2.0 / vv;

    for (std::size_t j = k; j < n; ++j) {
      Complex w = 0.0;
      for (std::size_t i = 0; i < len; ++i) w += std::conj(v[i]) * h(k + 1 + i, j);
      w *= beta;
      for (std::size_t i = 0; i < len; ++i) h(k + 1 + i, j) -= v[i] * w;
    }
    auto reflect_cols = [&](ComplexMatrix& m) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex w = 0.0;
        for (std::size_t l = 0; l < len; ++l) w += m(i, k + 1 + l) * v[l];
        w *= beta;
        for (std::size_t l = 0; l < len; ++l) m(i, k + 1 + l) -= w * std::conj(v[l]);
      }
    };
    reflect_cols(h);
    reflect_cols(q);

    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

Complex wilkinson_shift(const ComplexMatrix& t, std::size_t iu, int iter) {
  if (iter == 10 || iter == 20) {
    // exceptional shift to break cycles
    double s = std::abs(t(iu, iu - 1).real());
    if (iu >= 2) s += std::abs(t(iu - 1, iu - 2).real());
    return s;
  }
  Complex b00 = t(iu - 1, iu - 1), b01 = t(iu - 1, iu), b10 = t(iu, iu - 1), b11 = t(iu, iu);
  const double norm = std::abs(b00) + std::abs(b01) + std::abs(b10) + std::abs(b11);
  if (norm == 0.0) return 0.0;
  b00 /= norm;
  b01 /= norm;
  b10 /= norm;
  b11 /= norm;
  const Complex b = b01 * b10;
  const Complex c = b00 - b11;
  const Complex disc = std::sqrt(c * c + 4.0 * b);
  const Complex det = b00 * b11 - b;
  const Complex trace = b00 + b11;
  Complex e1 = (trace + disc) / 2.0;
  Complex e2 = (trace - disc) / 2.0;
  // recompute the smaller root from the product to avoid cancellation
  if (abs1(e1) > abs1(e2)) {
    e2 = det / e1;
  } else if (abs1(e2) != 0.0) {
    e1 = det / e2;
  }
  return norm * (abs1(e1 - b11) < abs1(e2 - b11) ? e1 : e2);
}

// Complex Schur form by implicit single-shift QR on a Hessenberg matrix.
// Returns false when the iteration cap is hit.
bool schur_from_hessenberg(ComplexMatrix& t, ComplexMatrix& q) {
  const std::size_t n = t.rows();
  if (n < 2) return true;
  const double fallback_scale = std::max(t.norm_fro(), std::numeric_limits<double>::min());
  auto negligible = [&](std::size_t i) {
    // subdiagonal entry (i+1, i)
    double tst = abs1(t(i, i)) + abs1(t(i + 1, i + 1));
    if (tst == 0.0) tst = fallback_scale;
    return abs1(t(i + 1, i)) <= kEps * tst;
  };

  const long max_iters = static_cast<long>(kQrIterationsPerEigenvalue) * static_cast<long>(n);
  std::size_t iu = n - 1;
  int iter = 0;
  long total = 0;
  while (true) {
    while (iu > 0) {
      if (!negligible(iu - 1)) break;
      t(iu, iu - 1) = 0.0;
      iter = 0;
      --iu;
    }
    if (iu == 0) return true;
    ++iter;
    if (++total > max_iters) return false;

    std::size_t il = iu - 1;
    while (il > 0) {
      if (negligible(il - 1)) {
        t(il, il - 1) = 0.0;
        break;
      }
      --il;
    }

    const Complex shift = wilkinson_shift(t, iu, iter);
    Complex r;
    Givens g = make_givens(t(il, il) - shift, t(il + 1, il), r);
    rotate_rows(t, il, g, il, n);
    rotate_cols(t, il, g, 0, std::min(il + 2, iu) + 1);
    rotate_cols(q, il, g, 0, n);

    for (std::size_t i = il + 1; i < iu; ++i) {
      g = make_givens(t(i, i - 1), t(i + 1, i - 1), r);
      t(i, i - 1) = r;
      t(i + 1, i - 1) = 0.0;
      rotate_rows(t, i, g, i, n);
      rotate_cols(t, i, g, 0, std::min(i + 2, iu) + 1);
      rotate_cols(q, i, g, 0, n);
    }
  }
}

// Eigenvectors of upper-triangular t (unit diagonal in the triangular basis).
ComplexMatrix triangular_eigenvectors(const ComplexMatrix& t) {
  const std::size_t n = t.rows();
  const double smin = std::max(kEps * t.norm_fro(), std::numeric_limits<double>::min());
  ComplexMatrix x(n, n);
  for (std::size_t k = n; k-- > 0;) {
    x(k, k) = 1.0;
    const Complex lambda = t(k, k);
    for (std::size_t i = k; i-- > 0;) {
      Complex s = -t(i, k);
      for (std::size_t m = i + 1; m < k; ++m) s -= t(i, m) * x(m, k);
      Complex denom = t(i, i) - lambda;
      if (std::abs(denom) < smin) denom = smin;  // coincident eigenvalues
      x(i, k) = s / denom;
      if (std::abs(x(i, k)) > kGrowthLimit) {
        for (std::size_t m = i; m <= k; ++m) x(m, k) /= kGrowthLimit;
      }
    }
  }
  return x;
}

void normalize_columns(ComplexMatrix& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    double scale = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) scale = std::max(scale, std::abs(v(i, j)));
    if (scale == 0.0) continue;
    double norm = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) norm += std::norm(v(i, j) / scale);
    norm = scale * std::sqrt(norm);
    // fix the phase: first component of (near-)maximal modulus is real positive
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      if (std::abs(v(i, j)) >= scale * (1.0 - 1e-12)) {
        pivot = i;
        break;
      }
    }
    const Complex phase = v(pivot, j) / std::abs(v(pivot, j));
    const Complex factor = std::conj(phase) / norm;
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) *= factor;
  }
}

double relative_residual(const ComplexMatrix& a, const ComplexMatrix& v,
                         const std::vector<Complex>& values) {
  const double norm = a.norm_fro();
  if (norm == 0.0) return 0.0;
  const ComplexMatrix av = a * v;
  double worst = 0.0;
  for (std::size_t j = 0; j < v.cols(); ++j) {
    double r = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) r += std::norm(av(i, j) - values[j] * v(i, j));
    worst = std::max(worst, std::sqrt(r));
  }
  return worst / norm;
}

}  // namespace

EigenDecomposition eig_general(const ComplexMatrix& a, double tol) {
  if (a.empty() || !a.is_square()) throw DimensionError("eig_general: matrix must be square");
  if (!(tol > 0.0)) throw DomainError("eig_general: tolerance must be positive");
  if (!a.all_finite()) throw DomainError("eig_general: non-finite entry");

  const std::size_t n = a.rows();
  ComplexMatrix t = a;
  ComplexMatrix q = ComplexMatrix::identity(n);
  reduce_to_hessenberg(t, q);
  const bool converged = schur_from_hessenberg(t, q);

  std::vector<Complex> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = t(i, i);

  EigenDecomposition out;
  if (!converged) {
    out.converged = false;
    const auto order = canonical_order(values);
    for (auto i : order) out.eigenvalues.push_back(values[i]);
    out.eigenvectors = q;
    throw ConvergenceError("eig_general: QR iteration did not converge", std::move(out));
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) t(i, j) = 0.0;
  ComplexMatrix v = q * triangular_eigenvectors(t);
  normalize_columns(v);

  const auto order = canonical_order(values);
  out.eigenvalues.reserve(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    out.eigenvalues.push_back(values[order[jj]]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, jj) = v(i, order[jj]);
  }
  out.max_residual = relative_residual(a, out.eigenvectors, out.eigenvalues);
  if (!(out.max_residual <= tol)) {
    out.converged = false;
    throw ConvergenceError("eig_general: residual " + std::to_string(out.max_residual) +
                               " exceeds tolerance",
                           std::move(out));
  }
  return out;
}

HermitianEigen hermitian_eig(const ComplexMatrix& a) {
  if (a.empty() || !a.is_square()) throw DimensionError("hermitian_eig: matrix must be square");
  const std::size_t n = a.rows();
  ComplexMatrix m = a + a.adjoint();
  m *= 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = m.norm_fro();

  for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    if (std::sqrt(off) <= kEps * kEps * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double mag = std::abs(apq);
        if (mag <= std::numeric_limits<double>::min()) continue;
        const Complex phase = apq / mag;
        const double app = m(p, p).real();
        const double aqq = m(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] in the (p, q) plane
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        auto update_cols = [&](ComplexMatrix& x) {
          for (std::size_t i = 0; i < n; ++i) {
            const Complex u = x(i, p);
            const Complex w = x(i, q);
            x(i, p) = u * c + w * jqp;
            x(i, q) = u * s + w * jqq;
          }
        };
        update_cols(m);
        update_cols(v);
        for (std::size_t j = 0; j < n; ++j) {
          const Complex u = m(p, j);
          const Complex w = m(q, j);
          m(p, j) = c * u + std::conj(jqp) * w;
          m(q, j) = s * u + std::conj(jqq) * w;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return m(x, x).real() < m(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t jj = 0; jj < n; ++jj) {
    out.values[jj] = m(order[jj], order[jj]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, jj) = v(i, order[jj]);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  if (a.empty()) throw DimensionError("singular_values: empty matrix");
  const std::size_t rows = a.rows();
  const std::size_t ncols = a.cols();
  std::vector<ComplexVector> cols(ncols, ComplexVector(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) cols[j][i] = a(i, j);

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < ncols; ++p) {
      for (std::size_t q = p + 1; q < ncols; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += std::norm(cols[p][i]);
          beta += std::norm(cols[q][i]);
          gamma += std::conj(cols[p][i]) * cols[q][i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const Complex u = cols[p][i];
          const Complex w = cols[q][i] * std::conj(phase);
          cols[p][i] = c * u - s * w;
          cols[q][i] = s * u + c * w;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(ncols);
  for (std::size_t j = 0; j < ncols; ++j) sigma[j] = vector_norm(cols[j]);
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

int numerical_rank(const ComplexMatrix& a, double abs_tol) {
  const auto sigma = singular_values(a);
  return static_cast<int>(
      std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > abs_tol; }));
}

}  // namespace ptdyn::linalg
