#include "ptdyn/expm.hpp"

#include <array>
#include <cmath>
#include <span>

#include "ptdyn/errors.hpp"

namespace ptdyn::linalg {

namespace {

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norms for which each degree meets unit roundoff in double.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

// Beyond this many squarings the result overflows for any nonzero spectrum of
// interest; treat as a range failure rather than iterate.
constexpr int kMaxSquarings = 1000;

bool is_diagonal(const ComplexMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != Complex{}) return false;
  return true;
}

void add_scaled_identity(ComplexMatrix& m, double s) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += s;
}

ComplexMatrix pade_ratio(const ComplexMatrix& u, const ComplexMatrix& v) {
  // r = (V - U)^{-1} (V + U)
  return solve(v - u, v + u);
}

// Low-degree approximants: U = A * sum b_{2k+1} A^{2k}, V = sum b_{2k} A^{2k}.
template <std::size_t N>
ComplexMatrix pade_low(const ComplexMatrix& a, const std::array<double, N>& b) {
  const std::size_t n = a.rows();
  const ComplexMatrix a2 = a * a;
  ComplexMatrix power = ComplexMatrix::identity(n);
  ComplexMatrix uodd(n, n);
  ComplexMatrix v(n, n);
  for (std::size_t k = 0; 2 * k < N; ++k) {
    if (k > 0) power = power * a2;
    v += b[2 * k] * power;
    uodd += b[2 * k + 1] * power;
  }
  return pade_ratio(a * uodd, v);
}

ComplexMatrix pade13(const ComplexMatrix& a) {
  const auto& b = kPade13;
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  ComplexMatrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  inner_u = a6 * inner_u;
  inner_u += b[7] * a6 + b[5] * a4 + b[3] * a2;
  add_scaled_identity(inner_u, b[1]);
  const ComplexMatrix u = a * inner_u;

  ComplexMatrix v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * v;
  v += b[6] * a6 + b[4] * a4 + b[2] * a2;
  add_scaled_identity(v, b[0]);
  return pade_ratio(u, v);
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& a) {
  if (a.empty() || !a.is_square()) throw DimensionError("expm: matrix must be square");
  if (!a.all_finite()) throw DomainError("expm: non-finite entry");

  if (is_diagonal(a)) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, i) = std::exp(a(i, i));
    if (!out.all_finite()) throw RangeError("expm: result overflows double precision");
    return out;
  }

  const double norm = a.norm_one();
  ComplexMatrix result;
  if (norm <= kTheta3) {
    result = pade_low(a, kPade3);
  } else if (norm <= kTheta5) {
    result = pade_low(a, kPade5);
  } else if (norm <= kTheta7) {
    result = pade_low(a, kPade7);
  } else if (norm <= kTheta9) {
    result = pade_low(a, kPade9);
  } else {
    int squarings = 0;
    if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
    if (squarings > kMaxSquarings) throw RangeError("expm: norm too large");
    const ComplexMatrix scaled = std::ldexp(1.0, -squarings) * a;
    result = pade13(scaled);
    for (int s = 0; s < squarings; ++s) {
      result = result * result;
      if (!result.all_finite()) throw RangeError("expm: result overflows double precision");
    }
  }
  if (!result.all_finite()) throw RangeError("expm: result overflows double precision");
  return result;
}

ComplexMatrix similarity_conjugate(const ComplexMatrix& h, const ComplexMatrix& g, Complex theta) {
  if (!h.is_square() || !g.is_square() || h.rows() != g.rows() || h.empty()) {
    throw DimensionError("similarity_conjugate: H and G must be square of equal size");
  }
  if (theta == Complex{}) return h;
  const ComplexMatrix forward = expm(theta * g);
  const ComplexMatrix backward = expm(-theta * g);
  return forward * h * backward;
}

}  // namespace ptdyn::linalg
