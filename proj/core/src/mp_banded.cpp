#include "mp_banded.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ptdyn::scaling::detail {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

enum class Kind { kZero, kReal, kImag, kComplex };

struct GeneratorDiagonal {
  int offset;
  Kind kind;
};

bool is_zero(mpfr_srcptr re, mpfr_srcptr im) { return mpfr_zero_p(re) && mpfr_zero_p(im); }

// acc += sign * g * y for the given structure of g.
void multiply_accumulate(mpfr_ptr acc_re, mpfr_ptr acc_im, mpfr_srcptr gr, mpfr_srcptr gi,
                         Kind kind, mpfr_srcptr yr, mpfr_srcptr yi, bool subtract, mpfr_ptr tmp) {
  auto fold = [&](mpfr_ptr acc, mpfr_srcptr a, mpfr_srcptr b, bool minus) {
    mpfr_mul(tmp, a, b, kRound);
    if (minus) {
      mpfr_sub(acc, acc, tmp, kRound);
    } else {
      mpfr_add(acc, acc, tmp, kRound);
    }
  };
  switch (kind) {
    case Kind::kZero:
      return;
    case Kind::kReal:
      fold(acc_re, gr, yr, subtract);
      fold(acc_im, gr, yi, subtract);
      return;
    case Kind::kImag:
      fold(acc_re, gi, yi, !subtract);
      fold(acc_im, gi, yr, subtract);
      return;
    case Kind::kComplex:
      fold(acc_re, gr, yr, subtract);
      fold(acc_re, gi, yi, !subtract);
      fold(acc_im, gr, yi, subtract);
      fold(acc_im, gi, yr, subtract);
      return;
  }
}

std::vector<GeneratorDiagonal> classify_diagonals(const BandedMp& g) {
  std::vector<GeneratorDiagonal> out;
  for (int d = -g.lower(); d <= g.upper(); ++d) {
    bool any_re = false;
    bool any_im = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const long j = static_cast<long>(i) + d;
      if (j < 0 || j >= static_cast<long>(g.size())) continue;
      any_re = any_re || !mpfr_zero_p(g.re(i, static_cast<std::size_t>(j)));
      any_im = any_im || !mpfr_zero_p(g.im(i, static_cast<std::size_t>(j)));
    }
    if (!any_re && !any_im) continue;
    out.push_back({d, any_re && any_im ? Kind::kComplex : (any_re ? Kind::kReal : Kind::kImag)});
  }
  return out;
}

int clip_band(int band, std::size_t n) { return std::min(band, static_cast<int>(n) - 1); }

BandedMp copy_of(const BandedMp& x) {
  BandedMp out(x.size(), x.lower(), x.upper(), x.precision());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int d = -x.lower(); d <= x.upper(); ++d) {
      const long j = static_cast<long>(i) + d;
      if (j < 0 || j >= static_cast<long>(x.size())) continue;
      const auto jj = static_cast<std::size_t>(j);
      mpfr_set(out.re(i, jj), x.re(i, jj), kRound);
      mpfr_set(out.im(i, jj), x.im(i, jj), kRound);
    }
  }
  return out;
}

// [G, Y] on the leading r x r block.
BandedMp commutator_block(const BandedMp& g, const std::vector<GeneratorDiagonal>& diags,
                          const BandedMp& y, std::size_t r) {
  int reach = 0;
  for (const auto& d : diags) reach = std::max(reach, std::abs(d.offset));
  BandedMp out(r, clip_band(y.lower() + reach, r), clip_band(y.upper() + reach, r), y.precision());
  MpArray scratch(1, y.precision());
  const auto ysize = static_cast<long>(y.size());
  for (std::size_t i = 0; i < r; ++i) {
    for (int od = -out.lower(); od <= out.upper(); ++od) {
      const long jl = static_cast<long>(i) + od;
      if (jl < 0 || jl >= static_cast<long>(r)) continue;
      const auto j = static_cast<std::size_t>(jl);
      mpfr_ptr acc_re = out.re(i, j);
      mpfr_ptr acc_im = out.im(i, j);
      for (const auto& d : diags) {
        // (G Y)_ij: G(i, m) with m = i + offset
        const long m = static_cast<long>(i) + d.offset;
        if (m >= 0 && m < ysize && y.in_band(static_cast<std::size_t>(m), j)) {
          const auto mm = static_cast<std::size_t>(m);
          if (!is_zero(y.re(mm, j), y.im(mm, j))) {
            multiply_accumulate(acc_re, acc_im, g.re(i, mm), g.im(i, mm), d.kind, y.re(mm, j),
                                y.im(mm, j), false, scratch[0]);
          }
        }
        // (Y G)_ij: G(m, j) with j = m + offset
        const long m2 = jl - d.offset;
        if (m2 >= 0 && m2 < ysize && y.in_band(i, static_cast<std::size_t>(m2))) {
          const auto mm = static_cast<std::size_t>(m2);
          if (!is_zero(y.re(i, mm), y.im(i, mm))) {
            multiply_accumulate(acc_re, acc_im, g.re(mm, j), g.im(mm, j), d.kind, y.re(i, mm),
                                y.im(i, mm), true, scratch[0]);
          }
        }
      }
    }
  }
  return out;
}

void set_sqrt_product(mpfr_ptr out, unsigned long a, unsigned long b, unsigned long div) {
  // sqrt(a * b / div)
  mpfr_set_ui(out, a, kRound);
  mpfr_mul_ui(out, out, b, kRound);
  mpfr_div_ui(out, out, div, kRound);
  mpfr_sqrt(out, out, kRound);
}

}  // namespace

MpArray::MpArray(std::size_t n, mpfr_prec_t prec) : data_(n) {
  for (auto& x : data_) {
    mpfr_init2(&x, prec);
    mpfr_set_zero(&x, 1);
  }
}

MpArray::MpArray(MpArray&& other) noexcept : data_(std::move(other.data_)) { other.data_.clear(); }

MpArray& MpArray::operator=(MpArray&& other) noexcept {
  if (this != &other) {
    release();
    data_ = std::move(other.data_);
    other.data_.clear();
  }
  return *this;
}

MpArray::~MpArray() { release(); }

void MpArray::release() noexcept {
  for (auto& x : data_) mpfr_clear(&x);
  data_.clear();
}

MpComplex::MpComplex(mpfr_prec_t prec) : parts_(2, prec) {}

MpComplex::MpComplex(std::complex<double> z, mpfr_prec_t prec) : parts_(2, prec) {
  mpfr_set_d(re(), z.real(), kRound);
  mpfr_set_d(im(), z.imag(), kRound);
}

std::complex<double> MpComplex::to_complex() const {
  return {mpfr_get_d(re(), kRound), mpfr_get_d(im(), kRound)};
}

void MpComplex::assign(const MpComplex& other) {
  mpfr_set(re(), other.re(), kRound);
  mpfr_set(im(), other.im(), kRound);
}

void MpComplex::multiply(const MpComplex& other) {
  MpArray t(3, mpfr_get_prec(re()));
  mpfr_mul(t[0], re(), other.re(), kRound);
  mpfr_mul(t[1], im(), other.im(), kRound);
  mpfr_sub(t[2], t[0], t[1], kRound);  // real part
  mpfr_mul(t[0], re(), other.im(), kRound);
  mpfr_mul(t[1], im(), other.re(), kRound);
  mpfr_add(im(), t[0], t[1], kRound);
  mpfr_set(re(), t[2], kRound);
}

void MpComplex::exp() {
  MpArray t(3, mpfr_get_prec(re()));
  mpfr_exp(t[0], re(), kRound);
  mpfr_sin_cos(t[1], t[2], im(), kRound);
  mpfr_mul(re(), t[0], t[2], kRound);
  mpfr_mul(im(), t[0], t[1], kRound);
}

BandedMp::BandedMp(std::size_t n, int lower, int upper, mpfr_prec_t prec)
    : n_(n),
      lower_(lower),
      upper_(upper),
      width_(static_cast<std::size_t>(lower + upper + 1)),
      prec_(prec),
      re_(n * width_, prec),
      im_(n * width_, prec) {
  if (n == 0 || lower < 0 || upper < 0) throw std::invalid_argument("BandedMp: bad shape");
}

std::vector<int> BandedMp::occupied_offsets() const {
  std::vector<int> out;
  for (int d = -lower_; d <= upper_; ++d) {
    for (std::size_t i = 0; i < n_; ++i) {
      const long j = static_cast<long>(i) + d;
      if (j < 0 || j >= static_cast<long>(n_)) continue;
      const auto jj = static_cast<std::size_t>(j);
      if (!is_zero(re(i, jj), im(i, jj))) {
        out.push_back(d);
        break;
      }
    }
  }
  return out;
}

BandedMp zeros_like(std::size_t n, int lower, int upper, mpfr_prec_t prec) {
  return BandedMp(n, clip_band(lower, n), clip_band(upper, n), prec);
}

BandedMp ladder_lowering(std::size_t n, mpfr_prec_t prec) {
  BandedMp a(n, 0, clip_band(1, n), prec);
  for (std::size_t i = 0; i + 1 < n; ++i) mpfr_sqrt_ui(a.re(i, i + 1), i + 1, kRound);
  return a;
}

BandedMp position_operator(std::size_t n, mpfr_prec_t prec) {
  BandedMp x(n, clip_band(1, n), clip_band(1, n), prec);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    set_sqrt_product(x.re(i, i + 1), i + 1, 1, 2);
    mpfr_set(x.re(i + 1, i), x.re(i, i + 1), kRound);
  }
  return x;
}

BandedMp momentum_operator(std::size_t n, mpfr_prec_t prec) {
  BandedMp p(n, clip_band(1, n), clip_band(1, n), prec);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    set_sqrt_product(p.im(i + 1, i), i + 1, 1, 2);
    mpfr_neg(p.im(i, i + 1), p.im(i + 1, i), kRound);
  }
  return p;
}

BandedMp dilation_operator(std::size_t n, mpfr_prec_t prec) {
  BandedMp d(n, clip_band(2, n), clip_band(2, n), prec);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    set_sqrt_product(d.im(i + 2, i), i + 1, i + 2, 4);
    mpfr_neg(d.im(i, i + 2), d.im(i + 2, i), kRound);
  }
  return d;
}

BandedMp negative_half_momentum_squared(std::size_t n, mpfr_prec_t prec) {
  BandedMp g(n, clip_band(2, n), clip_band(2, n), prec);
  for (std::size_t i = 0; i < n; ++i) {
    mpfr_set_si(g.re(i, i), -static_cast<long>(2 * i + 1), kRound);
    mpfr_div_ui(g.re(i, i), g.re(i, i), 4, kRound);
  }
  for (std::size_t i = 0; i + 2 < n; ++i) {
    set_sqrt_product(g.re(i + 2, i), i + 1, i + 2, 16);
    mpfr_set(g.re(i, i + 2), g.re(i + 2, i), kRound);
  }
  return g;
}

BandedMp multiply(const BandedMp& a, const BandedMp& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multiply: size mismatch");
  const std::size_t n = a.size();
  BandedMp c = zeros_like(n, a.lower() + b.lower(), a.upper() + b.upper(), a.precision());
  MpArray t(1, a.precision());
  const auto offsets = classify_diagonals(a);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& d : offsets) {
      const long k = static_cast<long>(i) + d.offset;
      if (k < 0 || k >= static_cast<long>(n)) continue;
      const auto kk = static_cast<std::size_t>(k);
      for (int e = -b.lower(); e <= b.upper(); ++e) {
        const long j = k + e;
        if (j < 0 || j >= static_cast<long>(n)) continue;
        const auto jj = static_cast<std::size_t>(j);
        if (is_zero(b.re(kk, jj), b.im(kk, jj))) continue;
        multiply_accumulate(c.re(i, jj), c.im(i, jj), a.re(i, kk), a.im(i, kk), Kind::kComplex,
                            b.re(kk, jj), b.im(kk, jj), false, t[0]);
      }
    }
  }
  return c;
}

void add_scaled(BandedMp& acc, const BandedMp& x, const MpComplex& c) {
  if (x.size() > acc.size()) throw std::invalid_argument("add_scaled: operand larger than target");
  MpArray t(1, acc.precision());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int d = -x.lower(); d <= x.upper(); ++d) {
      const long jl = static_cast<long>(i) + d;
      if (jl < 0 || jl >= static_cast<long>(x.size())) continue;
      const auto j = static_cast<std::size_t>(jl);
      if (is_zero(x.re(i, j), x.im(i, j))) continue;
      if (!acc.in_band(i, j)) throw std::invalid_argument("add_scaled: band overflow");
      multiply_accumulate(acc.re(i, j), acc.im(i, j), c.re(), c.im(), Kind::kComplex, x.re(i, j),
                          x.im(i, j), false, t[0]);
    }
  }
}

BandedMp adjoint_series(const BandedMp& g, const BandedMp& x, const MpComplex& s, int order) {
  const std::size_t w = x.size();
  if (g.size() < w) throw std::invalid_argument("adjoint_series: generator smaller than operand");
  const auto diags = classify_diagonals(g);
  int reach = 0;
  for (const auto& d : diags) reach = std::max(reach, std::abs(d.offset));

  BandedMp acc =
      zeros_like(w, x.lower() + reach * order, x.upper() + reach * order, x.precision());
  MpComplex coefficient(std::complex<double>(1.0, 0.0), x.precision());
  add_scaled(acc, x, coefficient);

  BandedMp term = copy_of(x);
  for (int n = 1; n <= order; ++n) {
    const long r = static_cast<long>(w) - static_cast<long>(reach) * n;
    if (r <= 0 || reach == 0) break;
    term = commutator_block(g, diags, term, static_cast<std::size_t>(r));
    coefficient.multiply(s);
    mpfr_div_ui(coefficient.re(), coefficient.re(), static_cast<unsigned long>(n), kRound);
    mpfr_div_ui(coefficient.im(), coefficient.im(), static_cast<unsigned long>(n), kRound);
    add_scaled(acc, term, coefficient);
  }
  return acc;
}

BlockDeviation compare_leading_block(const BandedMp& value, const BandedMp& reference,
                                     std::size_t k) {
  if (k > value.size() || k > reference.size()) {
    throw std::invalid_argument("compare_leading_block: block larger than operands");
  }
  const mpfr_prec_t prec = std::max(value.precision(), reference.precision());
  MpArray t(4, prec);
  BlockDeviation out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const bool in_v = value.in_band(i, j);
      const bool in_r = reference.in_band(i, j);
      mpfr_set_zero(t[0], 1);
      mpfr_set_zero(t[1], 1);
      mpfr_set_zero(t[2], 1);
      mpfr_set_zero(t[3], 1);
      if (in_v) {
        mpfr_set(t[0], value.re(i, j), kRound);
        mpfr_set(t[1], value.im(i, j), kRound);
      }
      if (in_r) {
        mpfr_set(t[2], reference.re(i, j), kRound);
        mpfr_set(t[3], reference.im(i, j), kRound);
      }
      mpfr_sub(t[0], t[0], t[2], kRound);
      mpfr_sub(t[1], t[1], t[3], kRound);
      mpfr_hypot(t[0], t[0], t[1], kRound);
      mpfr_hypot(t[2], t[2], t[3], kRound);
      out.max_abs_diff = std::max(out.max_abs_diff, mpfr_get_d(t[0], kRound));
      out.max_reference = std::max(out.max_reference, mpfr_get_d(t[2], kRound));
    }
  }
  return out;
}

}  // namespace ptdyn::scaling::detail
