#pragma once

// Extended-precision banded complex matrices for adjoint-action series on
// truncated quadrature operators. Private to the core library.

#include <mpfr.h>

#include <complex>
#include <cstddef>
#include <vector>

namespace ptdyn::scaling::detail {

// Fixed-size array of initialized MPFR numbers.
class MpArray {
 public:
  MpArray() = default;
  MpArray(std::size_t n, mpfr_prec_t prec);
  MpArray(const MpArray&) = delete;
  MpArray& operator=(const MpArray&) = delete;
  MpArray(MpArray&& other) noexcept;
  MpArray& operator=(MpArray&& other) noexcept;
  ~MpArray();

  std::size_t size() const noexcept { return data_.size(); }
  mpfr_ptr operator[](std::size_t i) noexcept { return &data_[i]; }
  mpfr_srcptr operator[](std::size_t i) const noexcept { return &data_[i]; }

 private:
  void release() noexcept;
  std::vector<__mpfr_struct> data_;
};

class MpComplex {
 public:
  explicit MpComplex(mpfr_prec_t prec);
  MpComplex(std::complex<double> z, mpfr_prec_t prec);

  mpfr_ptr re() noexcept { return parts_[0]; }
  mpfr_ptr im() noexcept { return parts_[1]; }
  mpfr_srcptr re() const noexcept { return parts_[0]; }
  mpfr_srcptr im() const noexcept { return parts_[1]; }
  std::complex<double> to_complex() const;

  void assign(const MpComplex& other);
  void multiply(const MpComplex& other);  // *this *= other
  void exp();                             // *this = exp(*this)

 private:
  MpArray parts_;
};

// Square matrix of size n storing diagonals -lower..upper; entries outside the
// band are structurally zero.
class BandedMp {
 public:
  BandedMp(std::size_t n, int lower, int upper, mpfr_prec_t prec);

  std::size_t size() const noexcept { return n_; }
  int lower() const noexcept { return lower_; }
  int upper() const noexcept { return upper_; }
  mpfr_prec_t precision() const noexcept { return prec_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    const auto d = static_cast<long>(j) - static_cast<long>(i);
    return i < n_ && j < n_ && d >= -lower_ && d <= upper_;
  }
  mpfr_ptr re(std::size_t i, std::size_t j) noexcept { return re_[slot(i, j)]; }
  mpfr_ptr im(std::size_t i, std::size_t j) noexcept { return im_[slot(i, j)]; }
  mpfr_srcptr re(std::size_t i, std::size_t j) const noexcept { return re_[slot(i, j)]; }
  mpfr_srcptr im(std::size_t i, std::size_t j) const noexcept { return im_[slot(i, j)]; }

  // Band diagonals that hold at least one nonzero entry.
  std::vector<int> occupied_offsets() const;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const noexcept {
    return i * width_ + static_cast<std::size_t>(static_cast<long>(j) - static_cast<long>(i) + lower_);
  }
  std::size_t n_;
  int lower_;
  int upper_;
  std::size_t width_;
  mpfr_prec_t prec_;
  MpArray re_;
  MpArray im_;
};

// Exactly truncated quadratures with m = omega = 1.
BandedMp position_operator(std::size_t n, mpfr_prec_t prec);
BandedMp momentum_operator(std::size_t n, mpfr_prec_t prec);
// (xp + px)/2 = (i/2)(a_dag^2 - a^2)
BandedMp dilation_operator(std::size_t n, mpfr_prec_t prec);
// -p^2/2 = (a_dag^2 + a^2 - 2n - 1)/4
BandedMp negative_half_momentum_squared(std::size_t n, mpfr_prec_t prec);
BandedMp ladder_lowering(std::size_t n, mpfr_prec_t prec);

BandedMp multiply(const BandedMp& a, const BandedMp& b);
BandedMp zeros_like(std::size_t n, int lower, int upper, mpfr_prec_t prec);
// acc += c * x over x's size; acc's band must contain x's.
void add_scaled(BandedMp& acc, const BandedMp& x, const MpComplex& c);

// sum_{n<=order} s^n/n! ad_G^n(x), evaluated on shrinking leading blocks so
// that only entries unaffected by the truncation edge are propagated. The
// result has x's size; entries within (band of G)*order of its edge are not
// meaningful.
BandedMp adjoint_series(const BandedMp& g, const BandedMp& x, const MpComplex& s, int order);

struct BlockDeviation {
  double max_abs_diff = 0.0;
  double max_reference = 0.0;
};

// Compares the leading k x k blocks entrywise.
BlockDeviation compare_leading_block(const BandedMp& value, const BandedMp& reference,
                                     std::size_t k);

}  // namespace ptdyn::scaling::detail
