#include <gtest/gtest.h>

#include <vector>

#include "ptdyn/errors.hpp"
#include "ptdyn/spectrum.hpp"

namespace {

using ptdyn::linalg::Complex;

TEST(SortSpectrum, RealPartThenImaginary) {
  std::vector<Complex> v{{1.0, 2.0}, {-1.0, 0.0}, {1.0, -2.0}, {0.0, 5.0}};
  ptdyn::linalg::sort_spectrum(v);
  const std::vector<Complex> expected{{-1.0, 0.0}, {0.0, 5.0}, {1.0, -2.0}, {1.0, 2.0}};
  EXPECT_EQ(v, expected);
}

TEST(SortSpectrum, NearTiedRealPartsOrderByImaginary) {
  std::vector<Complex> v{{1.0 + 1e-13, -1.0}, {1.0, 1.0}};
  ptdyn::linalg::sort_spectrum(v);
  EXPECT_EQ(v[0].imag(), -1.0);
}

TEST(CanonicalOrder, IsPermutation) {
  const std::vector<Complex> v{{3.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  const auto p = ptdyn::linalg::canonical_order(v);
  EXPECT_EQ(p, (std::vector<std::size_t>{1, 2, 0}));
}

TEST(MultisetDistance, IgnoresOrder) {
  const std::vector<Complex> a{{1.0, 0.0}, {2.0, 1.0}};
  const std::vector<Complex> b{{2.0, 1.0}, {1.0, 1e-3}};
  EXPECT_NEAR(ptdyn::linalg::multiset_distance(a, b), 1e-3, 1e-15);
}

TEST(MultisetDistance, SizeMismatchThrows) {
  const std::vector<Complex> a{1.0};
  const std::vector<Complex> b{1.0, 2.0};
  EXPECT_THROW(ptdyn::linalg::multiset_distance(a, b), ptdyn::DimensionError);
}

}  // namespace
