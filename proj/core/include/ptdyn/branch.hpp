#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ptdyn/matrix.hpp"

namespace ptdyn::branch {

using linalg::Complex;

enum class Branch { kPositive, kNegative };

// Positive branch: sqrt(k - gamma) * sqrt(k + gamma) with principal factors.
// It squares to k^2 - gamma^2, equals +sqrt(k^2 - gamma^2) for real k > |gamma|,
// gives i at k = 0, and its only cut is the segment [-|gamma|, |gamma|].
Complex branch_value(Complex k, double gamma, Branch branch);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// lo + i*(hi - lo)/(n - 1); endpoints and the midpoint of symmetric ranges
// are exact.
std::vector<double> uniform_axis(Interval range, int n);

struct BranchGrid {
  double gamma = 0.0;
  Branch branch = Branch::kPositive;
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  // Row-major over (im index, re index).
  std::vector<Complex> values;
  std::vector<double> argument;  // in (-pi, pi]
  std::vector<std::uint8_t> discontinuity_mask;
  std::array<Complex, 2> branch_points{};  // {-|gamma|, +|gamma|}

  std::size_t index(std::size_t im_i, std::size_t re_i) const noexcept {
    return im_i * re_axis.size() + re_i;
  }
};

// Cut detector: 4-neighbours a, b are flagged when the values are closer to
// each other's negation than to each other, i.e. the wrapped argument jumps
// by more than pi/2. Both cells of a flagged pair are marked.
BranchGrid branch_grid(double gamma, Interval re_range, Interval im_range, int resolution,
                       Branch branch, unsigned threads = 1);

// Argument change of k^2 - gamma^2 around each grid cell; cells with odd
// winding of the square root, and grid nodes where the value vanishes, are
// returned as branch-point locations (cell centres or nodes).
std::vector<Complex> locate_branch_points(const BranchGrid& grid);

// Net change of arg(f) along a circle, in units of pi. Odd values mark a
// branch point of f inside the circle.
double half_turns_around(Complex centre, double radius, double gamma, Branch branch,
                         int samples = 512);

}  // namespace ptdyn::branch
