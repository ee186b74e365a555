#include "ptdyn/branch.hpp"

#include <cmath>
#include <numbers>

#include "ptdyn/errors.hpp"
#include "ptdyn/parallel.hpp"

namespace ptdyn::branch {

namespace {

double normalized_arg(Complex z) {
  const double a = std::arg(z);
  return a <= -std::numbers::pi ? std::numbers::pi : a;
}

bool sign_flip(Complex a, Complex b) { return std::abs(a - b) > std::abs(a + b); }

// Wrapped difference in (-pi, pi].
double wrapped(double d) {
  while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
  while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
  return d;
}

}  // namespace

Complex branch_value(Complex k, double gamma, Branch branch) {
  if (!std::isfinite(gamma)) throw DomainError("branch_value: gamma must be finite");
  const Complex v = std::sqrt(k - gamma) * std::sqrt(k + gamma);
  return branch == Branch::kPositive ? v : -v;
}

std::vector<double> uniform_axis(Interval range, int n) {
  if (n < 2) throw DomainError("uniform_axis: need at least two points");
  std::vector<double> axis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) axis[static_cast<std::size_t>(i)] = range.lo + (i * (range.hi - range.lo)) / (n - 1);
  return axis;
}

BranchGrid branch_grid(double gamma, Interval re_range, Interval im_range, int resolution,
                       Branch branch, unsigned threads) {
  if (!std::isfinite(gamma)) throw DomainError("branch_grid: gamma must be finite");
  if (resolution < 16) throw DomainError("branch_grid: resolution must be at least 16");
  if (!(re_range.lo < re_range.hi) || !(im_range.lo < im_range.hi)) {
    throw DomainError("branch_grid: intervals must be nondegenerate");
  }
  BranchGrid grid;
  grid.gamma = gamma;
  grid.branch = branch;
  grid.re_axis = uniform_axis(re_range, resolution);
  grid.im_axis = uniform_axis(im_range, resolution);
  grid.branch_points = {Complex(-std::abs(gamma), 0.0), Complex(std::abs(gamma), 0.0)};
  const std::size_t nre = grid.re_axis.size();
  const std::size_t nim = grid.im_axis.size();
  grid.values.resize(nre * nim);
  grid.argument.resize(nre * nim);
  grid.discontinuity_mask.assign(nre * nim, 0);

  parallel_for(nim, threads, [&](std::size_t r) {
    for (std::size_t c = 0; c < nre; ++c) {
      const auto idx = grid.index(r, c);
      grid.values[idx] = branch_value({grid.re_axis[c], grid.im_axis[r]}, gamma, branch);
      grid.argument[idx] = normalized_arg(grid.values[idx]);
    }
  });

  for (std::size_t r = 0; r < nim; ++r) {
    for (std::size_t c = 0; c < nre; ++c) {
      const auto idx = grid.index(r, c);
      if (c + 1 < nre && sign_flip(grid.values[idx], grid.values[idx + 1])) {
        grid.discontinuity_mask[idx] = grid.discontinuity_mask[idx + 1] = 1;
      }
      if (r + 1 < nim) {
        const auto up = grid.index(r + 1, c);
        if (sign_flip(grid.values[idx], grid.values[up])) {
          grid.discontinuity_mask[idx] = grid.discontinuity_mask[up] = 1;
        }
      }
    }
  }
  return grid;
}

std::vector<Complex> locate_branch_points(const BranchGrid& grid) {
  const std::size_t nre = grid.re_axis.size();
  const std::size_t nim = grid.im_axis.size();
  double max_abs = 0.0;
  for (const auto& v : grid.values) max_abs = std::max(max_abs, std::abs(v));
  const double zero_tol = 1e-12 * std::max(1.0, max_abs);

  // Squared values are single-valued and analytic; an odd number of zeros of
  // the square inside a closed loop means a branch point of the root.
  auto odd_winding = [&](const std::vector<std::size_t>& loop) {
    double total = 0.0;
    for (std::size_t e = 0; e < loop.size(); ++e) {
      const Complex a = grid.values[loop[e]] * grid.values[loop[e]];
      const Complex b =
          grid.values[loop[(e + 1) % loop.size()]] * grid.values[loop[(e + 1) % loop.size()]];
      total += wrapped(std::arg(b) - std::arg(a));
    }
    return std::lround(total / (2.0 * std::numbers::pi)) % 2 != 0;
  };
  auto is_zero = [&](std::size_t id) { return std::abs(grid.values[id]) <= zero_tol; };

  std::vector<Complex> found;
  for (std::size_t r = 1; r + 1 < nim; ++r) {
    for (std::size_t c = 1; c + 1 < nre; ++c) {
      if (!is_zero(grid.index(r, c))) continue;
      const std::vector<std::size_t> ring = {
          grid.index(r - 1, c - 1), grid.index(r - 1, c), grid.index(r - 1, c + 1),
          grid.index(r, c + 1),     grid.index(r + 1, c + 1), grid.index(r + 1, c),
          grid.index(r + 1, c - 1), grid.index(r, c - 1)};
      if (odd_winding(ring)) found.emplace_back(grid.re_axis[c], grid.im_axis[r]);
    }
  }
  for (std::size_t r = 0; r + 1 < nim; ++r) {
    for (std::size_t c = 0; c + 1 < nre; ++c) {
      const std::vector<std::size_t> cell = {grid.index(r, c), grid.index(r, c + 1),
                                             grid.index(r + 1, c + 1), grid.index(r + 1, c)};
      bool on_zero = false;
      for (auto id : cell) on_zero = on_zero || is_zero(id);
      if (on_zero) continue;
      if (odd_winding(cell)) {
        found.emplace_back(0.5 * (grid.re_axis[c] + grid.re_axis[c + 1]),
                           0.5 * (grid.im_axis[r] + grid.im_axis[r + 1]));
      }
    }
  }
  return found;
}

double half_turns_around(Complex centre, double radius, double gamma, Branch branch,
                         int samples) {
  if (samples < 8) throw DomainError("half_turns_around: too few samples");
  double total = 0.0;
  Complex prev = branch_value(centre + radius, gamma, branch);
  for (int s = 1; s <= samples; ++s) {
    const double t = 2.0 * std::numbers::pi * s / samples;
    // follow the analytic continuation: pick the sign closest to the previous value
    Complex cur = branch_value(centre + std::polar(radius, t), gamma, branch);
    if (sign_flip(prev, cur)) cur = -cur;
    total += wrapped(std::arg(cur) - std::arg(prev));
    prev = cur;
  }
  return total / std::numbers::pi;
}

}  // namespace ptdyn::branch
