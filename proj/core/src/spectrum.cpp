#include "ptdyn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "ptdyn/errors.hpp"

namespace ptdyn::linalg {

std::vector<std::size_t> canonical_order(std::span<const Complex> values, double tie_tol) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  double scale = 1.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  const double tie = tie_tol * scale;

  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a].real() < values[b].real();
  });
  auto group_begin = idx.begin();
  while (group_begin != idx.end()) {
    auto group_end = std::next(group_begin);
    while (group_end != idx.end() &&
           values[*group_end].real() - values[*std::prev(group_end)].real() <= tie) {
      ++group_end;
    }
    std::stable_sort(group_begin, group_end, [&](std::size_t a, std::size_t b) {
      return values[a].imag() < values[b].imag();
    });
    group_begin = group_end;
  }
  return idx;
}

void sort_spectrum(std::vector<Complex>& values, double tie_tol) {
  const auto order = canonical_order(values, tie_tol);
  std::vector<Complex> sorted;
  sorted.reserve(values.size());
  for (auto i : order) sorted.push_back(values[i]);
  values = std::move(sorted);
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("multiset_distance: sizes differ");
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) pairs.emplace_back(std::abs(a[i] - b[j]), i, j);
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> used_a(a.size()), used_b(b.size());
  double worst = 0.0;
  std::size_t matched = 0;
  for (const auto& [d, i, j] : pairs) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    worst = std::max(worst, d);
    if (++matched == a.size()) break;
  }
  return worst;
}

}  // namespace ptdyn::linalg
