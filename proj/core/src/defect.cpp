#include "ptdyn/defect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ptdyn/eigen.hpp"
#include "ptdyn/errors.hpp"
#include "ptdyn/spectrum.hpp"

namespace ptdyn::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Group {
  std::vector<std::size_t> members;
  Complex centroid;
};

Complex mean_of(std::span<const Complex> values, const std::vector<std::size_t>& members) {
  Complex sum = 0.0;
  for (auto i : members) sum += values[i];
  return sum / static_cast<double>(members.size());
}

double spread_of(std::span<const Complex> values, const std::vector<std::size_t>& members,
                 Complex centre) {
  double worst = 0.0;
  for (auto i : members) worst = std::max(worst, std::abs(values[i] - centre));
  return worst;
}

ComplexMatrix shifted(const ComplexMatrix& a, Complex mu) {
  ComplexMatrix m = a;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= mu;
  return m;
}

double smallest_singular_value(const ComplexMatrix& a) { return singular_values(a).back(); }

double splitting_radius(double scale, std::size_t m) {
  return scale * std::pow(kSplittingSlack * kEps, 1.0 / static_cast<double>(m));
}

std::vector<Group> single_linkage(std::span<const Complex> values, double radius) {
  const std::size_t n = values.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= radius) parent[find(j)] = find(i);

  std::vector<Group> groups;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].members.push_back(i);
  }
  for (auto& g : groups) g.centroid = mean_of(values, g.members);
  return groups;
}

}  // namespace

DefectReport defect_analysis(const ComplexMatrix& a, double cluster_tol, double rank_tol) {
  const auto eig = eig_general(a);
  return defect_analysis(a, eig.eigenvalues, cluster_tol, rank_tol);
}

DefectReport defect_analysis(const ComplexMatrix& a, std::span<const Complex> eigenvalues,
                             double cluster_tol, double rank_tol) {
  if (a.empty() || !a.is_square()) throw DimensionError("defect_analysis: matrix must be square");
  if (eigenvalues.size() != a.rows()) throw DimensionError("defect_analysis: eigenvalue count");
  if (!(cluster_tol > 0.0) || !(rank_tol > 0.0)) {
    throw DomainError("defect_analysis: tolerances must be positive");
  }

  DefectReport report;
  report.eigenvalues.assign(eigenvalues.begin(), eigenvalues.end());
  sort_spectrum(report.eigenvalues);
  const auto& values = report.eigenvalues;
  const std::size_t n = values.size();
  const double norm = a.norm_fro();
  report.scale = norm > 0.0 ? norm : 1.0;
  const double scale = report.scale;
  const double rank_abs = rank_tol * scale;

  const auto base = single_linkage(values, cluster_tol * scale);

  // Grow each seed group with its nearest neighbours and keep the largest
  // growth that still looks like one split eigenvalue.
  std::vector<bool> consumed(base.size(), false);
  const double widest = splitting_radius(scale, n);
  std::vector<Group> merged;
  for (std::size_t seed = 0; seed < base.size(); ++seed) {
    if (consumed[seed]) continue;
    consumed[seed] = true;
    std::vector<std::size_t> others;
    for (std::size_t g = 0; g < base.size(); ++g)
      if (!consumed[g]) others.push_back(g);
    std::stable_sort(others.begin(), others.end(), [&](std::size_t x, std::size_t y) {
      return std::abs(base[x].centroid - base[seed].centroid) <
             std::abs(base[y].centroid - base[seed].centroid);
    });

    Group best = base[seed];
    std::size_t best_count = 0;
    Group trial = base[seed];
    for (std::size_t c = 0; c < others.size(); ++c) {
      const auto& add = base[others[c]].members;
      trial.members.insert(trial.members.end(), add.begin(), add.end());
      trial.centroid = mean_of(values, trial.members);
      const double spread = spread_of(values, trial.members, trial.centroid);
      if (spread > widest) break;
      if (spread <= splitting_radius(scale, trial.members.size()) &&
          smallest_singular_value(shifted(a, trial.centroid)) <= rank_abs) {
        best = trial;
        best_count = c + 1;
      }
    }
    for (std::size_t c = 0; c < best_count; ++c) consumed[others[c]] = true;
    std::sort(best.members.begin(), best.members.end());
    merged.push_back(std::move(best));
  }

  std::vector<Complex> centroids;
  for (const auto& g : merged) centroids.push_back(g.centroid);
  for (auto idx : canonical_order(centroids)) {
    const auto& g = merged[idx];
    EigenCluster cluster;
    cluster.value = g.centroid;
    cluster.members = g.members;
    cluster.algebraic = static_cast<int>(g.members.size());
    const int rank = numerical_rank(shifted(a, g.centroid), rank_abs);
    cluster.geometric = std::clamp(static_cast<int>(n) - rank, 1, cluster.algebraic);
    report.is_defective = report.is_defective || cluster.geometric < cluster.algebraic;
    report.clusters.push_back(std::move(cluster));
  }
  return report;
}

std::vector<Complex> snap_to_clusters(const DefectReport& report) {
  std::vector<Complex> out = report.eigenvalues;
  for (const auto& c : report.clusters)
    if (c.members.size() > 1)
      for (auto i : c.members) out[i] = c.value;
  return out;
}

}  // namespace ptdyn::linalg
