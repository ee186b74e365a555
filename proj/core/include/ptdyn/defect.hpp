#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ptdyn/matrix.hpp"

namespace ptdyn::linalg {

inline constexpr double kDefaultClusterTol = 1e-7;
inline constexpr double kDefaultRankTol = 1e-9;
// A backward-stable solver splits an order-m defective eigenvalue by about
// (c*u)^(1/m)*||A||; this is c.
inline constexpr double kSplittingSlack = 64.0;

struct EigenCluster {
  Complex value;  // centroid of the members
  int algebraic = 1;
  int geometric = 1;
  std::vector<std::size_t> members;  // indices into DefectReport::eigenvalues
};

struct DefectReport {
  std::vector<EigenCluster> clusters;  // canonical order of centroids
  bool is_defective = false;
  std::vector<Complex> eigenvalues;  // as computed, canonical order
  double scale = 1.0;                // ||A||_F, or 1 for the zero matrix
};

// Groups eigenvalues closer than cluster_tol*||A|| by single linkage, then
// merges groups whose spread is consistent with a split defective eigenvalue
// and whose centroid mu makes A - mu I numerically singular. Geometric
// multiplicity is n - rank(A - mu I) with singular values above rank_tol*||A||.
DefectReport defect_analysis(const ComplexMatrix& a, double cluster_tol = kDefaultClusterTol,
                             double rank_tol = kDefaultRankTol);

// Same, reusing eigenvalues already computed for a.
DefectReport defect_analysis(const ComplexMatrix& a, std::span<const Complex> eigenvalues,
                             double cluster_tol = kDefaultClusterTol,
                             double rank_tol = kDefaultRankTol);

// Eigenvalues with every member of a multi-member cluster replaced by its
// centroid, in the report's order.
std::vector<Complex> snap_to_clusters(const DefectReport& report);

}  // namespace ptdyn::linalg
