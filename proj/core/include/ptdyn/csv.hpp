#pragma once

#include <ostream>
#include <span>
#include <string>

#include "ptdyn/branch.hpp"
#include "ptdyn/lattice.hpp"
#include "ptdyn/spin.hpp"
#include "ptdyn/swanson.hpp"

namespace ptdyn::io {

inline constexpr int kSignificantDigits = 17;

// Round-trippable text for a double: 17 significant digits, "nan"/"inf"/"-inf"
// for non-finite values.
std::string format_double(double v);

// k, level_index, re_E, im_E, regime
void write_sweep_csv(std::ostream& os, std::span<const spin::SweepRow> rows);

// re_k, im_k, re_val, im_val, arg, is_cut (row-major over im then re)
void write_branch_csv(std::ostream& os, const branch::BranchGrid& grid);

// discriminant, re_lambda_tilde, im_lambda_tilde, regime; the lambda_tilde
// columns hold lambda_tilde / lambda.
void write_regime_csv(std::ostream& os, std::span<const fock::RegimeSweepRow> rows);

// z, site, re_psi, im_psi, norm_sq_total
void write_trajectory_csv(std::ostream& os, const lattice::LatticeTrajectory& traj);

}  // namespace ptdyn::io
