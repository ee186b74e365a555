#include "ptdyn/csv.hpp"

#include <charconv>
#include <cmath>

namespace ptdyn::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                                 kSignificantDigits);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& os, std::span<const spin::SweepRow> rows) {
  os << "k,level_index,re_E,im_E,regime\n";
  for (const auto& r : rows) {
    os << format_double(r.k) << ',' << r.level_index << ',' << format_double(r.energy.real())
       << ',' << format_double(r.energy.imag()) << ',' << to_string(r.regime) << '\n';
  }
}

void write_branch_csv(std::ostream& os, const branch::BranchGrid& grid) {
  os << "re_k,im_k,re_val,im_val,arg,is_cut\n";
  for (std::size_t i = 0; i < grid.im_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.re_axis.size(); ++j) {
      const std::size_t idx = grid.index(i, j);
      os << format_double(grid.re_axis[j]) << ',' << format_double(grid.im_axis[i]) << ','
         << format_double(grid.values[idx].real()) << ',' << format_double(grid.values[idx].imag())
         << ',' << format_double(grid.argument[idx]) << ','
         << static_cast<int>(grid.discontinuity_mask[idx]) << '\n';
    }
  }
}

void write_regime_csv(std::ostream& os, std::span<const fock::RegimeSweepRow> rows) {
  os << "discriminant,re_lambda_tilde,im_lambda_tilde,regime\n";
  for (const auto& r : rows) {
    os << format_double(r.discriminant) << ',' << format_double(r.lambda_ratio.real()) << ','
       << format_double(r.lambda_ratio.imag()) << ',' << to_string(r.regime) << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const lattice::LatticeTrajectory& traj) {
  os << "z,site,re_psi,im_psi,norm_sq_total\n";
  for (std::size_t s = 0; s < traj.z_samples.size(); ++s) {
    const std::string z = format_double(traj.z_samples[s]);
    const std::string norm = format_double(traj.norms[s]);
    const auto& amp = traj.amplitudes[s];
    for (std::size_t n = 0; n < amp.size(); ++n) {
      os << z << ',' << n << ',' << format_double(amp[n].real()) << ','
         << format_double(amp[n].imag()) << ',' << norm << '\n';
    }
  }
}

}  // namespace ptdyn::io
