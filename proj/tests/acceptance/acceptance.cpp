// One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "ptdyn_cli/checks.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> checks;
  double time_limit_s;  // 0 = untimed
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "Pauli j=1/2 sweep matches closed form", {"spin_sweep_pauli"}, 1.0},
      {2, "j=1 and j=3/2 sweeps match closed form", {"spin_sweep_higher"}, 2.0},
      {3, "exceptional point multiplicities", {"exceptional_point"}, 0.0},
      {4, "isospectral map and round trip over random draws", {"spin_isospectral"}, 0.0},
      {5, "branch cut and branch points", {"branch_cut"}, 0.0},
      {6,
       "Swanson symmetric case, spectrum and regime transition",
       {"swanson_symmetric", "swanson_spectrum", "swanson_regimes"},
       0.0},
      {7, "nu-form spectrum over random draws", {"nu_form"}, 0.0},
      {8,
       "scaling identities and truncation convergence",
       {"scale_identity", "deformed_equivalent", "general_deformation", "coherent_map",
        "scaling_convergence"},
       0.0},
      {9, "Wick phase identity", {"wick_phase"}, 0.0},
      {10,
       "lattice RK4 accuracy, order and norm conservation",
       {"lattice_oracle", "lattice_order", "lattice_norm"},
       30.0},
  };
  return list;
}

}  // namespace

int main() {
  const ptdyn::cli::CheckContext ctx;
  int failures = 0;
  for (const auto& c : criteria()) {
    bool pass = true;
    std::ostringstream detail;
    const auto start = Clock::now();
    for (const auto& name : c.checks) {
      try {
        const auto r = ptdyn::cli::run_check(name, ctx);
        pass = pass && r.pass;
        detail << ' ' << name << "=" << r.max_err << (r.pass ? "" : "(over " + std::to_string(r.threshold) + ")");
      } catch (const std::exception& e) {
        pass = false;
        detail << ' ' << name << " threw: " << e.what();
      }
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit_s > 0.0) {
      detail << " time=" << elapsed << "s (limit " << c.time_limit_s << "s)";
      pass = pass && elapsed < c.time_limit_s;
    }
    if (!pass) ++failures;
    std::printf("criterion %2d: %s  %s |%s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(),
                detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria().size()) - failures,
              criteria().size());
  return failures == 0 ? 0 : 1;
}
