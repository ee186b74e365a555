#include "ptdyn_cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ptdyn/branch.hpp"
#include "ptdyn/defect.hpp"
#include "ptdyn/eigen.hpp"
#include "ptdyn/lattice.hpp"
#include "ptdyn/scaling.hpp"
#include "ptdyn/spectrum.hpp"
#include "ptdyn/spin.hpp"
#include "ptdyn/swanson.hpp"

namespace ptdyn::cli {

namespace {

using linalg::Complex;

// Uniform doubles from the top 53 bits, so draws do not depend on the
// standard library's distribution implementation.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double sign() { return (rng_() & 1U) != 0U ? 1.0 : -1.0; }

 private:
  std::mt19937_64 rng_;
};

CheckResult finish(std::string name, double err, double threshold, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.max_err = err;
  r.threshold = threshold;
  r.pass = std::isfinite(err) && err <= threshold;
  r.detail = std::move(detail);
  return r;
}

// Max over sweep points of the distance between numeric levels and the
// closed form epsilon + m c sqrt(k^2 - gamma^2), m = -j..j, with epsilon, gamma
// and k read in the sweep's own convention (c = 2 for Pauli units).
double sweep_deviation(const spin::SpinParams& tmpl, spin::Convention conv, unsigned threads) {
  constexpr double kMin = -3.0;
  constexpr double kMax = 3.0;
  constexpr int kPoints = 601;
  const auto rows = spin::sweep_spectrum(tmpl, kMin, kMax, kPoints, conv, threads);
  const std::size_t levels = tmpl.j.dimension();
  const double c = conv == spin::Convention::kPauli ? 2.0 : 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); i += levels) {
    const double k = rows[i].k;
    const Complex root = std::sqrt(Complex(k * k - tmpl.gamma * tmpl.gamma, 0.0));
    std::vector<Complex> numeric(levels);
    std::vector<Complex> closed(levels);
    for (std::size_t l = 0; l < levels; ++l) {
      numeric[l] = rows[i + l].energy;
      const double m = static_cast<double>(l) - tmpl.j.value();
      closed[l] = tmpl.epsilon + m * c * root;
    }
    worst = std::max(worst, linalg::multiset_distance(numeric, closed));
  }
  return worst;
}

CheckResult spin_sweep_pauli(const CheckContext& ctx) {
  // Pauli units: H = 2 + i sigma_z + k sigma_x.
  spin::SpinParams tmpl;
  tmpl.j = spin::SpinQuantumNumber::from_twice(1);
  tmpl.epsilon = 2.0;
  tmpl.gamma = 1.0;
  return finish("spin_sweep_pauli", sweep_deviation(tmpl, spin::Convention::kPauli, ctx.threads),
                1e-9, "j=1/2, epsilon=2, gamma=1, 601 points on [-3,3]");
}

CheckResult spin_sweep_higher(const CheckContext& ctx) {
  double worst = 0.0;
  for (int twice : {2, 3}) {
    spin::SpinParams p;
    p.j = spin::SpinQuantumNumber::from_twice(twice);
    p.epsilon = 2.0;
    p.gamma = 1.0;
    worst = std::max(worst, sweep_deviation(p, spin::Convention::kSpin, ctx.threads));
  }
  return finish("spin_sweep_higher", worst, 1e-9, "j=1 and j=3/2, epsilon=2, gamma=1");
}

CheckResult exceptional_point(const CheckContext&) {
  double mismatch = 0.0;
  std::ostringstream detail;
  for (int twice : {1, 2, 3}) {
    spin::SpinParams p;
    p.j = spin::SpinQuantumNumber::from_twice(twice);
    p.epsilon = 2.0;
    p.gamma = 1.0;
    p.k = 1.0;
    const auto report = linalg::defect_analysis(spin::build_pt_hamiltonian(p));
    int alg = 0;
    int geo = 0;
    for (const auto& c : report.clusters) {
      if (c.algebraic > alg) {
        alg = c.algebraic;
        geo = c.geometric;
      }
    }
    mismatch += std::abs(alg - (twice + 1)) + std::abs(geo - 1);
    detail << "2j=" << twice << ": alg=" << alg << " geo=" << geo << "; ";
  }
  return finish("exceptional_point", mismatch, 0.0, detail.str());
}

CheckResult spin_isospectral(const CheckContext& ctx) {
  Draw draw(ctx.seed ^ 0x5157U);
  double worst_spec = 0.0;
  double worst_trip = 0.0;
  for (const bool unbroken : {true, false}) {
    for (int i = 0; i < ctx.random_draws; ++i) {
      spin::SpinParams p;
      p.j = spin::SpinQuantumNumber::from_twice(draw.integer(1, 4));
      p.epsilon = draw.uniform(-3.0, 3.0);
      p.gamma = draw.sign() * draw.uniform(0.2, 2.0);
      const double ratio = unbroken ? draw.uniform(1.1, 3.0) : draw.uniform(0.0, 0.9);
      p.k = draw.sign() * ratio * std::abs(p.gamma);
      const auto h = spin::build_pt_hamiltonian(p);
      const auto map = spin::hermitian_map(p);
      const auto before = linalg::eig_general(h).eigenvalues;
      const auto after = linalg::eig_general(map.h0).eigenvalues;
      worst_spec = std::max(worst_spec, linalg::multiset_distance(before, after));
      worst_trip = std::max(
          worst_trip, linalg::max_abs_diff(spin::inverse_map(map.h0, map.theta0, p.j), h));
    }
  }
  // Two thresholds; report the larger normalized deviation.
  const double err = std::max(worst_spec / 1e-8, worst_trip / 1e-9);
  std::ostringstream detail;
  detail << "draws per regime=" << ctx.random_draws << " spectrum=" << worst_spec
         << " round_trip=" << worst_trip << " (max_err is relative to 1e-8 / 1e-9)";
  return finish("spin_isospectral", err, 1.0, detail.str());
}

CheckResult branch_cut(const CheckContext& ctx) {
  constexpr int kResolution = 201;
  const auto grid = branch::branch_grid(1.0, {-2.0, 2.0}, {-2.0, 2.0}, kResolution,
                                        branch::Branch::kPositive, ctx.threads);
  const double step = 4.0 / (kResolution - 1);
  const double slack = 1e-12;
  int false_cells = 0;
  int missed_columns = 0;
  for (std::size_t j = 0; j < grid.re_axis.size(); ++j) {
    bool hit = false;
    for (std::size_t i = 0; i < grid.im_axis.size(); ++i) {
      if (grid.discontinuity_mask[grid.index(i, j)] == 0) continue;
      const bool near_cut = std::abs(grid.im_axis[i]) <= step + slack &&
                            std::abs(grid.re_axis[j]) <= 1.0 + step + slack;
      if (near_cut) {
        hit = true;
      } else {
        ++false_cells;
      }
    }
    if (std::abs(grid.re_axis[j]) < 1.0 - slack && !hit) ++missed_columns;
  }
  const auto points = branch::locate_branch_points(grid);
  double point_err = points.size() == 2 ? 0.0 : 1.0;
  for (Complex target : {Complex(-1.0, 0.0), Complex(1.0, 0.0)}) {
    double best = 1e300;
    for (Complex z : points) best = std::min(best, std::abs(z - target));
    if (best > step + slack) point_err = 1.0;
  }
  std::ostringstream detail;
  detail << "false_cells=" << false_cells << " missed_columns=" << missed_columns
         << " branch_points=" << points.size();
  return finish("branch_cut", false_cells + missed_columns + point_err, 0.0, detail.str());
}

fock::SwansonParams symmetric_swanson(int n_trunc) {
  fock::SwansonParams p;
  p.lambda = 2.0;
  p.alpha1 = 1.0;
  p.alpha2 = 1.0;
  p.beta1 = 0.5;
  p.beta2 = 0.5;
  p.n_trunc = n_trunc;
  return p;
}

CheckResult swanson_symmetric(const CheckContext&) {
  const auto c = fock::chain_coefficients(symmetric_swanson(fock::kDefaultTruncation));
  const double err = std::max({std::abs(c.gamma1 - 1.0 / 3.0), std::abs(c.gamma2 - 1.0 / 3.0),
                               std::abs(c.delta + 1.0 / 3.0), std::abs(c.zeta),
                               std::abs(c.lambda_tilde - 2.0)});
  return finish("swanson_symmetric", err, 1e-12, "gamma1, gamma2, delta, zeta, lambda_tilde");
}

CheckResult swanson_spectrum(const CheckContext&) {
  constexpr int kLevels = 16;
  const auto p = symmetric_swanson(128);
  const auto eig = linalg::eig_general(fock::build_gsw(p));
  const auto analytic = fock::gsw_spectrum(p, kLevels);
  double worst = 0.0;
  for (int n = 0; n < kLevels; ++n) {
    worst = std::max(worst, std::abs(eig.eigenvalues[static_cast<std::size_t>(n)] -
                                     analytic[static_cast<std::size_t>(n)]));
  }
  auto r = finish("swanson_spectrum", worst, 1e-6, "levels n < 16");
  r.n_trunc = p.n_trunc;
  return r;
}

CheckResult swanson_regimes(const CheckContext&) {
  constexpr double kMin = -1.0;
  constexpr double kMax = 3.0;
  constexpr int kPoints = 401;
  const double step = (kMax - kMin) / (kPoints - 1);
  const auto rows = fock::regime_sweep(symmetric_swanson(fock::kDefaultTruncation), kMin, kMax, kPoints);
  int bad = 0;
  double last_unbroken = -1e300;
  double first_broken = 1e300;
  for (const auto& r : rows) {
    const double gap = r.discriminant - 1.0;
    if (gap < -1e-9) {
      if (r.regime != Regime::kUnbroken || r.lambda_ratio.imag() != 0.0) ++bad;
      last_unbroken = std::max(last_unbroken, r.discriminant);
    } else if (gap > 1e-9) {
      if (r.regime != Regime::kBroken || r.lambda_ratio.real() != 0.0) ++bad;
      first_broken = std::min(first_broken, r.discriminant);
    } else if (r.regime != Regime::kExceptional) {
      ++bad;
    }
  }
  if (!(1.0 - last_unbroken <= step + 1e-12 && first_broken - 1.0 <= step + 1e-12)) ++bad;
  std::ostringstream detail;
  detail << "transition bracket [" << last_unbroken << ", " << first_broken << "]";
  return finish("swanson_regimes", bad, 0.0, detail.str());
}

CheckResult nu_form_consistency(const CheckContext& ctx) {
  Draw draw(ctx.seed ^ 0x7a11U);
  const int draws = std::max(1, ctx.random_draws / 2);
  constexpr int kLevels = 8;
  double worst = 0.0;
  for (int i = 0; i < draws;) {
    fock::SwansonParams p;
    p.lambda = draw.uniform(0.5, 3.0);
    const double s = draw.sign();
    p.alpha1 = s * draw.uniform(0.2, 2.0);
    p.alpha2 = s * draw.uniform(0.2, 2.0);
    p.beta1 = draw.uniform(-1.0, 1.0);
    p.beta2 = draw.uniform(-1.0, 1.0);
    p.n_trunc = 4 * kLevels;
    if (p.lambda * p.lambda - 4.0 * p.beta1 * p.beta2 < 0.1) continue;
    ++i;
    const double mass = draw.uniform(0.5, 2.0);
    const double omega = draw.uniform(0.5, 2.0);
    const auto form = fock::nu_form(p, mass, omega);
    const auto ref = fock::gsw_spectrum(p, kLevels);
    for (int n = 0; n < kLevels; ++n) {
      worst = std::max(worst, std::abs(form.energy(n) - ref[static_cast<std::size_t>(n)]));
    }
  }
  return finish("nu_form", worst, 1e-12, std::to_string(draws) + " draws, levels n < 8");
}

CheckResult with_truncation(CheckResult r, int n, std::optional<double> fraction) {
  r.n_trunc = n;
  r.interior_fraction = fraction;
  return r;
}

CheckResult scale_identity(const CheckContext&) {
  const auto e = scaling::scale_check(0.3, 128);
  return with_truncation(finish("scale_identity", std::max(e.max_err_x, e.max_err_p), 1e-8,
                                "r=0.3, x and p"),
                         128, scaling::kDefaultInteriorFraction);
}

CheckResult deformed_equivalent(const CheckContext&) {
  scaling::DeformationParams d{2.0, 0, 256, scaling::kDefaultInteriorFraction};
  const auto r = scaling::deformed_equivalent_detail(d);
  return with_truncation(finish("deformed_equivalent", r.max_err, 1e-5, "eps=2, k=0"), 256,
                         static_cast<double>(r.block) / 256);
}

CheckResult general_deformation(const CheckContext&) {
  const double v[] = {0.0, 0.0, 1.0};
  return with_truncation(
      finish("general_deformation", scaling::general_deformation_check(v, 256), 1e-5, "V=x^2"), 256,
      scaling::kDefaultInteriorFraction);
}

CheckResult coherent_map(const CheckContext&) {
  return with_truncation(
      finish("coherent_map", scaling::coherent_map_check(1.0, 128), 1e-6, "lambda=1"), 128,
      scaling::kDefaultInteriorFraction);
}

// Each identity at n and 2n; max_err is the largest growth beyond 10%, and the
// threshold is a floor far below any identity's own tolerance.
CheckResult scaling_convergence(const CheckContext&) {
  constexpr double kFloor = 1e-28;
  const double v[] = {0.0, 0.0, 1.0};
  const std::vector<std::pair<std::string, std::function<double(int)>>> cases = {
      {"scale", [](int n) {
         const auto e = scaling::scale_check(0.3, n);
         return std::max(e.max_err_x, e.max_err_p);
       }},
      {"deformed",
       [](int n) { return scaling::deformed_equivalent_check({2.0, 0, n, scaling::kDefaultInteriorFraction}); }},
      {"general", [&v](int n) { return scaling::general_deformation_check(v, n); }},
      {"coherent", [](int n) { return scaling::coherent_map_check(1.0, n); }},
  };
  const int base[] = {128, 256, 256, 128};
  double worst = 0.0;
  std::ostringstream detail;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const double coarse = cases[i].second(base[i]);
    const double fine = cases[i].second(2 * base[i]);
    worst = std::max(worst, fine - 1.1 * coarse);
    detail << cases[i].first << ": " << coarse << " -> " << fine << "; ";
  }
  return finish("scaling_convergence", worst, kFloor, detail.str());
}

CheckResult wick_phase(const CheckContext& ctx) {
  Draw draw(ctx.seed ^ 0x91c4U);
  const int draws = std::max(1, ctx.random_draws / 4);
  double worst = 0.0;
  for (int i = 0; i < draws; ++i) {
    scaling::DeformationParams d;
    d.eps_def = draw.uniform(0.0, 10.0);
    d.k_int = draw.integer(-3, 3);
    const auto w = scaling::wick_parameters(d);
    const Complex lhs = std::polar(1.0, 2.0 * w.r);
    const Complex rhs = std::polar(1.0, -w.r * (2.0 + d.eps_def) + std::numbers::pi * d.eps_def / 2.0);
    worst = std::max({worst, std::abs(lhs - rhs), std::abs(w.phase - lhs)});
  }
  const auto w2 = scaling::wick_parameters({2.0, 0, 256, 0.5});
  worst = std::max(worst, std::abs(w2.r - std::numbers::pi / 6.0));
  return finish("wick_phase", worst, 1e-14, std::to_string(draws) + " draws plus eps=2, k=0");
}

lattice::LatticeConfig glauber_fock(double z_max, double dz) {
  lattice::LatticeConfig c;
  c.lambda = 0.0;
  c.alpha1 = 1.0;
  c.alpha2 = 1.0;
  c.beta = 0.0;
  c.n_sites = 40;
  c.z_max = z_max;
  c.dz = dz;
  return c;
}

// Largest amplitude deviation from the oracle at every stride-th sample.
double oracle_deviation(const lattice::LatticeConfig& c, int stride) {
  const auto psi0 = lattice::site_excitation(c.n_sites, 0);
  const auto traj = lattice::propagate_rk4(c, psi0);
  double worst = 0.0;
  const std::size_t last = traj.z_samples.size() - 1;
  for (std::size_t s = 0; s <= last; ++s) {
    if (s % static_cast<std::size_t>(stride) != 0 && s != last) continue;
    const auto exact = lattice::propagate_oracle(c, psi0, traj.z_samples[s]);
    for (std::size_t n = 0; n < exact.size(); ++n) {
      worst = std::max(worst, std::abs(exact[n] - traj.amplitudes[s][n]));
    }
  }
  return worst;
}

CheckResult lattice_oracle(const CheckContext&) {
  const auto c = glauber_fock(2.0, 1e-3);
  return with_truncation(finish("lattice_oracle", oracle_deviation(c, 100), 1e-6,
                                "Glauber-Fock, site 0, dz=1e-3, Z<=2"),
                         c.n_sites, std::nullopt);
}

CheckResult lattice_order(const CheckContext&) {
  const double coarse = oracle_deviation(glauber_fock(2.0, 2e-2), 1);
  const double fine = oracle_deviation(glauber_fock(2.0, 1e-2), 2);
  const double order = std::log2(coarse / fine);
  auto r = finish("lattice_order", std::abs(order - 4.0), 0.5,
                  "measured order " + std::to_string(order) + " from dz=2e-2 and 1e-2");
  r.n_trunc = 40;
  return r;
}

CheckResult lattice_norm(const CheckContext&) {
  const auto c = glauber_fock(10.0, 1e-3);
  const auto traj = lattice::propagate_rk4(c, lattice::site_excitation(c.n_sites, 0));
  double worst = 0.0;
  for (double n : traj.norms) worst = std::max(worst, std::abs(n - 1.0));
  auto r = finish("lattice_norm", worst, 1e-8, "Hermitian Glauber-Fock, Z<=10");
  r.n_trunc = c.n_sites;
  return r;
}

CheckResult lattice_growth(const CheckContext&) {
  lattice::LatticeConfig c;
  c.lambda = 0.0;
  c.alpha1 = 0.2;
  c.alpha2 = -0.2;
  c.beta = 0.0;
  c.n_sites = 6;
  c.z_max = 15.0;
  c.dz = 1e-3;
  const auto traj = lattice::propagate_rk4(c, lattice::site_excitation(c.n_sites, 0));
  const auto eig = linalg::eig_general(-1.0 * lattice::build_lattice_generator(c));
  double rate = -1e300;
  for (Complex e : eig.eigenvalues) rate = std::max(rate, e.imag());
  const std::size_t at10 = static_cast<std::size_t>(std::lround(10.0 / (c.z_max / c.step_count())));
  const std::size_t at15 = traj.norms.size() - 1;
  const double slope = (std::log(traj.norms[at15]) - std::log(traj.norms[at10])) /
                       (traj.z_samples[at15] - traj.z_samples[at10]);
  const double rel = std::abs(slope - 2.0 * rate) / (2.0 * rate);
  auto r = finish("lattice_growth", rel, 0.05,
                  "log-norm slope " + std::to_string(slope) + " vs 2 max Im eig(-M) " +
                      std::to_string(2.0 * rate));
  r.n_trunc = c.n_sites;
  return r;
}

using CheckFn = CheckResult (*)(const CheckContext&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"spin_sweep_pauli", spin_sweep_pauli},
      {"spin_sweep_higher", spin_sweep_higher},
      {"exceptional_point", exceptional_point},
      {"spin_isospectral", spin_isospectral},
      {"branch_cut", branch_cut},
      {"swanson_symmetric", swanson_symmetric},
      {"swanson_spectrum", swanson_spectrum},
      {"swanson_regimes", swanson_regimes},
      {"nu_form", nu_form_consistency},
      {"scale_identity", scale_identity},
      {"deformed_equivalent", deformed_equivalent},
      {"general_deformation", general_deformation},
      {"coherent_map", coherent_map},
      {"scaling_convergence", scaling_convergence},
      {"wick_phase", wick_phase},
      {"lattice_oracle", lattice_oracle},
      {"lattice_order", lattice_order},
      {"lattice_norm", lattice_norm},
      {"lattice_growth", lattice_growth},
  };
  return table;
}

}  // namespace

nlohmann::json CheckResult::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["n_trunc"] = n_trunc ? nlohmann::json(*n_trunc) : nlohmann::json(nullptr);
  j["interior_fraction"] =
      interior_fraction ? nlohmann::json(*interior_fraction) : nlohmann::json(nullptr);
  j["max_err"] = max_err;
  j["threshold"] = threshold;
  j["pass"] = pass;
  j["detail"] = detail;
  return j;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

CheckResult run_check(const std::string& name, const CheckContext& ctx) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn(ctx);
  }
  throw std::out_of_range("run_check: unknown check " + name);
}

}  // namespace ptdyn::cli
