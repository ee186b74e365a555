#include "ptdyn_cli/app.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "ptdyn/branch.hpp"
#include "ptdyn/csv.hpp"
#include "ptdyn/eigen.hpp"
#include "ptdyn/lattice.hpp"
#include "ptdyn/spin.hpp"
#include "ptdyn/swanson.hpp"
#include "ptdyn_cli/checks.hpp"

namespace ptdyn::cli {

namespace {

using linalg::Complex;
using nlohmann::json;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write output file " + path);
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw ConfigError("failed writing output file " + path);
}

void write_json_file(const std::string& path, const json& doc) {
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
  close_output(out, path);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

int run_spin_sweep(const RunConfig& cfg, unsigned threads) {
  const auto conv =
      cfg.string("convention") == "pauli" ? spin::Convention::kPauli : spin::Convention::kSpin;
  spin::SpinParams tmpl;
  tmpl.j = spin::SpinQuantumNumber::from_value(cfg.number("j"));
  tmpl.epsilon = cfg.number("epsilon");
  tmpl.gamma = cfg.number("gamma");
  if (conv == spin::Convention::kPauli) {
    if (tmpl.j.twice() != 1) throw DomainError("spin-sweep: Pauli convention requires j = 1/2");
    // Stored in Pauli units; sweep_spectrum converts each point.
  }
  const auto rows = spin::sweep_spectrum(tmpl, cfg.number("k_min"), cfg.number("k_max"),
                                         cfg.integer("n_points"), conv, threads,
                                         cfg.number("classification_tol"));
  auto out = open_output(cfg.output_path);
  io::write_sweep_csv(out, rows);
  close_output(out, cfg.output_path);
  return kExitOk;
}

int run_branch_map(const RunConfig& cfg, unsigned threads) {
  const auto branch = cfg.string("branch") == "negative" ? branch::Branch::kNegative
                                                         : branch::Branch::kPositive;
  const auto grid = branch::branch_grid(
      cfg.number("gamma"), {cfg.number("re_min"), cfg.number("re_max")},
      {cfg.number("im_min"), cfg.number("im_max")}, cfg.integer("resolution"), branch, threads);
  auto out = open_output(cfg.output_path);
  io::write_branch_csv(out, grid);
  close_output(out, cfg.output_path);
  return kExitOk;
}

int run_swanson(const RunConfig& cfg) {
  fock::SwansonParams p;
  p.lambda = cfg.number("lambda");
  p.alpha1 = cfg.number("alpha1");
  p.alpha2 = cfg.number("alpha2");
  p.beta1 = cfg.number("beta1");
  p.beta2 = cfg.number("beta2");
  p.n_trunc = cfg.integer("n_trunc");
  const int levels = cfg.integer("n_levels");
  if (levels < 1 || levels > p.n_trunc / 4) {
    throw DomainError("swanson: n_levels must lie in [1, n_trunc/4]");
  }
  const auto rows = fock::regime_sweep(p, cfg.number("d_min"), cfg.number("d_max"),
                                       cfg.integer("d_points"));
  const auto coeff = fock::chain_coefficients(p);

  json report;
  report["gamma1"] = coeff.gamma1;
  report["gamma2"] = coeff.gamma2;
  report["delta"] = coeff.delta;
  report["zeta"] = complex_json(coeff.zeta);
  report["zeta_discarded"] = complex_json(coeff.zeta_discarded);
  report["lambda_tilde"] = complex_json(coeff.lambda_tilde);
  report["lambda_tilde_partner"] = complex_json(coeff.lambda_tilde_partner);
  report["discriminant"] = coeff.discriminant;
  report["regime"] = std::string(to_string(coeff.regime));
  report["squeeze_arg"] = coeff.squeeze_arg ? json(*coeff.squeeze_arg) : json(nullptr);
  report["squeeze_angle"] = coeff.squeeze_angle ? json(*coeff.squeeze_angle) : json(nullptr);
  json notes = json::array();
  try {
    const auto chain = fock::transform_chain(p);
    report["h2_residual"] = chain.h2_residual;
    report["h3_residual"] = chain.h3_residual;
    report["h3_diag_residual"] = chain.h3_diag_residual;
    for (const auto& n : chain.notes) notes.push_back(n);
  } catch (const ChainStepError& e) {
    notes.push_back(e.what());
  }
  if (const auto warn = fock::spectrum_warning(p)) notes.push_back(*warn);
  report["notes"] = notes;

  std::vector<double> analytic;
  try {
    analytic = fock::gsw_spectrum(p, levels);
  } catch (const DomainError& e) {
    notes.push_back(std::string("no closed-form spectrum: ") + e.what());
    report["notes"] = notes;
  }
  const auto numeric = linalg::eig_general(fock::build_gsw(p)).eigenvalues;

  auto out = open_output(cfg.output_path);
  out << "n,analytic_E,re_numeric_E,im_numeric_E\n";
  for (int n = 0; n < levels; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out << n << ',' << (analytic.empty() ? "nan" : io::format_double(analytic[i])) << ','
        << io::format_double(numeric[i].real()) << ',' << io::format_double(numeric[i].imag())
        << '\n';
  }
  close_output(out, cfg.output_path);

  const std::string regimes_path = cfg.output_path + ".regimes.csv";
  auto rout = open_output(regimes_path);
  io::write_regime_csv(rout, rows);
  close_output(rout, regimes_path);
  write_json_file(cfg.output_path + ".chain.json", report);
  return kExitOk;
}

int run_lattice(const RunConfig& cfg) {
  lattice::LatticeConfig c;
  c.lambda = cfg.number("lambda");
  c.alpha1 = cfg.number("alpha1");
  c.alpha2 = cfg.number("alpha2");
  c.beta = cfg.number("beta");
  c.n_sites = cfg.integer("n_sites");
  c.z_max = cfg.number("z_max");
  c.dz = cfg.number("dz");
  c.validate();
  const auto traj =
      lattice::propagate_rk4(c, lattice::site_excitation(c.n_sites, cfg.integer("initial_site")));
  auto out = open_output(cfg.output_path);
  io::write_trajectory_csv(out, traj);
  close_output(out, cfg.output_path);
  return kExitOk;
}

int run_verify(const RunConfig& cfg, unsigned threads, std::ostream& log) {
  CheckContext ctx;
  ctx.seed = cfg.seed;
  ctx.random_draws = cfg.integer("random_draws");
  ctx.threads = threads;
  if (ctx.random_draws < 1) throw DomainError("verify: random_draws must be positive");
  auto out = open_output(cfg.output_path);
  bool all_pass = true;
  for (const auto& name : cfg.string_list("checks")) {
    const auto result = run_check(name, ctx);
    out << result.to_json().dump() << '\n';
    all_pass = all_pass && result.pass;
    log << (result.pass ? "PASS " : "FAIL ") << name << " max_err=" << result.max_err
        << " threshold=" << result.threshold << '\n';
  }
  close_output(out, cfg.output_path);
  return all_pass ? kExitOk : kExitNumerical;
}

std::optional<int> parse_positive(const std::string& text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || v < 1) return std::nullopt;
  return v;
}

}  // namespace

unsigned resolve_threads(std::optional<int> flag, const char* env_value) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--threads must be a positive integer");
    return static_cast<unsigned>(*flag);
  }
  if (env_value != nullptr && *env_value != '\0') {
    const auto v = parse_positive(env_value);
    if (!v) throw ConfigError("PTDYN_THREADS must be a positive integer");
    return static_cast<unsigned>(*v);
  }
  return 1;
}

int execute(const RunConfig& config, unsigned threads, std::ostream& log) {
  write_json_file(config.output_path + ".config.json", config.to_json());
  switch (config.command) {
    case Command::kSpinSweep:
      return run_spin_sweep(config, threads);
    case Command::kBranchMap:
      return run_branch_map(config, threads);
    case Command::kSwanson:
      return run_swanson(config);
    case Command::kLattice:
      return run_lattice(config);
    case Command::kVerify:
      return run_verify(config, threads, log);
  }
  return kExitValidation;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-Hermitian spectral and dynamics toolkit", "ptdyn"};
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads_flag;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_path, "Output path, overrides output_path");
  app.add_option("--seed", seed, "Seed for randomized checks, overrides seed");
  app.add_option("--threads", threads_flag, "Worker threads, overrides PTDYN_THREADS");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ptdyn: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    const unsigned threads = resolve_threads(threads_flag, std::getenv("PTDYN_THREADS"));
    const RunConfig cfg = load_config(config_path, out_path, seed);
    return execute(cfg, threads, out);
  } catch (const ConfigError& e) {
    err << "ptdyn: validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "ptdyn: invalid parameters: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DimensionError& e) {
    err << "ptdyn: invalid dimensions: " << e.what() << '\n';
    return kExitValidation;
  } catch (const BlowUpError& e) {
    err << "ptdyn: numerical failure: " << e.what() << " (last stable Z = " << e.last_stable_z()
        << ")\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "ptdyn: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace ptdyn::cli
