// qqtool: command-line front end to the qq library.
//
//   qqtool quantumness --state rho.json [--rounds N --tol T --seed S --out r.json]
//   qqtool qq-search --two-j 4 [--restarts R --seed S --out r.json --export-plot dir]
//   qqtool qq-table --from 2 --to 6
//   qqtool export-sphere --result r.json --out dir
//
// Every JSON output embeds the run manifest without its duration; with
// --out, the full manifest is written next to it as <out>.manifest.json.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qq/classicality.hpp"
#include "qq/io.hpp"
#include "qq/kernels.hpp"
#include "qq/qq_search.hpp"

using namespace qq;
using io::json;

namespace {

struct Common {
  std::uint64_t seed = 20100101;
  int rounds = 0;
  int restarts = 0;
  double tol = 0.0;
  std::string out;
  std::string state;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const std::string& command, const json& config, const Common& c, json body,
          std::chrono::steady_clock::time_point t0) {
  io::RunManifest man;
  man.command = command;
  man.config = config;
  man.rng_seed = c.seed;
  body["manifest"] = man.reproducible();
  if (c.out.empty()) {
    std::cout << body.dump(2) << '\n';
    return;
  }
  io::write_file(c.out, body);
  man.wall_clock_seconds = seconds_since(t0);
  io::write_file(c.out + ".manifest.json", man.full());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void export_sphere(const std::filesystem::path& dir, const MajoranaConfig& config, const ClassicalMixture& mixture) {
  std::filesystem::create_directories(dir);
  const std::string atoms = io::atoms_csv(mixture);
  write_text(dir / "majorana.csv", io::majorana_csv(config));
  write_text(dir / "coherent_atoms.csv", atoms);
}

QPConfig qp_config(const Common& c) {
  QPConfig cfg;
  cfg.rng_seed = c.seed;
  if (c.rounds > 0) cfg.n_rounds = c.rounds;
  if (c.tol > 0.0) cfg.convergence_tol = c.tol;
  cfg.validate();
  return cfg;
}

SearchConfig search_config(const Common& c) {
  SearchConfig cfg;
  cfg.rng_seed = c.seed;
  cfg.n_restarts = c.restarts;
  if (c.rounds > 0) cfg.inner.n_rounds = c.rounds;
  if (c.tol > 0.0) cfg.polish_tol = c.tol;
  cfg.validate();
  return cfg;
}

json resolved(const SearchConfig& cfg, SpinJ spin) {
  json j = io::to_json(cfg);
  j["n_restarts"] = cfg.restarts_for(spin);
  return j;
}

DensityMatrix load_density(const Common& c) {
  if (c.state.empty()) throw std::invalid_argument("--state is required");
  return io::as_density(io::state_from_json(io::read_file(c.state)));
}

json bounds_json(const BoundsReport& b) {
  return {{"purity_bound", b.purity_bound},
          {"pure_bound", b.pure_bound},
          {"coherent_bound", b.coherent_bound},
          {"husimi_max", b.husimi_max},
          {"husimi_argmax", {b.husimi_argmax.theta_bar, b.husimi_argmax.phi}}};
}

json verdict_json(const Spin1Verdict& v) {
  return {{"classical", v.classical}, {"min_eigenvalue_of_z", v.min_eigenvalue_of_z}};
}

CMatrix named_hamiltonian(const std::string& name) {
  const SpinOperators o = spin_operators(SpinJ(2));
  if (name == "jz") return o.jz;
  if (name == "jz2") return o.jz * o.jz;
  if (name == "jx") return o.jx;
  if (name == "jx2") return o.jx * o.jx;
  const json j = io::read_file(name);
  return io::density_from_json(j).matrix();
}

json row_json(const QQResult& r) {
  const double dim = r.state.spin().dim();
  return {{"two_j", r.state.spin().two_j()},
          {"q_squared", r.q_squared},
          {"fit", 1.0 - 2.0 / dim},
          {"bound", 1.0 - 1.0 / dim},
          {"signature", canonical_signature(r.config).angles},
          {"distinct_optima", r.distinct_optima},
          {"eigen_residual", r.eigen_residual}};
}

}  // namespace

int main(int argc, char** argv) {
  kernels::apply_thread_env();
  CLI::App app{"Distance of spin states to the classical (coherent-mixture) states"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&c](CLI::App* s) {
    s->add_option("--seed", c.seed, "RNG seed");
    s->add_option("--out", c.out, "output JSON file (stdout when omitted)");
  };
  auto add_qp = [&c](CLI::App* s) {
    s->add_option("--rounds", c.rounds, "maximum resample/merge rounds")->check(CLI::PositiveNumber);
    s->add_option("--tol", c.tol, "convergence tolerance of the QP")->check(CLI::PositiveNumber);
  };
  auto add_state = [&c](CLI::App* s) { s->add_option("--state", c.state, "state JSON file")->required()->check(CLI::ExistingFile); };

  auto* quant = app.add_subcommand("quantumness", "distance to the classical states, with bounds");
  add_common(quant);
  add_qp(quant);
  add_state(quant);

  double classify_tol = 1e-4;
  auto* classify = app.add_subcommand("classify", "classical or not: exact for j = 1, numerical otherwise");
  add_common(classify);
  add_state(classify);
  classify->add_option("--tol", classify_tol, "Q below this counts as classical for j > 1")->check(CLI::PositiveNumber);

  int husimi_grid = kDefaultHusimiGrid;
  auto* bnd = app.add_subcommand("bounds", "analytic upper bounds on Q");
  add_common(bnd);
  add_state(bnd);
  bnd->add_option("--grid", husimi_grid, "Husimi search grid size")->check(CLI::Range(100, 1000000));

  std::string hamiltonian = "jz2";
  double beta_hi = 50.0, scan_tol = 1e-6;
  auto* thermal = app.add_subcommand("thermal-scan", "critical inverse temperature of a spin-1 Hamiltonian");
  add_common(thermal);
  thermal->add_option("--hamiltonian", hamiltonian, "jz, jz2, jx, jx2 or a JSON file with a 3x3 \"matrix\"");
  thermal->add_option("--beta-max", beta_hi, "upper end of the scanned range")->check(CLI::PositiveNumber);
  thermal->add_option("--tol", scan_tol, "bisection tolerance on beta")->check(CLI::PositiveNumber);

  std::string maj_input;
  auto* maj = app.add_subcommand("majorana", "state -> Majorana points, or points -> state");
  add_common(maj);
  maj->add_option("--input", maj_input, "pure-state JSON or configuration JSON")->required()->check(CLI::ExistingFile);

  int two_j = 4;
  std::string plot_dir;
  auto* search = app.add_subcommand("qq-search", "maximize Q over pure states of one spin");
  add_common(search);
  add_qp(search);
  search->add_option("--two-j", two_j, "twice the spin")->check(CLI::Range(0, 10));
  search->add_option("--restarts", c.restarts, "number of restarts; 0 selects 8 * 2j")->check(CLI::NonNegativeNumber);
  search->add_option("--export-plot", plot_dir, "directory for majorana.csv and coherent_atoms.csv");

  int from = 2, to = 6;
  auto* table = app.add_subcommand("qq-table", "maximal Q^2 for a range of spins");
  add_common(table);
  add_qp(table);
  table->add_option("--from", from, "smallest 2j")->check(CLI::Range(0, 10));
  table->add_option("--to", to, "largest 2j")->check(CLI::Range(0, 10));
  table->add_option("--restarts", c.restarts, "restarts per spin; 0 selects 8 * 2j")->check(CLI::NonNegativeNumber);

  std::string result_file, export_dir = ".";
  auto* exp = app.add_subcommand("export-sphere", "sphere points of a qq-search result as CSV");
  exp->add_option("--result", result_file, "qq-search result JSON")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", export_dir, "output directory");

  auto* foot = app.add_subcommand("footnote-check", "minima of the two one-parameter reductions");
  add_common(foot);

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*quant) {
      const DensityMatrix rho = load_density(c);
      const QPConfig cfg = qp_config(c);
      const QPResult r = quantumness(rho, cfg);
      json body = io::to_json(r);
      body["bounds"] = bounds_json(bounds(rho));
      body["classical"] = r.q() < 1e-4;
      if (rho.spin().two_j() == 2) {
        const Spin1Verdict v = is_classical_spin1(rho);
        body["z_criterion"] = verdict_json(v);
        body["classical"] = v.classical;
      }
      emit("quantumness", io::to_json(cfg), c, std::move(body), t0);
    } else if (*classify) {
      const DensityMatrix rho = load_density(c);
      json body;
      json config = {{"tol", classify_tol}};
      if (rho.spin().two_j() == 2) {
        const Spin1Verdict v = is_classical_spin1(rho);
        body = verdict_json(v);
        body["method"] = "z_criterion";
      } else {
        QPConfig cfg = qp_config(c);
        const QPResult r = quantumness(rho, cfg);
        body = {{"classical", r.q() < classify_tol}, {"q", r.q()}, {"method", "qp"}};
        config["qp"] = io::to_json(cfg);
      }
      emit("classify", config, c, std::move(body), t0);
    } else if (*bnd) {
      const DensityMatrix rho = load_density(c);
      emit("bounds", {{"husimi_grid", husimi_grid}}, c, bounds_json(bounds(rho, husimi_grid)), t0);
    } else if (*thermal) {
      const ThermalScanResult r = thermal_scan(named_hamiltonian(hamiltonian), 0.0, beta_hi, scan_tol);
      json body = {{"always_classical", r.always_classical}, {"monotone", r.monotone},
                   {"prescan_samples", r.prescan_samples}};
      if (!r.always_classical) body["critical_beta"] = r.critical_beta;
      emit("thermal-scan", {{"hamiltonian", hamiltonian}, {"beta_max", beta_hi}, {"tol", scan_tol}}, c,
           std::move(body), t0);
    } else if (*maj) {
      const json in = io::read_file(maj_input);
      json body;
      if (in.contains("points")) {
        const MajoranaConfig cfg = io::config_from_json(in);
        body = {{"state", io::to_json(points_to_state(cfg))}, {"prefactor", majorana_prefactor(cfg)}};
      } else {
        const MajoranaConfig cfg = state_to_points(io::pure_state_from_json(in));
        body = {{"config", io::to_json(cfg)}, {"signature", canonical_signature(cfg).angles}};
      }
      emit("majorana", {{"input", maj_input}}, c, std::move(body), t0);
    } else if (*search) {
      const SpinJ spin(two_j);
      const SearchConfig cfg = search_config(c);
      const QQResult r = qq_search(spin, cfg);
      if (!plot_dir.empty()) export_sphere(plot_dir, r.config, r.mixture);
      emit("qq-search", resolved(cfg, spin), c, io::to_json(r), t0);
    } else if (*table) {
      if (from > to) throw std::invalid_argument("--from must not exceed --to");
      const SearchConfig cfg = search_config(c);
      json rows = json::array();
      std::printf("%5s %12s %12s %12s %s\n", "2j", "Q^2", "1-2/(2j+1)", "1-1/(2j+1)", "signature");
      for (int n = from; n <= to; ++n) {
        const QQResult r = qq_search(SpinJ(n), cfg);
        json row = row_json(r);
        std::string sig;
        const auto& a = canonical_signature(r.config).angles;
        for (std::size_t k = 0; k < a.size() && k < 6; ++k) sig += (k ? " " : "") + std::to_string(a[k]).substr(0, 6);
        if (a.size() > 6) sig += " ...";
        std::printf("%5d %12.7f %12.7f %12.7f %s\n", n, r.q_squared, row["fit"].get<double>(),
                    row["bound"].get<double>(), sig.c_str());
        std::fflush(stdout);
        rows.push_back(std::move(row));
      }
      if (!c.out.empty()) emit("qq-table", {{"from", from}, {"to", to}, {"search", io::to_json(cfg)}}, c, {{"rows", rows}}, t0);
    } else if (*exp) {
      const json in = io::read_file(result_file);
      if (!in.contains("mixture")) throw io::ParseError(result_file + ": missing field \"mixture\"");
      MajoranaConfig cfg;
      if (in.contains("config")) {
        cfg = io::config_from_json(in["config"]);
      } else if (in.contains("state")) {
        cfg = state_to_points(io::pure_state_from_json(in["state"]));
      } else {
        throw io::ParseError(result_file + ": missing field \"config\"");
      }
      export_sphere(export_dir, cfg, io::mixture_from_json(in["mixture"]));
      std::printf("wrote %s and %s\n", (std::filesystem::path(export_dir) / "majorana.csv").c_str(),
                  (std::filesystem::path(export_dir) / "coherent_atoms.csv").c_str());
    } else if (*foot) {
      const double a = table_footnote_check('a');
      const double b = table_footnote_check('b');
      emit("footnote-check", json::object(), c, {{"a", a}, {"b", b}}, t0);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qqtool: %s\n", e.what());
    return 1;
  }
  return 0;
}
