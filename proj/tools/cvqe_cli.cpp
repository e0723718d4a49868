// Copyright 2026 The cvqe-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "cvqe/pipeline.hpp"

namespace {

using namespace cvqe;

/// Flags that mirror RunConfig fields. Values only override the config file
/// when given explicitly on the command line.
struct ConfigFlags {
  std::string config_path;
  RunConfig v;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> bound;

  template <typename T>
  void bind(CLI::App* app, const std::string& name, T RunConfig::*field, const std::string& help) {
    CLI::Option* opt = app->add_option(name, v.*field, help);
    bound.emplace_back(opt, [this, field](RunConfig& c) { c.*field = v.*field; });
  }

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON config file");
    auto* regime = app->add_option("--regime", v.regime, "Preset A, B or C");
    bound.emplace_back(regime, [this](RunConfig& c) { apply_regime(c, v.regime); });
    bind(app, "--geometry", &RunConfig::geometry, "Built-in label or geometry file");
    bind(app, "--fcidump", &RunConfig::fcidump, "Integrals from an FCIDUMP file");
    bind(app, "--basis", &RunConfig::basis, "sto-3g or sto-6g");
    bind(app, "--charge", &RunConfig::charge, "Molecular charge");
    bind(app, "--two-s", &RunConfig::two_s, "2S (negative: lowest)");
    bind(app, "--K", &RunConfig::K, "Trapezoid steps");
    bind(app, "--hbar-omega", &RunConfig::hbar_omega, "Adiabatic energy scale (Ha)");
    bind(app, "--shots", &RunConfig::shots, "Measurement shots");
    bind(app, "--seed", &RunConfig::seed, "RNG seed");
    bind(app, "--count-threshold", &RunConfig::count_threshold, "Minimum count");
    bind(app, "--prune-threshold-ha", &RunConfig::prune_threshold_ha, "Pauli prune threshold (Ha)");
    bind(app, "--drop-diagonal", &RunConfig::drop_diagonal, "Drop {I,Z}-only strings");
    bind(app, "--term-order", &RunConfig::term_order, "magnitude_desc, canonical, magnitude_asc");
    bind(app, "--noise-lambda", &RunConfig::noise_lambda, "Uniform mixing weight");
    bind(app, "--condition-margin", &RunConfig::condition_margin, "Margin for the adiabatic conditions");
    bind(app, "--postselect-sector", &RunConfig::postselect_sector, "Keep only reference-sector outcomes");
    bind(app, "--output-dir", &RunConfig::output_dir, "Report directory");
    bind(app, "--large-basis-table", &RunConfig::large_basis_table, "Large-basis HF energy table");
    bind(app, "--n-seeds", &RunConfig::n_seeds, "Seeds for multi-seed mode");
  }

  RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : read_config_file(config_path);
    // Regime first so explicit flags win over the preset.
    for (const auto& [opt, apply] : bound)
      if (opt->count() > 0 && opt->get_name() == "--regime") apply(c);
    for (const auto& [opt, apply] : bound)
      if (opt->count() > 0 && opt->get_name() != "--regime") apply(c);
    c.validate();
    return c;
  }
};

void print_report(const StageReport& r) {
  std::printf("geometry            %s\n", r.label.c_str());
  std::printf("E_HF                %.12f Ha\n", r.e_hf);
  std::printf("E_g (FCI)           %.12f Ha  (%.6f eV)\n", r.e_g, units::to_ev(r.e_g));
  std::printf("<S^2>, <Sz>         %.10f, %.10f\n", r.s_squared, r.s_z);
  std::printf("hbar omega0         %.6f Ha\n", r.omega0);
  std::printf("conditions          left %.4g (%s), right %.4g (%s)\n", r.conditions.left_ratio,
              to_string(r.conditions.left).c_str(), r.conditions.right_ratio,
              to_string(r.conditions.right).c_str());
  std::printf("trapezoidal error   %.6e eV\n", r.trapezoidal_error_ev());
  std::printf("guiding error       %.6e eV\n", r.guiding_error_ev());
  std::printf("optimized error     %.6e eV  (|N_S| = %zu, discarded %zu)\n", r.optimized_error_ev(),
              r.subspace_size, r.discarded_outcomes);
  std::printf("cnot estimate       %lld over %lld rotations\n", r.circuit.cnot_estimate,
              r.circuit.total_rotations);
  for (const auto& [k, m] : r.metrics)
    std::printf("TV(%-5s, pGndD)    %.6e\n", k.c_str(), m.tv);
  for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
}

int cmd_run(const ConfigFlags& flags) {
  const RunConfig c = flags.resolve();
  if (c.n_seeds > 1) {
    const MultiSeedSummary s = run_multi_seed(c, c.n_seeds);
    std::printf("seeds %d: median %.6e eV, q10 %.6e, q90 %.6e, below chemical accuracy %.2f\n",
                c.n_seeds, s.median, s.q10, s.q90, s.fraction_below_chemical_accuracy);
    for (std::size_t k = 0; k < s.seeds.size(); ++k)
      std::printf("  seed %llu  %.6e eV\n", static_cast<unsigned long long>(s.seeds[k]),
                  s.optimized_errors_ev[k]);
    return 0;
  }
  const StageReport r = run_pipeline(c);
  print_report(r);
  const std::string dir = resolve_output_dir(c.output_dir);
  for (const auto& p : emit_report(r, dir)) std::printf("wrote %s\n", p.c_str());
  return 0;
}

int cmd_sweep(const ConfigFlags& flags, const std::vector<std::string>& geometries) {
  const RunConfig c = flags.resolve();
  std::optional<LargeBasisTable> table;
  if (!c.large_basis_table.empty()) table = LargeBasisTable::read_file(c.large_basis_table);
  const SweepTable t = sweep_reaction_path(geometries, c, table);
  std::cout << sweep_to_json(t) << "\n";
  if (!c.output_dir.empty()) {
    const std::string dir = resolve_output_dir(c.output_dir);
    std::filesystem::create_directories(dir);
    std::ofstream(std::filesystem::path(dir) / "sweep.json") << sweep_to_json(t);
  }
  return 0;
}

int cmd_scan(const ConfigFlags& flags, const std::vector<double>& omegas) {
  const RunConfig c = flags.resolve();
  std::vector<std::string> warnings;
  const auto rows = omega_scan(c, omegas, &warnings);
  for (const auto& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("hbar_omega_ha,p_reference\n");
  for (const auto& r : rows) std::printf("%.17g,%.17g\n", r.hbar_omega, r.p_reference);
  return 0;
}

int cmd_conditions(const ConfigFlags& flags, double omega0) {
  const RunConfig c = flags.resolve();
  if (!(omega0 > 0.0)) omega0 = prepare_system(c).model.omega0;
  const ConditionReport r = check_conditions(c.K, c.hbar_omega, omega0, c.condition_margin);
  std::printf("K=%d hbar_omega=%.6g hbar_omega0=%.6g margin=%.3g\n", c.K, c.hbar_omega, omega0, r.margin);
  std::printf("left  (hbar_omega/K)/hbar_omega0 = %.6g  %s\n", r.left_ratio, to_string(r.left).c_str());
  std::printf("right hbar_omega0/hbar_omega     = %.6g  %s\n", r.right_ratio, to_string(r.right).c_str());
  return 0;
}

int cmd_fcidump_export(const ConfigFlags& flags, const std::string& out) {
  const RunConfig c = flags.resolve();
  const PreparedSystem s = prepare_system(c);
  const std::string text = write_fcidump(s.mo, s.n_alpha, s.n_beta);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw IoError("cannot write '" + out + "'");
    f << text;
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_fcidump_import(const std::string& path) {
  RunConfig c;
  c.fcidump = path;
  const PreparedSystem s = prepare_system(c);
  std::printf("norb %d  nelec %d  (alpha %d, beta %d)\n", s.mo.n_mo, s.n_alpha + s.n_beta, s.n_alpha,
              s.n_beta);
  std::printf("E_ref %.12f Ha\n", s.e_hf);
  std::printf("E_FCI %.12f Ha  (%.6f eV)\n", s.fci.energy, units::to_ev(s.fci.energy));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascaded VQE pipeline for hydrogen clusters"};
  app.require_subcommand(1);

  ConfigFlags run_flags, sweep_flags, scan_flags, cond_flags, export_flags;
  auto* run = app.add_subcommand("run", "Run the full pipeline for one configuration");
  run_flags.attach(run);

  auto* sweep = app.add_subcommand("sweep", "Reaction-path energies");
  sweep_flags.attach(sweep);
  std::vector<std::string> geometries{"reactants", "well", "products"};
  sweep->add_option("--geometries", geometries, "Geometry labels or files, in path order");

  auto* scan = app.add_subcommand("scan-omega", "Guiding-state reference probability versus hbar_omega");
  scan_flags.attach(scan);
  std::vector<double> omegas{1.0, 1.0 / 3.0, 1.0 / 5.0, 1.0 / 10.0};
  scan->add_option("--omegas", omegas, "hbar_omega values (Ha)");

  auto* cond = app.add_subcommand("check-conditions", "Discretized adiabatic conditions");
  cond_flags.attach(cond);
  double omega0 = 0.0;
  cond->add_option("--omega0", omega0, "Model gap (Ha); computed from the system when absent");

  auto* fcidump = app.add_subcommand("fcidump", "FCIDUMP import/export");
  fcidump->require_subcommand(1);
  auto* exp = fcidump->add_subcommand("export", "Write MO integrals");
  export_flags.attach(exp);
  std::string out;
  exp->add_option("-o,--output", out, "Destination (stdout when omitted)");
  auto* imp = fcidump->add_subcommand("import", "Read integrals and solve FCI");
  std::string in_path;
  imp->add_option("path", in_path, "FCIDUMP file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_flags);
    if (*sweep) return cmd_sweep(sweep_flags, geometries);
    if (*scan) return cmd_scan(scan_flags, omegas);
    if (*cond) return cmd_conditions(cond_flags, omega0);
    if (*exp) return cmd_fcidump_export(export_flags, out);
    if (*imp) return cmd_fcidump_import(in_path);
  } catch (const StageError& e) {
    std::fprintf(stderr, "error [stage %s]: %s\n", e.stage().c_str(), e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
