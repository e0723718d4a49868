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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvqe/cvqe.hpp"
#include "cvqe/fci.hpp"
#include "cvqe/fcidump.hpp"
#include "cvqe/geometry.hpp"
#include "cvqe/prep.hpp"

namespace cvqe {

struct RunConfig {
  std::string geometry = "well";  // built-in label or xyz/table path
  std::string fcidump;            // optional: integrals from file instead
  std::string basis = "sto-6g";
  int charge = 1;
  int two_s = -1;  // < 0: lowest spin
  int K = 1;
  double hbar_omega = 1.0;
  long long shots = 4096;
  std::uint64_t seed = 1;
  long long count_threshold = 1;
  double prune_threshold_ha = 0.0;
  bool drop_diagonal = false;
  std::string term_order = "magnitude_desc";
  double noise_lambda = 0.0;
  double condition_margin = 0.5;
  /// Discard sampled outcomes outside the reference (N, Sz) sector.
  bool postselect_sector = true;
  std::string regime;
  std::string output_dir;
  std::string large_basis_table;
  int n_seeds = 1;

  TrotterConfig trotter() const;
  void validate() const;
};

/// Regime presets: A (K=500, 10 Ha), B (K=1000, 1 Ha), C (K=1, prune 0.02 Ha,
/// diagonal dropped, 2^12 shots; hbar_omega left as configured).
void apply_regime(RunConfig& config, std::string_view regime);

/// Count-threshold presets for the four hardware panels.
inline constexpr long long kThresholdPresets[4] = {750, 750, 1450, 5000};

/// Everything deterministic that precedes state preparation.
struct PreparedSystem {
  std::string label;
  int n_alpha = 0;
  int n_beta = 0;
  double e_hf = 0.0;
  std::optional<SCFResult> scf;
  MOIntegrals mo;
  SecondQuantizedHamiltonian sq;
  PauliSum hamiltonian;
  PauliSum h0;
  ModelHamiltonian model;
  FCISolution fci;
  FockIndex phi0 = 0;
  std::vector<std::string> warnings;
};

PreparedSystem prepare_system(const RunConfig& config);

/// Model Hamiltonian from MO integrals alone: eps_p = h_pp + sum_q <pq||pq>
/// over occupied q (used when integrals come from a file).
ModelHamiltonian model_from_integrals(const SecondQuantizedHamiltonian& sq,
                                      FockIndex reference, double e_ref);

struct PreparedStates {
  StateVector trapezoidal;
  StateVector guiding;
  double e_trapezoidal = 0.0;
  double e_guiding = 0.0;
  ConditionReport conditions;
  CircuitStats circuit;
};

PreparedStates prepare_states(const PreparedSystem& system, const RunConfig& config);

struct DistributionMetrics {
  double tv = 0.0;
  double kl_smoothed = 0.0;
  double support_overlap = 0.0;
};

DistributionMetrics compare_distributions(const Distribution& p, const Distribution& q);

struct StageReport {
  RunConfig config;
  std::string label;
  std::map<std::string, Distribution> distributions;  // keyed by label text
  double e_hf = 0.0;
  double e_g = 0.0;
  double e_trapezoidal = 0.0;
  double e_guiding = 0.0;
  double e_optimized = 0.0;
  double omega0 = 0.0;
  double s_squared = 0.0;
  double s_z = 0.0;
  std::size_t subspace_size = 0;
  std::size_t discarded_outcomes = 0;
  std::uint64_t seed = 0;
  ConditionReport conditions;
  CircuitStats circuit;
  std::map<std::string, DistributionMetrics> metrics;  // each vs pGndD
  std::vector<std::string> warnings;

  double error_ev(double e) const { return units::to_ev(std::abs(e - e_g)); }
  double trapezoidal_error_ev() const { return error_ev(e_trapezoidal); }
  double guiding_error_ev() const { return error_ev(e_guiding); }
  double optimized_error_ev() const { return error_ev(e_optimized); }
};

/// Sampling and classical optimization on top of prepared states.
StageReport sample_and_optimize(const PreparedSystem& system, const PreparedStates& states,
                                const RunConfig& config, std::uint64_t seed);

StageReport run_pipeline(const RunConfig& config);

struct MultiSeedSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<double> optimized_errors_ev;
  double median = 0.0;
  double q10 = 0.0;
  double q90 = 0.0;
  double fraction_below_chemical_accuracy = 0.0;
};

/// Seeds config.seed, config.seed + 1, ...; preparation runs once.
MultiSeedSummary run_multi_seed(const RunConfig& config, int n_seeds);
MultiSeedSummary summarize_errors(std::vector<std::uint64_t> seeds, std::vector<double> errors);

struct SweepRow {
  std::string label;
  double e_hf = 0.0;
  double e_g = 0.0;
  double e_star = 0.0;
  std::optional<double> e_hf_large;
  std::optional<double> corrected_fci;
  std::optional<double> corrected_cvqe;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  /// last minus first, eV; absent for a single geometry.
  std::optional<double> delta_fci_ev;
  std::optional<double> delta_cvqe_ev;
  std::optional<double> delta_hf_ev;
  std::optional<double> delta_corrected_fci_ev;
  std::optional<double> delta_corrected_cvqe_ev;
  std::optional<double> delta_hf_large_ev;
};

/// Runs the full pipeline at each geometry. When `table` is given every label
/// must be present, otherwise UnavailableCorrectionError.
SweepTable sweep_reaction_path(const std::vector<std::string>& geometries,
                               const RunConfig& config,
                               const std::optional<LargeBasisTable>& table = std::nullopt);

struct OmegaScanRow {
  double hbar_omega = 0.0;
  double p_reference = 0.0;
  Distribution guiding;
};

std::vector<OmegaScanRow> omega_scan(const RunConfig& config, const std::vector<double>& omegas,
                                     std::vector<std::string>* warnings = nullptr);

/// Resolves the output directory against the CVQE_OUTPUT_ROOT override.
std::string resolve_output_dir(const std::string& dir);

/// Writes report.json and one CSV per distribution; returns written paths.
std::vector<std::string> emit_report(const StageReport& report, const std::string& dir);

/// Tabular form: `index,bitstring,probability`, ordered by descending pGndD
/// probability, ties by index; entries below 1e-12 omitted.
std::string distribution_csv(const Distribution& dist, const Distribution& ground);

std::string report_to_json(const StageReport& report);
StageReport report_from_json(const std::string& text);

std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(const std::string& text);
RunConfig read_config_file(const std::string& path);

std::string sweep_to_json(const SweepTable& table);

}  // namespace cvqe
