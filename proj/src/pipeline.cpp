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

#include "cvqe/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace cvqe {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string label_for(const std::string& source) {
  if (is_builtin_geometry(source)) return source;
  return fs::path(source).stem().string();
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::string bitstring(FockIndex n, int q) {
  std::string s(static_cast<std::size_t>(q), '0');
  for (int k = 0; k < q; ++k)
    if (n >> k & 1) s[static_cast<std::size_t>(q - 1 - k)] = '1';
  return s;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

DistributionLabel parse_label(const std::string& s) {
  for (auto l : {DistributionLabel::kPTD, DistributionLabel::kPGD, DistributionLabel::kSGD,
                 DistributionLabel::kPOD, DistributionLabel::kPGndD})
    if (to_string(l) == s) return l;
  throw FormatError("unknown distribution label '" + s + "'");
}

json dist_json(const Distribution& d) {
  json probs = json::array();
  for (const auto& [n, p] : d.probs) probs.push_back({n, p});
  return {{"label", to_string(d.label)}, {"n_qubits", d.n_qubits}, {"probs", probs}};
}

Distribution dist_from(const json& j) {
  Distribution d;
  d.label = parse_label(j.at("label").get<std::string>());
  d.n_qubits = j.at("n_qubits").get<int>();
  for (const auto& e : j.at("probs")) d.probs.emplace(e.at(0).get<FockIndex>(), e.at(1).get<double>());
  return d;
}

json config_json(const RunConfig& c) {
  return {{"geometry", c.geometry},
          {"fcidump", c.fcidump},
          {"basis", c.basis},
          {"charge", c.charge},
          {"two_s", c.two_s},
          {"K", c.K},
          {"hbar_omega", c.hbar_omega},
          {"shots", c.shots},
          {"seed", c.seed},
          {"count_threshold", c.count_threshold},
          {"prune_threshold_ha", c.prune_threshold_ha},
          {"drop_diagonal", c.drop_diagonal},
          {"term_order", c.term_order},
          {"noise_lambda", c.noise_lambda},
          {"condition_margin", c.condition_margin},
          {"postselect_sector", c.postselect_sector},
          {"regime", c.regime},
          {"output_dir", c.output_dir},
          {"large_basis_table", c.large_basis_table},
          {"n_seeds", c.n_seeds}};
}

RunConfig config_from(const json& j) {
  RunConfig c;
  if (j.contains("regime") && !j.at("regime").get<std::string>().empty()) {
    apply_regime(c, j.at("regime").get<std::string>());
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("geometry", c.geometry);
  get("fcidump", c.fcidump);
  get("basis", c.basis);
  get("charge", c.charge);
  get("two_s", c.two_s);
  get("K", c.K);
  get("hbar_omega", c.hbar_omega);
  get("shots", c.shots);
  get("seed", c.seed);
  get("count_threshold", c.count_threshold);
  get("prune_threshold_ha", c.prune_threshold_ha);
  get("drop_diagonal", c.drop_diagonal);
  get("term_order", c.term_order);
  get("noise_lambda", c.noise_lambda);
  get("condition_margin", c.condition_margin);
  get("postselect_sector", c.postselect_sector);
  get("output_dir", c.output_dir);
  get("large_basis_table", c.large_basis_table);
  get("n_seeds", c.n_seeds);
  if (j.contains("trotter")) {
    const auto& t = j.at("trotter");
    if (t.contains("prune_threshold_ha")) c.prune_threshold_ha = t.at("prune_threshold_ha").get<double>();
    if (t.contains("drop_diagonal")) c.drop_diagonal = t.at("drop_diagonal").get<bool>();
    if (t.contains("term_order")) c.term_order = t.at("term_order").get<std::string>();
  }
  return c;
}

json metrics_json(const DistributionMetrics& m) {
  return {{"tv", m.tv}, {"kl_smoothed", m.kl_smoothed}, {"support_overlap", m.support_overlap}};
}

json condition_json(const ConditionReport& r) {
  return {{"left_ratio", r.left_ratio},   {"right_ratio", r.right_ratio},
          {"margin", r.margin},           {"left", to_string(r.left)},
          {"right", to_string(r.right)}};
}

ConditionStatus parse_status(const std::string& s) {
  for (auto st : {ConditionStatus::kSatisfied, ConditionStatus::kMarginal, ConditionStatus::kViolated})
    if (to_string(st) == s) return st;
  throw FormatError("unknown condition status '" + s + "'");
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

TrotterConfig RunConfig::trotter() const {
  return {prune_threshold_ha, drop_diagonal, parse_term_order(term_order)};
}

void RunConfig::validate() const {
  if (K < 1) throw DomainError("K must be at least 1");
  if (!(hbar_omega > 0.0)) throw DomainError("hbar_omega must be positive");
  if (shots < 1) throw DomainError("shots must be at least 1");
  if (count_threshold < 0) throw DomainError("count_threshold must be nonnegative");
  if (prune_threshold_ha < 0.0) throw DomainError("prune_threshold_ha must be nonnegative");
  if (!(noise_lambda >= 0.0 && noise_lambda <= 1.0)) throw DomainError("noise_lambda must lie in [0, 1]");
  if (!(condition_margin > 0.0)) throw DomainError("condition_margin must be positive");
  if (n_seeds < 1) throw DomainError("n_seeds must be at least 1");
  parse_term_order(term_order);
  if (fcidump.empty()) parse_basis_set(basis);
}

void apply_regime(RunConfig& c, std::string_view regime) {
  if (regime == "A") {
    c.K = 500;
    c.hbar_omega = 10.0;
    c.shots = 1000000;
  } else if (regime == "B") {
    c.K = 1000;
    c.hbar_omega = 1.0;
    c.shots = 1000000;
  } else if (regime == "C") {
    c.K = 1;
    c.shots = 4096;
    c.prune_threshold_ha = 0.02;
    c.drop_diagonal = true;
  } else {
    throw DomainError("unknown regime '" + std::string(regime) + "' (expected A, B or C)");
  }
  c.regime = std::string(regime);
}

ModelHamiltonian model_from_integrals(const SecondQuantizedHamiltonian& sq,
                                      FockIndex reference, double e_ref) {
  const int q = sq.n_qubits();
  ModelHamiltonian m;
  m.reference = reference;
  m.h0_diag.resize(q);
  for (int p = 0; p < q; ++p) {
    double e = sq.one_body()(p, p);
    for (int r = 0; r < q; ++r)
      if ((reference >> r & 1) && r != p) e += sq.two_body(p, r, p, r);
    m.h0_diag(p) = e;
  }
  double occupied = 0.0;
  for (int p = 0; p < q; ++p)
    if (reference >> p & 1) occupied += m.h0_diag(p);
  m.shift = e_ref - occupied;
  m.omega0 = excitation_gap(m.h0_diag, reference, true);
  if (m.omega0 < 1e-8) {
    m.warnings.push_back("degenerate frontier orbitals: model gap " + std::to_string(m.omega0) + " Ha");
  }
  return m;
}

PreparedSystem prepare_system(const RunConfig& config) {
  stage("config", [&] { config.validate(); return 0; });
  PreparedSystem s;
  if (!config.fcidump.empty()) {
    const Fcidump dump = stage("fcidump", [&] { return read_fcidump_file(config.fcidump); });
    s.label = fs::path(config.fcidump).stem().string();
    s.n_alpha = (dump.header.nelec + dump.header.ms2) / 2;
    s.n_beta = (dump.header.nelec - dump.header.ms2) / 2;
    s.mo = dump.integrals;
  } else {
    s.label = label_for(config.geometry);
    const Geometry g = stage("geometry", [&] {
      return is_builtin_geometry(config.geometry) ? builtin_geometry(config.geometry)
                                                  : read_geometry_file(config.geometry);
    });
    const IntegralSet ints =
        stage("integrals", [&] { return compute_integrals(g, parse_basis_set(config.basis)); });
    std::tie(s.n_alpha, s.n_beta) = stage("scf", [&] {
      return electron_counts(g.total_nuclear_charge(), config.charge, config.two_s);
    });
    s.scf = stage("scf", [&] { return run_scf(ints, s.n_alpha, s.n_beta); });
    s.mo = stage("scf", [&] { return transform_to_mo(ints, *s.scf); });
  }
  stage("hamiltonian", [&] {
    s.sq = second_quantize(s.mo);
    s.hamiltonian = jordan_wigner(s.sq);
    s.phi0 = hf_determinant(s.n_alpha, s.n_beta);
    s.e_hf = s.scf ? s.scf->e_hf : slater_condon(s.phi0, s.phi0, s.sq);
    s.model = s.scf ? model_hamiltonian(*s.scf) : model_from_integrals(s.sq, s.phi0, s.e_hf);
    s.h0 = diagonal_number_operator(
        std::span<const double>(s.model.h0_diag.data(), static_cast<std::size_t>(s.model.h0_diag.size())),
        s.model.shift);
    for (const auto& w : s.model.warnings) s.warnings.push_back(w);
    return 0;
  });
  s.fci = stage("fci", [&] {
    return solve_fci(enumerate_sector(s.sq.n_qubits(), s.n_alpha, s.n_beta), s.sq);
  });
  return s;
}

PreparedStates prepare_states(const PreparedSystem& system, const RunConfig& config) {
  return stage("preparation", [&] {
    const PrepSchedule schedule = build_schedule(config.K, config.hbar_omega);
    const TrotterConfig tc = config.trotter();
    PreparedStates p{prepare_trapezoidal(system.h0, system.hamiltonian, schedule, system.phi0),
                     prepare_guiding(system.h0, system.hamiltonian, schedule, system.phi0, tc),
                     0.0, 0.0, {}, {}};
    p.e_trapezoidal = expectation(p.trapezoidal, system.hamiltonian);
    p.e_guiding = expectation(p.guiding, system.hamiltonian);
    if (system.model.omega0 > 0.0 && std::isfinite(system.model.omega0)) {
      p.conditions = check_conditions(config.K, config.hbar_omega, system.model.omega0,
                                      config.condition_margin);
    }
    p.circuit = circuit_stats(system.h0, system.hamiltonian, schedule, tc);
    return p;
  });
}

DistributionMetrics compare_distributions(const Distribution& p, const Distribution& q) {
  if (p.n_qubits != q.n_qubits) throw DomainError("distributions over different registers");
  constexpr double kEps = 1e-12, kCut = 1e-6;
  std::vector<FockIndex> keys;
  for (const auto& [n, v] : p.probs) keys.push_back(n);
  for (const auto& [n, v] : q.probs) keys.push_back(n);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  DistributionMetrics m;
  std::size_t both = 0, in_q = 0;
  for (FockIndex n : keys) {
    const double a = p.at(n), b = q.at(n);
    m.tv += 0.5 * std::abs(a - b);
    if (a > 0.0) m.kl_smoothed += (a + kEps) * std::log((a + kEps) / (b + kEps));
    if (b > kCut) {
      ++in_q;
      if (a > kCut) ++both;
    }
  }
  m.support_overlap = in_q ? static_cast<double>(both) / static_cast<double>(in_q) : 1.0;
  if (m.kl_smoothed < 0.0 && m.kl_smoothed > -1e-12) m.kl_smoothed = 0.0;
  return m;
}

StageReport sample_and_optimize(const PreparedSystem& system, const PreparedStates& states,
                                const RunConfig& config, std::uint64_t seed) {
  StageReport r;
  r.config = config;
  r.config.seed = seed;
  r.label = system.label;
  r.seed = seed;
  r.e_hf = system.e_hf;
  r.e_g = system.fci.energy;
  r.e_trapezoidal = states.e_trapezoidal;
  r.e_guiding = states.e_guiding;
  r.omega0 = system.model.omega0;
  r.s_squared = system.fci.s_squared;
  r.s_z = system.fci.s_z;
  r.conditions = states.conditions;
  r.circuit = states.circuit;
  r.warnings = system.warnings;

  const Distribution ground = ground_distribution(system.fci);
  const Distribution ptd = probabilities(states.trapezoidal, DistributionLabel::kPTD);
  const Distribution pgd = probabilities(states.guiding, DistributionLabel::kPGD);
  const int q = system.hamiltonian.n_qubits();

  const SampleCounts counts = stage("sampling", [&] {
    return sample(mix_noise(pgd, config.noise_lambda), config.shots, seed);
  });
  const Distribution sgd = empirical_distribution(counts);
  const OptimizedState opt = stage("optimization", [&] {
    OutcomeSet outcomes = collect_outcomes(counts, config.count_threshold);
    if (config.postselect_sector) {
      const std::size_t before = outcomes.size();
      std::erase_if(outcomes.members, [&](FockIndex n) {
        return std::popcount(n & 0x5555555555555555ULL) != system.n_alpha ||
               std::popcount(n & 0xAAAAAAAAAAAAAAAAULL) != system.n_beta;
      });
      r.discarded_outcomes = before - outcomes.size();
      if (outcomes.members.empty()) {
        throw EmptySubspaceError("no retained outcome lies in the reference sector");
      }
    }
    const SubspaceHamiltonian sub = build_subspace(outcomes, system.sq);
    r.subspace_size = outcomes.size();
    OptimizedState o = optimize(sub);
    r.distributions.emplace("pOD", probabilities(embed_optimized(o.theta, outcomes, q),
                                                 DistributionLabel::kPOD));
    return o;
  });
  r.e_optimized = opt.energy;
  r.distributions.emplace("pTD", ptd);
  r.distributions.emplace("pGD", pgd);
  r.distributions.emplace("sGD", sgd);
  r.distributions.emplace("pGndD", ground);
  for (const auto& [name, d] : r.distributions)
    if (name != "pGndD") r.metrics.emplace(name, compare_distributions(d, ground));
  return r;
}

StageReport run_pipeline(const RunConfig& config) {
  const PreparedSystem system = prepare_system(config);
  const PreparedStates states = prepare_states(system, config);
  return sample_and_optimize(system, states, config, config.seed);
}

MultiSeedSummary summarize_errors(std::vector<std::uint64_t> seeds, std::vector<double> errors) {
  MultiSeedSummary s;
  s.seeds = std::move(seeds);
  s.optimized_errors_ev = std::move(errors);
  s.median = quantile(s.optimized_errors_ev, 0.5);
  s.q10 = quantile(s.optimized_errors_ev, 0.1);
  s.q90 = quantile(s.optimized_errors_ev, 0.9);
  std::size_t below = 0;
  for (double e : s.optimized_errors_ev)
    if (e < units::kChemicalAccuracyEv) ++below;
  s.fraction_below_chemical_accuracy =
      s.optimized_errors_ev.empty() ? 0.0
                                    : static_cast<double>(below) / static_cast<double>(s.optimized_errors_ev.size());
  return s;
}

MultiSeedSummary run_multi_seed(const RunConfig& config, int n_seeds) {
  if (n_seeds < 1) throw DomainError("n_seeds must be at least 1");
  const PreparedSystem system = prepare_system(config);
  const PreparedStates states = prepare_states(system, config);
  std::vector<std::uint64_t> seeds;
  std::vector<double> errors;
  for (int k = 0; k < n_seeds; ++k) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(k);
    seeds.push_back(seed);
    errors.push_back(sample_and_optimize(system, states, config, seed).optimized_error_ev());
  }
  return summarize_errors(std::move(seeds), std::move(errors));
}

SweepTable sweep_reaction_path(const std::vector<std::string>& geometries,
                               const RunConfig& config,
                               const std::optional<LargeBasisTable>& table) {
  if (geometries.empty()) throw DomainError("sweep needs at least one geometry");
  SweepTable t;
  for (const auto& g : geometries) {
    RunConfig c = config;
    c.geometry = g;
    c.fcidump.clear();
    const StageReport r = run_pipeline(c);
    SweepRow row{r.label, r.e_hf, r.e_g, r.e_optimized, std::nullopt, std::nullopt, std::nullopt};
    if (table) {
      const double large = stage("correction", [&] { return table->at(r.label); });
      const double bsc = basis_set_correction(large, r.e_hf);
      row.e_hf_large = large;
      row.corrected_fci = r.e_g + bsc;
      row.corrected_cvqe = r.e_optimized + bsc;
    }
    t.rows.push_back(row);
  }
  if (t.rows.size() >= 2) {
    const auto& a = t.rows.front();
    const auto& b = t.rows.back();
    t.delta_fci_ev = units::to_ev(b.e_g - a.e_g);
    t.delta_cvqe_ev = units::to_ev(b.e_star - a.e_star);
    t.delta_hf_ev = units::to_ev(b.e_hf - a.e_hf);
    if (table) {
      t.delta_corrected_fci_ev = units::to_ev(*b.corrected_fci - *a.corrected_fci);
      t.delta_corrected_cvqe_ev = units::to_ev(*b.corrected_cvqe - *a.corrected_cvqe);
      t.delta_hf_large_ev = units::to_ev(*b.e_hf_large - *a.e_hf_large);
    }
  }
  return t;
}

std::vector<OmegaScanRow> omega_scan(const RunConfig& config, const std::vector<double>& omegas,
                                     std::vector<std::string>* warnings) {
  if (config.K != 1 && warnings) {
    warnings->push_back("omega scan normally uses K=1 (got K=" + std::to_string(config.K) + ")");
  }
  const PreparedSystem system = prepare_system(config);
  std::vector<OmegaScanRow> rows;
  for (double om : omegas) {
    const StateVector g = stage("preparation", [&] {
      return prepare_guiding(system.h0, system.hamiltonian, build_schedule(config.K, om),
                             system.phi0, config.trotter());
    });
    const Distribution d = probabilities(g, DistributionLabel::kPGD);
    rows.push_back({om, d.at(system.phi0), d});
  }
  return rows;
}

std::string resolve_output_dir(const std::string& dir) {
  const char* root = std::getenv("CVQE_OUTPUT_ROOT");
  const fs::path p = dir.empty() ? fs::path("cvqe_out") : fs::path(dir);
  if (root && *root && p.is_relative()) return (fs::path(root) / p).string();
  return p.string();
}

std::string distribution_csv(const Distribution& dist, const Distribution& ground) {
  std::vector<std::pair<FockIndex, double>> rows;
  for (const auto& [n, p] : dist.probs)
    if (p >= 1e-12) rows.emplace_back(n, p);
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    const double ga = ground.at(a.first), gb = ground.at(b.first);
    if (ga != gb) return ga > gb;
    return a.first < b.first;
  });
  std::ostringstream out;
  out << "index,bitstring,probability\n";
  char buf[64];
  for (const auto& [n, p] : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", p);
    out << n << ',' << bitstring(n, dist.n_qubits) << ',' << buf << '\n';
  }
  return out.str();
}

std::string config_to_json(const RunConfig& config) { return config_json(config).dump(2); }

RunConfig config_from_json(const std::string& text) {
  try {
    return config_from(json::parse(text));
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
}

RunConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string report_to_json(const StageReport& r) {
  json dists = json::object();
  for (const auto& [k, d] : r.distributions) dists[k] = dist_json(d);
  json metrics = json::object();
  for (const auto& [k, m] : r.metrics) metrics[k] = metrics_json(m);
  json j = {
      {"config", config_json(r.config)},
      {"label", r.label},
      {"seed", r.seed},
      {"energies_ha",
       {{"hf", r.e_hf},
        {"fci", r.e_g},
        {"trapezoidal", r.e_trapezoidal},
        {"guiding", r.e_guiding},
        {"optimized", r.e_optimized}}},
      {"errors_ev",
       {{"hf", r.error_ev(r.e_hf)},
        {"trapezoidal", r.trapezoidal_error_ev()},
        {"guiding", r.guiding_error_ev()},
        {"optimized", r.optimized_error_ev()},
        {"chemical_accuracy", units::kChemicalAccuracyEv}}},
      {"omega0_ha", r.omega0},
      {"s_squared", r.s_squared},
      {"s_z", r.s_z},
      {"subspace_size", r.subspace_size},
      {"discarded_outcomes", r.discarded_outcomes},
      {"conditions", condition_json(r.conditions)},
      {"circuit",
       {{"term_count_per_step", r.circuit.term_count_per_step},
        {"total_rotations", r.circuit.total_rotations},
        {"cnot_estimate", r.circuit.cnot_estimate},
        {"depth_proxy", r.circuit.depth_proxy}}},
      {"metrics_vs_pGndD", metrics},
      {"distributions", dists},
      {"warnings", r.warnings},
  };
  return j.dump(2);
}

StageReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    StageReport r;
    r.config = config_from(j.at("config"));
    r.label = j.at("label").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto& e = j.at("energies_ha");
    r.e_hf = e.at("hf").get<double>();
    r.e_g = e.at("fci").get<double>();
    r.e_trapezoidal = e.at("trapezoidal").get<double>();
    r.e_guiding = e.at("guiding").get<double>();
    r.e_optimized = e.at("optimized").get<double>();
    r.omega0 = j.at("omega0_ha").get<double>();
    r.s_squared = j.at("s_squared").get<double>();
    r.s_z = j.at("s_z").get<double>();
    r.subspace_size = j.at("subspace_size").get<std::size_t>();
    r.discarded_outcomes = j.at("discarded_outcomes").get<std::size_t>();
    const auto& c = j.at("conditions");
    r.conditions.left_ratio = c.at("left_ratio").get<double>();
    r.conditions.right_ratio = c.at("right_ratio").get<double>();
    r.conditions.margin = c.at("margin").get<double>();
    r.conditions.left = parse_status(c.at("left").get<std::string>());
    r.conditions.right = parse_status(c.at("right").get<std::string>());
    const auto& cs = j.at("circuit");
    r.circuit.term_count_per_step = cs.at("term_count_per_step").get<std::vector<long long>>();
    r.circuit.total_rotations = cs.at("total_rotations").get<long long>();
    r.circuit.cnot_estimate = cs.at("cnot_estimate").get<long long>();
    r.circuit.depth_proxy = cs.at("depth_proxy").get<long long>();
    for (const auto& [k, m] : j.at("metrics_vs_pGndD").items())
      r.metrics[k] = {m.at("tv").get<double>(), m.at("kl_smoothed").get<double>(),
                      m.at("support_overlap").get<double>()};
    for (const auto& [k, d] : j.at("distributions").items()) r.distributions[k] = dist_from(d);
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("report: ") + e.what());
  }
}

std::vector<std::string> emit_report(const StageReport& report, const std::string& dir) {
  const fs::path root(dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw IoError("cannot create '" + root.string() + "': " + ec.message());
  std::vector<std::string> written;
  const fs::path json_path = root / "report.json";
  write_file(json_path, report_to_json(report));
  written.push_back(json_path.string());
  const auto g = report.distributions.find("pGndD");
  const Distribution empty;
  const Distribution& ground = g == report.distributions.end() ? empty : g->second;
  for (const auto& [name, d] : report.distributions) {
    const fs::path p = root / (name + ".csv");
    write_file(p, distribution_csv(d, ground));
    written.push_back(p.string());
  }
  return written;
}

std::string sweep_to_json(const SweepTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"label", r.label},
                    {"e_hf_ha", r.e_hf},
                    {"e_fci_ha", r.e_g},
                    {"e_cvqe_ha", r.e_star},
                    {"e_hf_large_ha", opt_json(r.e_hf_large)},
                    {"corrected_fci_ha", opt_json(r.corrected_fci)},
                    {"corrected_cvqe_ha", opt_json(r.corrected_cvqe)}});
  }
  json j = {{"rows", rows},
            {"delta_ev",
             {{"hf", opt_json(t.delta_hf_ev)},
              {"fci", opt_json(t.delta_fci_ev)},
              {"cvqe", opt_json(t.delta_cvqe_ev)},
              {"hf_large", opt_json(t.delta_hf_large_ev)},
              {"corrected_fci", opt_json(t.delta_corrected_fci_ev)},
              {"corrected_cvqe", opt_json(t.delta_corrected_cvqe_ev)}}}};
  return j.dump(2);
}

}  // namespace cvqe
