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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cvqe/pipeline.hpp"
#include "fixtures.hpp"

using namespace cvqe;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cvqe_test_" + name);
  fs::remove_all(p);
  return p;
}

Distribution point(FockIndex n, int q = 2) {
  Distribution d;
  d.n_qubits = q;
  d.probs[n] = 1.0;
  return d;
}

}  // namespace

TEST_CASE("config validation and regimes") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.K = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = RunConfig{};
  c.noise_lambda = 1.2;
  CHECK_THROWS_AS(c.validate(), DomainError);

  RunConfig a;
  apply_regime(a, "A");
  CHECK(a.K == 500);
  CHECK(a.hbar_omega == 10.0);
  RunConfig b;
  apply_regime(b, "B");
  CHECK(b.K == 1000);
  CHECK(b.hbar_omega == 1.0);
  RunConfig cc;
  cc.hbar_omega = 0.2;
  apply_regime(cc, "C");
  CHECK(cc.K == 1);
  CHECK(cc.hbar_omega == 0.2);
  CHECK(cc.prune_threshold_ha == 0.02);
  CHECK(cc.drop_diagonal);
  CHECK(cc.shots == 4096);
  CHECK_THROWS_AS(apply_regime(cc, "D"), DomainError);
  CHECK(kThresholdPresets[3] == 5000);
}

TEST_CASE("config JSON round trip and trotter block") {
  RunConfig c;
  c.K = 7;
  c.hbar_omega = 0.125;
  c.seed = 123456789012345ULL;
  c.term_order = "canonical";
  c.noise_lambda = 0.1;
  const RunConfig back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  const RunConfig t = config_from_json(
      R"({"regime": "B", "K": 10, "trotter": {"prune_threshold_ha": 0.05, "drop_diagonal": true,
          "term_order": "magnitude_asc"}})");
  CHECK(t.K == 10);
  CHECK(t.hbar_omega == 1.0);
  CHECK(t.prune_threshold_ha == 0.05);
  CHECK(t.drop_diagonal);
  CHECK(t.trotter().term_order == TermOrder::kMagnitudeAscending);
  CHECK_THROWS_AS(config_from_json("{not json"), FormatError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/config.json"), IoError);
}

TEST_CASE("distribution metrics") {
  const Distribution p = point(1);
  const DistributionMetrics same = compare_distributions(p, p);
  CHECK(same.tv == 0.0);
  CHECK(same.kl_smoothed == Approx(0.0));
  CHECK(same.support_overlap == 1.0);
  const DistributionMetrics apart = compare_distributions(point(1), point(2));
  CHECK(apart.tv == Approx(1.0));
  CHECK(apart.support_overlap == 0.0);
  CHECK(apart.kl_smoothed > 10.0);
  CHECK_THROWS_AS(compare_distributions(point(1, 2), point(1, 3)), DomainError);
}

TEST_CASE("stage attribution") {
  RunConfig c;
  c.geometry = "/nonexistent/geometry.xyz";
  try {
    run_pipeline(c);
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "geometry");
  }
  RunConfig bad;
  bad.shots = 0;
  try {
    run_pipeline(bad);
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "config");
  }
  RunConfig high;
  high.count_threshold = 1000000;
  try {
    run_pipeline(high);
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "optimization");
  }
}

TEST_CASE("FCIDUMP-driven run matches the geometry-driven run") {
  RunConfig c;
  c.fcidump = std::string(CVQE_DATA_DIR) + "/well_sto6g.fcidump";
  const PreparedSystem s = prepare_system(c);
  CHECK(s.n_alpha == 2);
  CHECK(s.n_beta == 1);
  CHECK(s.phi0 == 7);
  CHECK(std::abs(s.fci.energy - testing::kWellFciSto6g) < 1e-6);
  CHECK(std::abs(s.e_hf - testing::kWellHfSto6g) < 1e-6);
}

TEST_CASE("single-step report and outputs") {
  RunConfig c;
  apply_regime(c, "C");
  const StageReport r = run_pipeline(c);
  for (const char* k : {"pTD", "pGD", "sGD", "pOD", "pGndD"}) {
    REQUIRE(r.distributions.count(k) == 1);
    CHECK(r.distributions.at(k).total() == Approx(1.0).epsilon(1e-9));
  }
  CHECK(r.e_optimized >= r.e_g - 1e-12);
  CHECK(r.e_hf >= r.e_g);
  CHECK(r.trapezoidal_error_ev() >= 0.0);
  CHECK(r.seed == c.seed);
  CHECK(r.circuit.cnot_estimate == 168);
  CHECK(r.conditions.right_satisfied());

  const fs::path dir = scratch_dir("emit");
  const auto files = emit_report(r, dir.string());
  CHECK(files.size() == 6);
  const std::string ground = slurp(dir / "pGndD.csv");
  std::istringstream lines(ground);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "index,bitstring,probability");
  CHECK(first.rfind("7,00000111,", 0) == 0);

  // Ordering contract holds for every table.
  for (const char* k : {"pTD", "pGD", "sGD", "pOD", "pGndD"}) {
    std::istringstream in(slurp(dir / (std::string(k) + ".csv")));
    std::string row;
    std::getline(in, row);
    double prev_g = 2.0;
    long long prev_n = -1;
    while (std::getline(in, row)) {
      const long long n = std::stoll(row.substr(0, row.find(',')));
      const double p = std::stod(row.substr(row.rfind(',') + 1));
      CHECK(p >= 1e-12);
      const double g = r.distributions.at("pGndD").at(static_cast<FockIndex>(n));
      CHECK((g < prev_g || (g == prev_g && n > prev_n)));
      prev_g = g;
      prev_n = n;
    }
  }

  const StageReport back = report_from_json(slurp(dir / "report.json"));
  CHECK(report_to_json(back) == report_to_json(r));
  CHECK(back.e_optimized == r.e_optimized);
  CHECK(back.distributions.at("sGD").probs == r.distributions.at("sGD").probs);

  // Identical config and seed give byte-identical tables.
  const fs::path again = scratch_dir("emit_again");
  emit_report(run_pipeline(c), again.string());
  for (const char* k : {"pTD", "pGD", "sGD", "pOD", "pGndD"})
    CHECK(slurp(dir / (std::string(k) + ".csv")) == slurp(again / (std::string(k) + ".csv")));
}

TEST_CASE("tiny probabilities are omitted from tables") {
  Distribution d;
  d.n_qubits = 2;
  d.probs = {{0, 1.0 - 1e-13}, {3, 1e-13}};
  const std::string csv = distribution_csv(d, d);
  CHECK(csv == "index,bitstring,probability\n0,00,0.99999999999989997\n");
}

TEST_CASE("output root override") {
  ::setenv("CVQE_OUTPUT_ROOT", "/tmp/cvqe_root", 1);
  CHECK(resolve_output_dir("runs/a") == "/tmp/cvqe_root/runs/a");
  CHECK(resolve_output_dir("/abs/dir") == "/abs/dir");
  CHECK(resolve_output_dir("") == "/tmp/cvqe_root/cvqe_out");
  ::unsetenv("CVQE_OUTPUT_ROOT");
  CHECK(resolve_output_dir("runs/a") == "runs/a");
  CHECK_THROWS_AS(emit_report(StageReport{}, "/proc/forbidden/dir"), IoError);
}

TEST_CASE("regime A with 2^10 shots lands just outside chemical accuracy") {
  RunConfig c;
  apply_regime(c, "A");
  c.shots = 1024;
  const MultiSeedSummary s = run_multi_seed(c, 20);
  CHECK(s.seeds.size() == 20);
  CHECK(s.median >= 0.005);
  CHECK(s.median <= 0.2);
  CHECK(s.q10 <= s.median);
  CHECK(s.median <= s.q90);
}

TEST_CASE("multi-seed summary statistics") {
  const MultiSeedSummary s = summarize_errors({1, 2, 3, 4, 5}, {0.5, 0.01, 0.02, 0.03, 0.04});
  CHECK(s.median == Approx(0.03));
  CHECK(s.fraction_below_chemical_accuracy == Approx(0.8));
}

TEST_CASE("regime B error mitigation") {
  RunConfig c;
  apply_regime(c, "B");
  const StageReport r = run_pipeline(c);
  CHECK(r.trapezoidal_error_ev() <= 1e-4);
  CHECK(r.optimized_error_ev() <= 1e-6);
  CHECK(r.guiding_error_ev() >= 100 * r.optimized_error_ev());
  CHECK(r.metrics.at("pOD").tv < 0.01);
  CHECK(r.metrics.at("pGD").tv > r.metrics.at("pOD").tv);
}

TEST_CASE("reaction sweep") {
  RunConfig c;
  apply_regime(c, "A");
  const SweepTable single = sweep_reaction_path({"well"}, c);
  CHECK(single.rows.size() == 1);
  CHECK_FALSE(single.delta_fci_ev.has_value());

  const LargeBasisTable partial = LargeBasisTable::parse("well -1.8\n");
  CHECK_THROWS_AS(sweep_reaction_path({"reactants", "well"}, c, partial), StageError);

  const LargeBasisTable table =
      LargeBasisTable::read_file(std::string(CVQE_DATA_DIR) + "/hf_def2qzvp.tsv");
  const SweepTable t = sweep_reaction_path({"reactants", "well", "products"}, c, table);
  REQUIRE(t.rows.size() == 3);
  for (const auto& row : t.rows) {
    CHECK(std::abs(row.e_star - row.e_g) < 1e-6);
    CHECK(row.corrected_fci.has_value());
  }
  CHECK(*t.delta_corrected_fci_ev == Approx(-1.804).epsilon(0.02 / 1.804));
  CHECK(*t.delta_corrected_cvqe_ev == Approx(-1.804).epsilon(0.02 / 1.804));
  CHECK(sweep_to_json(t).find("corrected_fci") != std::string::npos);
}

TEST_CASE("omega scan") {
  RunConfig c;
  apply_regime(c, "C");
  std::vector<std::string> warnings;
  const auto rows = omega_scan(c, {1.0, 1.0 / 3.0, 1.0 / 5.0, 1.0 / 10.0}, &warnings);
  REQUIRE(rows.size() == 4);
  CHECK(warnings.empty());
  CHECK(rows[0].p_reference == Approx(0.989).epsilon(0.01 / 0.989));
  CHECK(rows[3].p_reference == Approx(0.305).epsilon(0.02 / 0.305));
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].p_reference < rows[k - 1].p_reference);
  const auto big = omega_scan(c, {1e9});
  CHECK(big[0].p_reference > 1.0 - 1e-12);
  RunConfig k3 = c;
  k3.K = 3;
  omega_scan(k3, {1.0}, &warnings);
  CHECK(warnings.size() == 1);
}
