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

#include <cmath>
#include <filesystem>

#include "cvqe/fcidump.hpp"
#include "cvqe/fermion.hpp"
#include "cvqe/fci.hpp"
#include "cvqe/scf.hpp"
#include "fixtures.hpp"

using namespace cvqe;
using doctest::Approx;

namespace {

Geometry h2() {
  return parse_geometry("H 0 0 0\nH 0 0 0.741760\n");
}

double brute_pair_sum(const Geometry& g) {
  double e = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double d = g.atoms()[a].position[k] - g.atoms()[b].position[k];
        d2 += d * d;
      }
      e += 1.0 / (std::sqrt(d2) * units::kAngstromToBohr);
    }
  return e;
}

}  // namespace

TEST_CASE("parse_geometry reads the reactant table") {
  const Geometry g = builtin_geometry("reactants");
  REQUIRE(g.size() == 4);
  CHECK(g.atoms()[0].position[0] == 0.0);
  CHECK(g.atoms()[0].position[1] == 8.528398637950);
  CHECK(g.atoms()[0].position[2] == 0.0);
  // Lower pair is the intact H2.
  double best = 1e9;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) best = std::min(best, g.distance(a, b));
  CHECK(best == Approx(2 * 0.370880024809).epsilon(1e-12));
}

TEST_CASE("parse_geometry accepts tables with separators and headers") {
  const Geometry g = parse_geometry("Atom & x & y & z\nH & 0 & 0 & 0 \\\\\nH | 1 | 0 | 0\nH, 0, 2, 0\n");
  REQUIRE(g.size() == 3);
  CHECK(g.distance(0, 2) == Approx(2.0));
  const Geometry x = parse_geometry("2\ncomment text\nH 0 0 0\nH 0 0 0.74\n");
  CHECK(x.comment() == "comment text");
  CHECK(x.size() == 2);
}

TEST_CASE("single atom geometry") {
  const Geometry g = parse_geometry("H 0 0 0");
  CHECK(g.size() == 1);
  CHECK(nuclear_repulsion(g) == 0.0);
}

TEST_CASE("well geometry first pair distance") {
  CHECK(builtin_geometry("well").distance(0, 1) == Approx(1.403206).epsilon(1e-6));
}

TEST_CASE("geometry errors") {
  try {
    parse_geometry("H 0 0 0\nH 0 zero 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_geometry("He 0 0 0"), UnsupportedElementError);
  CHECK_THROWS_AS(parse_geometry("H 0 0 0\nH 0 0 0"), DomainError);
  const Geometry coincident({{"H", 1, {0, 0, 0}}, {"H", 1, {0, 0, 0}}});
  CHECK_THROWS_AS(nuclear_repulsion(coincident), SingularityError);
  CHECK_THROWS_AS(read_geometry_file("/nonexistent/file.xyz"), IoError);
}

TEST_CASE("nuclear repulsion") {
  CHECK(nuclear_repulsion(h2()) == Approx(0.529177210903 / 0.741760).epsilon(1e-12));
  CHECK(nuclear_repulsion(parse_geometry("H 0 0 0\nH 0 0 0.7414")) == Approx(0.713754).epsilon(1e-6));
  for (const char* label : {"reactants", "well", "products"}) {
    const Geometry g = builtin_geometry(label);
    CHECK(nuclear_repulsion(g) == Approx(brute_pair_sum(g)).epsilon(1e-13));
  }
}

TEST_CASE("geometry files match built-ins") {
  for (const char* label : {"reactants", "well", "products"}) {
    const Geometry f = read_geometry_file(std::string(CVQE_DATA_DIR) + "/" + label + ".xyz");
    const Geometry b = builtin_geometry(label);
    REQUIRE(f.size() == b.size());
    for (std::size_t a = 0; a < f.size(); ++a)
      for (int k = 0; k < 3; ++k) CHECK(f.atoms()[a].position[k] == b.atoms()[a].position[k]);
  }
}

TEST_CASE("Boys function") {
  CHECK(boys_f0(0.0) == 1.0);
  CHECK(boys_f0(1e-12) == Approx(1.0 - 1e-12 / 3.0).epsilon(1e-15));
  CHECK(boys_f0(1.0) == Approx(0.746824132812427).epsilon(1e-13));
  CHECK(boys_f0(50.0) == Approx(0.5 * std::sqrt(M_PI / 50.0)).epsilon(1e-13));
}

TEST_CASE("one hydrogen atom integrals") {
  for (BasisSet b : {BasisSet::kSto3g, BasisSet::kSto6g}) {
    const IntegralSet ints = compute_integrals(parse_geometry("H 0 0 0"), b);
    CHECK(ints.overlap(0, 0) == Approx(1.0).epsilon(1e-12));
    CHECK(ints.e_nuc == 0.0);
  }
  const IntegralSet six = compute_integrals(parse_geometry("H 0 0 0"), BasisSet::kSto6g);
  CHECK(std::abs(six.core(0, 0) - -0.471039) < 2e-4);
  const SCFResult scf = run_scf(six, 1, 0);
  CHECK(scf.converged);
  CHECK(scf.e_hf == Approx(six.core(0, 0)).epsilon(1e-12));
}

TEST_CASE("integral invariants on reaction-path geometries") {
  for (const char* label : {"reactants", "well", "products"}) {
    const IntegralSet ints = compute_integrals(builtin_geometry(label));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ints.overlap);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK((ints.overlap - ints.overlap.transpose()).norm() < 1e-14);
    CHECK((ints.core - ints.core.transpose()).norm() < 1e-14);
    CHECK(ints.eri.max_symmetry_violation() < 1e-10);
    CHECK(ints.e_nuc > 0.0);
  }
}

TEST_CASE("linear dependence is rejected") {
  CHECK_THROWS_AS(compute_integrals(Geometry({{"H", 1, {0, 0, 0}}, {"H", 1, {0, 0, 1e-5}}})),
                  IllConditionedBasisError);
}

TEST_CASE("H2 restricted Hartree-Fock") {
  const IntegralSet ints = compute_integrals(h2());
  const SCFResult scf = run_scf(ints, 1, 1);
  CHECK(scf.converged);
  CHECK(std::abs(scf.e_hf - -1.125) < 5e-3);
  CHECK(scf.e_hf == Approx(-1.12527).epsilon(5e-5));
  const MOIntegrals mo = transform_to_mo(ints, scf);
  CHECK(determinant_energy(mo, 1, 1) == Approx(scf.e_hf).epsilon(1e-10));
  const SecondQuantizedHamiltonian sq = second_quantize(mo);
  const FockIndex hf = hf_determinant(1, 1);
  CHECK(hf == 3);
  CHECK(std::abs(expectation(init_fock(hf, 4), jordan_wigner(sq)) - scf.e_hf) < 1e-8);
}

TEST_CASE("SCF result invariants") {
  for (const char* label : {"reactants", "well", "products"}) {
    CAPTURE(label);
    const IntegralSet ints = compute_integrals(builtin_geometry(label));
    const SCFResult scf = run_scf(ints, 2, 1);
    REQUIRE(scf.converged);
    const Eigen::MatrixXd ctsc = scf.mo_coeffs.transpose() * ints.overlap * scf.mo_coeffs;
    CHECK((ctsc - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
    // Ascending within the closed, open and virtual blocks.
    const int bounds[4] = {0, 1, 2, 4};
    for (int b = 0; b < 3; ++b)
      for (int k = bounds[b] + 1; k < bounds[b + 1]; ++k)
        CHECK(scf.orbital_energies(k) >= scf.orbital_energies(k - 1));
    CHECK(rohf_commutator_norm(ints, scf) < 1e-7);
    CHECK(scf.n_alpha >= scf.n_beta);
    const auto [da, db] = rohf_densities(scf.mo_coeffs, 2, 1);
    CHECK(rohf_energy(ints, da, db) == Approx(scf.e_hf).epsilon(1e-12));
  }
}

TEST_CASE("SCF reference energies") {
  const IntegralSet ints = compute_integrals(builtin_geometry("well"));
  CHECK(run_scf(ints, 2, 1).e_hf == Approx(testing::kWellHfSto6g).epsilon(1e-9));
  const IntegralSet reac = compute_integrals(builtin_geometry("reactants"));
  // Equals the unrestricted value: the two fragments are a closed H2 and a lone H.
  CHECK(run_scf(reac, 2, 1).e_hf == Approx(-1.711672434).epsilon(1e-8));
}

TEST_CASE("SCF convergence failure carries the last delta") {
  const IntegralSet ints = compute_integrals(builtin_geometry("well"));
  ScfConfig cfg;
  cfg.max_iterations = 2;
  cfg.multi_start = false;
  try {
    run_scf(ints, 2, 1, cfg);
    FAIL("expected non-convergence");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.last_energy_delta()));
  }
  CHECK_THROWS_AS(run_scf(ints, 5, 4), DomainError);
}

TEST_CASE("electron counts") {
  CHECK(electron_counts(4, 1, -1) == std::pair{2, 1});
  CHECK(electron_counts(2, 0, -1) == std::pair{1, 1});
  CHECK(electron_counts(4, 0, 2) == std::pair{3, 1});
  CHECK_THROWS_AS(electron_counts(4, 1, 0), DomainError);
}

TEST_CASE("transform_to_mo with identity coefficients") {
  std::mt19937_64 rng(3);
  const MOIntegrals src = testing::random_mo(3, rng);
  IntegralSet ints;
  ints.n_ao = 3;
  ints.overlap = Eigen::MatrixXd::Identity(3, 3);
  ints.core = src.h_mo;
  ints.eri = src.g_mo;
  ints.e_nuc = src.e_nuc;
  const MOIntegrals mo = transform_to_mo(ints, Eigen::MatrixXd::Identity(3, 3));
  CHECK((mo.h_mo - src.h_mo).norm() == 0.0);
  for (std::size_t k = 0; k < src.g_mo.raw().size(); ++k)
    CHECK(mo.g_mo.raw()[k] == Approx(src.g_mo.raw()[k]).epsilon(1e-15));
  CHECK(mo.e_nuc == src.e_nuc);
}

TEST_CASE("transform_to_mo preserves symmetry under random rotations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const MOIntegrals src = testing::random_mo(2, rng);
    IntegralSet ints;
    ints.n_ao = 2;
    ints.overlap = Eigen::MatrixXd::Identity(2, 2);
    ints.core = src.h_mo;
    ints.eri = src.g_mo;
    const MOIntegrals mo = transform_to_mo(ints, testing::random_orthogonal(2, rng));
    CHECK(mo.g_mo.max_symmetry_violation() < 1e-10);
    CHECK((mo.h_mo - mo.h_mo.transpose()).norm() < 1e-12);
  }
  const IntegralSet well = compute_integrals(builtin_geometry("well"));
  const MOIntegrals mo = transform_to_mo(well, run_scf(well, 2, 1));
  CHECK(mo.g_mo.max_symmetry_violation() < 1e-10);
}

TEST_CASE("model Hamiltonian") {
  const IntegralSet h = compute_integrals(parse_geometry("H 0 0 0"));
  const SCFResult scf = run_scf(h, 1, 0);
  const ModelHamiltonian m = model_hamiltonian(scf);
  CHECK(m.reference == 1);
  CHECK(m.h0_diag(0) + m.shift == scf.e_hf);

  const Eigen::Vector3d eps(-1.0, -0.5, 0.3);
  CHECK(excitation_gap(eps, 0b011, false) == Approx(0.8).epsilon(1e-14));

  const auto& well = testing::well_system();
  const PauliSum h0 = well.h0;
  CHECK(std::abs(expectation(init_fock(7, 8), h0) - well.e_hf) < 1e-10);
  // Lowest (N, Sz)-preserving promotion of the ROHF orbital energies.
  CHECK(well.model.omega0 == Approx(0.49375).epsilon(1e-4));
}

TEST_CASE("degenerate frontier orbitals warn") {
  SCFResult scf;
  scf.converged = true;
  scf.n_alpha = 2;
  scf.n_beta = 1;
  scf.e_hf = -1.0;
  scf.orbital_energies = Eigen::Vector3d(-1.0, -0.4, -0.4);
  const ModelHamiltonian m = model_hamiltonian(scf);
  CHECK(m.omega0 < 1e-8);
  CHECK(m.warnings.size() == 1);
  scf.orbital_energies = Eigen::Vector3d(-1.0, -0.4, 0.2);
  CHECK(model_hamiltonian(scf).warnings.empty());
}

TEST_CASE("basis set correction") {
  CHECK(basis_set_correction(-1.13, -1.12) == Approx(-0.01).epsilon(1e-14));
  CHECK(basis_set_correction(-1.5, -1.5) == 0.0);
  CHECK_THROWS_AS(basis_set_correction(std::nullopt, -1.0), UnavailableCorrectionError);
  CHECK_THROWS_AS(basis_set_correction(-1.0, std::nullopt), UnavailableCorrectionError);
  const LargeBasisTable t = LargeBasisTable::read_file(std::string(CVQE_DATA_DIR) + "/hf_def2qzvp.tsv");
  CHECK(t.size() == 3);
  CHECK(t.at("well") == -1.804578158314);
  CHECK_FALSE(t.find("nowhere").has_value());
  CHECK_THROWS_AS(t.at("nowhere"), UnavailableCorrectionError);
}

TEST_CASE("FCIDUMP round trip") {
  const IntegralSet ints = compute_integrals(h2());
  const MOIntegrals mo = transform_to_mo(ints, run_scf(ints, 1, 1));
  const Fcidump back = read_fcidump(write_fcidump(mo, 1, 1));
  CHECK(back.header.norb == 2);
  CHECK(back.header.nelec == 2);
  CHECK(back.header.ms2 == 0);
  CHECK((back.integrals.h_mo - mo.h_mo).cwiseAbs().maxCoeff() < 1e-12);
  for (std::size_t k = 0; k < mo.g_mo.raw().size(); ++k)
    CHECK(std::abs(back.integrals.g_mo.raw()[k] - mo.g_mo.raw()[k]) < 1e-12);
  CHECK(back.integrals.e_nuc == mo.e_nuc);
}

TEST_CASE("FCIDUMP constant record and errors") {
  const std::string head = "&FCI NORB=1,NELEC=1,MS2=1,\n ORBSYM=1,\n ISYM=1,\n&END\n";
  const Fcidump f = read_fcidump(head + " -0.5 1 1 0 0\n 0.713754 0 0 0 0\n");
  CHECK(f.integrals.e_nuc == 0.713754);
  CHECK(f.integrals.h_mo(0, 0) == -0.5);
  CHECK_THROWS_AS(read_fcidump(head + " 0.1 1 1 0 0\n 0.2 1 1 0 0\n"), FormatError);
  CHECK_THROWS_AS(read_fcidump("&FCI NORB=1,NELEC=3,MS2=1,\n&END\n"), FormatError);
  CHECK_THROWS_AS(read_fcidump("no header"), FormatError);
  // Symmetry-redundant duplicates merge.
  const std::string two = "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n";
  const Fcidump g = read_fcidump(two + " 0.3 1 2 1 1\n 0.3 2 1 1 1\n 0.3 1 1 2 1\n");
  CHECK(g.integrals.g_mo(1, 0, 0, 0) == 0.3);
}

TEST_CASE("externally produced FCIDUMP reproduces the in-house FCI energy") {
  const Fcidump f = read_fcidump_file(std::string(CVQE_DATA_DIR) + "/well_sto6g.fcidump");
  const SecondQuantizedHamiltonian sq = second_quantize(f.integrals);
  const FCISolution sol = solve_fci(enumerate_sector(8, 2, 1), sq);
  CHECK(std::abs(sol.energy - testing::kWellFciSto6g) < 1e-6);
}
