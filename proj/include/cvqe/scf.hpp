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

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cvqe/common.hpp"
#include "cvqe/integrals.hpp"

namespace cvqe {

struct ScfConfig {
  double commutator_tol = 1e-8;
  double energy_tol = 1e-10;
  int diis_size = 8;
  int max_iterations = 200;
  /// Hartree; raises open (by half) and virtual orbitals during iterations.
  double level_shift = 0.5;
  /// Try alternative starting orbitals and keep the lowest converged energy.
  bool multi_start = true;
};

/// Restricted open-shell Hartree-Fock solution: one set of spatial MOs, the
/// first n_beta doubly occupied and the next n_alpha - n_beta singly (alpha).
struct SCFResult {
  Eigen::MatrixXd mo_coeffs;  // AO x MO
  Eigen::VectorXd orbital_energies;
  double e_hf = 0.0;  // includes nuclear repulsion
  int n_alpha = 0;
  int n_beta = 0;
  bool converged = false;
  int iterations = 0;
  double commutator_norm = 0.0;
};

SCFResult run_scf(const IntegralSet& integrals, int n_alpha, int n_beta,
                  const ScfConfig& config = {});

/// Electron counts for a given molecular charge and 2S; alpha >= beta.
std::pair<int, int> electron_counts(int total_nuclear_charge, int charge,
                                    int two_s);

/// Alpha and beta AO density matrices for the given coefficients.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> rohf_densities(
    const Eigen::MatrixXd& mo_coeffs, int n_alpha, int n_beta);

/// ROHF energy (including e_nuc) for the given densities.
double rohf_energy(const IntegralSet& integrals, const Eigen::MatrixXd& d_alpha,
                   const Eigen::MatrixXd& d_beta);

/// ||F D S - S D F|| in the orthonormal basis, using the Roothaan effective
/// Fock built from the converged orbitals.
double rohf_commutator_norm(const IntegralSet& integrals, const SCFResult& scf);

// ---------------------------------------------------------------------------

/// Spatial-MO integrals feeding the second-quantized Hamiltonian.
struct MOIntegrals {
  int n_mo = 0;
  Eigen::MatrixXd h_mo;
  Tensor4 g_mo;
  double e_nuc = 0.0;
};

MOIntegrals transform_to_mo(const IntegralSet& integrals,
                            const Eigen::MatrixXd& mo_coeffs);
MOIntegrals transform_to_mo(const IntegralSet& integrals, const SCFResult& scf);

/// <Phi|H|Phi> of a single determinant with alpha MOs [0, n_alpha) and beta
/// MOs [0, n_beta), evaluated from spatial MO integrals.
double determinant_energy(const MOIntegrals& mo, int n_alpha, int n_beta);

// ---------------------------------------------------------------------------

/// Diagonal model Hamiltonian H0 = sum_p eps_p n_p + shift over spin-orbitals
/// (q = 2 i + s, s = 0 for alpha).
struct ModelHamiltonian {
  Eigen::VectorXd h0_diag;  // spin-orbital energies
  double shift = 0.0;       // fixes <Phi0|H0|Phi0> = e_hf
  double omega0 = 0.0;      // lowest sector-preserving excitation of H0
  FockIndex reference = 0;  // |Phi0>
  std::vector<std::string> warnings;
};

ModelHamiltonian model_hamiltonian(const SCFResult& scf);

/// Gap between the lowest two levels of a diagonal one-body operator among
/// determinants with the same particle number (and Sz if conserve_sz) as
/// `reference`. Levels closer than 1e-8 count as degenerate.
double excitation_gap(const Eigen::VectorXd& spin_orbital_energies,
                      FockIndex reference, bool conserve_sz);

}  // namespace cvqe
