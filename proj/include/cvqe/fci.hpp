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
#include <vector>

#include "cvqe/fermion.hpp"
#include "cvqe/statevector.hpp"

namespace cvqe {

/// Determinants with fixed alpha (even qubits) and beta (odd qubits) counts.
struct SectorBasis {
  std::vector<FockIndex> determinants;  // ascending
  int n_qubits = 0;
  int n_alpha = 0;
  int n_beta = 0;
};

struct FCISolution {
  SectorBasis basis;
  double energy = 0.0;  // includes the constant term
  Eigen::VectorXd vector;
  double s_squared = 0.0;
  double s_z = 0.0;
  double residual = 0.0;
  Eigen::VectorXd spectrum;  // all sector eigenvalues, ascending
};

SectorBasis enumerate_sector(int n_qubits, int n_alpha, int n_beta);

FCISolution solve_fci(const SectorBasis& basis, const SecondQuantizedHamiltonian& sq);

/// Full-register state carrying the FCI amplitudes.
StateVector ground_state(const FCISolution& sol);
Distribution ground_distribution(const FCISolution& sol);

struct SpinExpectations {
  double s_squared = 0.0;
  double s_z = 0.0;
};

/// <S^2> and <Sz> of a state in the interleaved alpha/beta layout.
SpinExpectations spin_expectations(const StateVector& state);
SpinExpectations spin_expectations(const FCISolution& sol);

}  // namespace cvqe
