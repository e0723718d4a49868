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
#include <vector>

#include "cvqe/fermion.hpp"
#include "cvqe/statevector.hpp"

namespace cvqe {

/// Sampled Fock indices retained for the subspace, ascending.
struct OutcomeSet {
  std::vector<FockIndex> members;
  long long threshold = 1;
  std::size_t size() const noexcept { return members.size(); }
};

struct SubspaceHamiltonian {
  OutcomeSet basis;
  Eigen::MatrixXd matrix;  // Hartree
};

struct OptimizedState {
  double energy = 0.0;  // Hartree
  Eigen::VectorXcd theta;
};

/// members = {n : counts[n] >= max(threshold, 1)}.
OutcomeSet collect_outcomes(const SampleCounts& counts, long long threshold);

/// <n|H|m> between occupation-number states with Jordan-Wigner ordering signs.
double slater_condon(FockIndex n, FockIndex m,
                     const SecondQuantizedHamiltonian& sq);

/// Dense determinant-basis matrix over an arbitrary ordered basis.
Eigen::MatrixXd determinant_matrix(std::span<const FockIndex> basis,
                                   const SecondQuantizedHamiltonian& sq);

SubspaceHamiltonian build_subspace(const OutcomeSet& outcomes,
                                   const SecondQuantizedHamiltonian& sq);

/// Lowest eigenpair; theta's first nonzero component is real-positive.
OptimizedState optimize(const SubspaceHamiltonian& subspace);
OptimizedState optimize(const Eigen::MatrixXcd& matrix);

StateVector embed_optimized(const Eigen::VectorXcd& theta,
                            const OutcomeSet& outcomes, int n_qubits);

struct LambdaEntry {
  FockIndex index = 0;
  cplx lambda{0.0, 0.0};
  /// Non-member (lambda = i * infinity) or zero guiding amplitude.
  bool infinite = false;
  bool flagged = false;
};

/// lambda_n = -i log(theta_n / <n|psi0>), principal branch. Members come first
/// in outcome order; every other index of the register follows as a sentinel.
std::vector<LambdaEntry> lambda_diagnostics(const Eigen::VectorXcd& theta,
                                            const StateVector& guiding,
                                            const OutcomeSet& outcomes);

/// theta_n = <n|psi0> exp(i lambda_n) over members.
Eigen::VectorXcd reconstruct_theta(const std::vector<LambdaEntry>& lambdas,
                                   const StateVector& guiding,
                                   const OutcomeSet& outcomes);

}  // namespace cvqe
