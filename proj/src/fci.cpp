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

#include "cvqe/fci.hpp"

#include <bit>
#include <cmath>

#include "cvqe/cvqe.hpp"

namespace cvqe {

namespace {

constexpr FockIndex kEven = 0x5555555555555555ULL;

}  // namespace

SectorBasis enumerate_sector(int n_qubits, int n_alpha, int n_beta) {
  if (n_qubits < 0 || n_qubits % 2 != 0 || n_qubits > 30) {
    throw DomainError("sector enumeration needs an even qubit count up to 30");
  }
  const int n_orb = n_qubits / 2;
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orb || n_beta > n_orb) {
    throw DomainError("infeasible electron counts (" + std::to_string(n_alpha) +
                      ", " + std::to_string(n_beta) + ") for " +
                      std::to_string(n_orb) + " orbitals");
  }
  SectorBasis b{{}, n_qubits, n_alpha, n_beta};
  for (FockIndex n = 0; n < (FockIndex{1} << n_qubits); ++n) {
    if (std::popcount(n & kEven) == n_alpha && std::popcount(n & ~kEven) == n_beta) {
      b.determinants.push_back(n);
    }
  }
  return b;
}

FCISolution solve_fci(const SectorBasis& basis, const SecondQuantizedHamiltonian& sq) {
  if (basis.determinants.empty()) throw DomainError("empty sector basis");
  if (basis.n_qubits != sq.n_qubits()) throw DomainError("sector/Hamiltonian size mismatch");
  const Eigen::MatrixXd h = determinant_matrix(basis.determinants, sq);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  FCISolution sol;
  sol.basis = basis;
  sol.energy = es.eigenvalues()(0);
  sol.vector = es.eigenvectors().col(0);
  for (Eigen::Index k = 0; k < sol.vector.size(); ++k) {
    if (std::abs(sol.vector(k)) > 1e-12) {
      if (sol.vector(k) < 0.0) sol.vector *= -1.0;
      break;
    }
  }
  sol.residual = (h * sol.vector - sol.energy * sol.vector).norm();
  sol.spectrum = es.eigenvalues();
  const auto spin = spin_expectations(ground_state(sol));
  sol.s_squared = spin.s_squared;
  sol.s_z = spin.s_z;
  return sol;
}

StateVector ground_state(const FCISolution& sol) {
  StateVector s(sol.basis.n_qubits);
  for (std::size_t k = 0; k < sol.basis.determinants.size(); ++k)
    s[sol.basis.determinants[k]] = sol.vector(static_cast<Eigen::Index>(k));
  return s;
}

Distribution ground_distribution(const FCISolution& sol) {
  return probabilities(ground_state(sol), DistributionLabel::kPGndD);
}

SpinExpectations spin_expectations(const StateVector& state) {
  const int q = state.n_qubits();
  const int n_orb = q / 2;
  SpinExpectations out;
  // <Sz> and <Sz^2> are diagonal.
  double sz = 0.0, sz2 = 0.0;
  for (std::size_t n = 0; n < state.dim(); ++n) {
    const double p = std::norm(state[n]);
    if (p == 0.0) continue;
    const double m = 0.5 * (std::popcount(n & kEven) - std::popcount(n & ~kEven));
    sz += p * m;
    sz2 += p * m * m;
  }
  // S^2 = S- S+ + Sz^2 + Sz, and <S- S+> = ||S+ psi||^2 with
  // S+ = sum_i a+_{i alpha} a_{i beta}.
  std::vector<cplx> raised(state.dim(), 0.0);
  for (std::size_t n = 0; n < state.dim(); ++n) {
    const cplx a = state[n];
    if (a == 0.0) continue;
    for (int i = 0; i < n_orb; ++i) {
      const int up = 2 * i, dn = 2 * i + 1;
      if (!(n >> dn & 1) || (n >> up & 1)) continue;
      const FockIndex mid = n ^ (FockIndex{1} << dn);
      int parity = std::popcount(n & ((FockIndex{1} << dn) - 1)) +
                   std::popcount(mid & ((FockIndex{1} << up) - 1));
      const FockIndex out_n = mid | (FockIndex{1} << up);
      raised[out_n] += (parity & 1) ? -a : a;
    }
  }
  double s_plus = 0.0;
  for (const cplx& v : raised) s_plus += std::norm(v);
  out.s_z = sz;
  out.s_squared = s_plus + sz2 + sz;
  return out;
}

SpinExpectations spin_expectations(const FCISolution& sol) {
  return {sol.s_squared, sol.s_z};
}

}  // namespace cvqe
