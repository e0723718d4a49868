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
#include <map>
#include <string>
#include <vector>

#include "cvqe/pauli.hpp"
#include "cvqe/scf.hpp"

namespace cvqe {

/// H = constant + sum_PQ h_PQ a+_P a_Q + 1/4 sum_PQRS <PQ||RS> a+_P a+_Q a_S a_R
/// over spin-orbitals q = 2 i + s (s = 0 alpha, s = 1 beta).
class SecondQuantizedHamiltonian {
 public:
  SecondQuantizedHamiltonian() = default;
  explicit SecondQuantizedHamiltonian(int n_spin_orbitals);

  int n_spin_orbitals() const noexcept { return q_; }
  int n_qubits() const noexcept { return q_; }

  Eigen::MatrixXd& one_body() noexcept { return h_; }
  const Eigen::MatrixXd& one_body() const noexcept { return h_; }
  double constant() const noexcept { return constant_; }
  void set_constant(double c) noexcept { constant_ = c; }

  /// Antisymmetrized <PQ||RS>.
  double two_body(int p, int q, int r, int s) const noexcept {
    return g_[index(p, q, r, s)];
  }
  double& two_body(int p, int q, int r, int s) noexcept {
    return g_[index(p, q, r, s)];
  }

  /// Largest violation of hermiticity / antisymmetry / spin orthogonality.
  double max_invariant_violation() const;

 private:
  std::size_t index(int p, int q, int r, int s) const noexcept {
    return ((static_cast<std::size_t>(p) * q_ + q) * q_ + r) * q_ + s;
  }
  int q_ = 0;
  Eigen::MatrixXd h_;
  std::vector<double> g_;
  double constant_ = 0.0;
};

SecondQuantizedHamiltonian second_quantize(const MOIntegrals& mo);

/// Fock index of the determinant with alpha MOs [0, n_alpha) and beta MOs
/// [0, n_beta) occupied.
FockIndex hf_determinant(int n_alpha, int n_beta);

/// Pauli sum with complex coefficients, used as an intermediate while
/// expanding fermionic products.
class ComplexPauliSum {
 public:
  explicit ComplexPauliSum(int n_qubits) : n_(n_qubits) {}
  int n_qubits() const noexcept { return n_; }
  const std::map<PauliString, cplx>& terms() const noexcept { return terms_; }

  void add(const PauliString& p, cplx c);
  ComplexPauliSum operator*(const ComplexPauliSum& other) const;
  ComplexPauliSum& operator+=(const ComplexPauliSum& other);

  /// Fermionic ladder operators under Jordan-Wigner.
  static ComplexPauliSum creation(int n_qubits, int p);
  static ComplexPauliSum annihilation(int n_qubits, int p);

  /// Real-coefficient sum; throws DomainError if any |Im c| > tol.
  PauliSum to_real(double tol = 1e-10) const;

 private:
  int n_;
  std::map<PauliString, cplx> terms_;
};

struct JordanWignerOptions {
  /// Compare against the direct determinant-basis matrix when Q <= this.
  int verify_max_qubits = 10;
  bool verify = false;
};

struct JordanWignerResult {
  PauliSum hamiltonian;
  std::vector<std::string> warnings;
  /// Max |JW dense - determinant matrix| when verification ran, else < 0.
  double verification_error = -1.0;
};

PauliSum jordan_wigner(const SecondQuantizedHamiltonian& sq);
JordanWignerResult jordan_wigner(const SecondQuantizedHamiltonian& sq,
                                 const JordanWignerOptions& opts);

}  // namespace cvqe
