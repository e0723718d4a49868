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
#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "cvqe/common.hpp"

namespace cvqe {

/// Tensor product of single-qubit Paulis stored as symplectic bit masks:
/// qubit q carries X^x Z^z with Y = i X Z. Supports up to 64 qubits.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits) : n_(n_qubits) { check_width(); }
  PauliString(int n_qubits, std::uint64_t x, std::uint64_t z);

  /// Letters indexed by qubit: text[q] is the operator on qubit q.
  static PauliString from_letters(std::string_view text);
  static PauliString single(int n_qubits, int qubit, char letter);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  char letter(int qubit) const noexcept;
  std::string letters() const;

  int weight() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  /// Only I and Z letters: diagonal in the occupation basis.
  bool is_diagonal() const noexcept { return x_ == 0; }
  int y_count() const noexcept;

  /// P|n> = phase(n) |n ^ flip_mask()>.
  std::uint64_t flip_mask() const noexcept { return x_; }
  cplx phase(FockIndex n) const noexcept;

  /// Canonical order: lexicographic over qubits 0..Q-1 with I < X < Y < Z.
  std::strong_ordering operator<=>(const PauliString& other) const noexcept;
  bool operator==(const PauliString& other) const noexcept = default;

 private:
  void check_width() const;
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Product a * b = phase * c.
std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings with real coefficients (Hermitian operator).
/// Terms live in a canonical sorted map; entries with |c| < 1e-12 are dropped.
class PauliSum {
 public:
  static constexpr double kCoefficientFloor = 1e-12;
  using TermMap = std::map<PauliString, double>;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}

  int n_qubits() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Accumulates c into the term for p, deleting it if it falls below floor.
  void add(const PauliString& p, double c);
  double coefficient(const PauliString& p) const;
  double identity_coefficient() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(double s);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(double s, PauliSum a) { return a *= s; }

  /// y = H x over the full 2^Q register.
  void apply(std::span<const cplx> x, std::span<cplx> y) const;
  bool is_real_matrix() const noexcept;

  /// One term per line: `coefficient letters`, letters indexed by qubit.
  std::string to_text() const;
  static PauliSum from_text(std::string_view text);

 private:
  int n_ = 0;
  TermMap terms_;
};

/// (1 - eta) h0 + eta h with merged terms; eta outside [0, 1] is an error.
PauliSum interpolate(const PauliSum& h0, const PauliSum& h, double eta);

/// Removes terms with |c| < threshold; optionally removes every {I, Z}-only
/// string (the identity included).
PauliSum prune(const PauliSum& h, double threshold, bool drop_diagonal);

struct DenseOptions {
  int max_qubits = 14;
};

/// Dense 2^Q x 2^Q matrix with qubit 0 as least-significant index bit.
Eigen::MatrixXcd to_dense(const PauliSum& h, const DenseOptions& opts = {});
/// Real symmetric dense matrix; requires is_real_matrix().
Eigen::MatrixXd to_dense_real(const PauliSum& h, const DenseOptions& opts = {});

/// Pauli sum of a diagonal operator sum_q eps_q n_q + shift, n_q = (I - Z_q)/2.
PauliSum diagonal_number_operator(std::span<const double> eps, double shift);

}  // namespace cvqe
