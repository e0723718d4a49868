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

#include "cvqe/fermion.hpp"

#include <cmath>
#include <numeric>

#include "cvqe/cvqe.hpp"

namespace cvqe {

SecondQuantizedHamiltonian::SecondQuantizedHamiltonian(int n)
    : q_(n),
      h_(Eigen::MatrixXd::Zero(n, n)),
      g_(static_cast<std::size_t>(n) * n * n * n, 0.0) {
  if (n < 0 || n > 64) throw DomainError("spin-orbital count out of range");
}

double SecondQuantizedHamiltonian::max_invariant_violation() const {
  double worst = (h_ - h_.transpose()).cwiseAbs().maxCoeff();
  for (int p = 0; p < q_; ++p)
    for (int q = 0; q < q_; ++q)
      for (int r = 0; r < q_; ++r)
        for (int s = 0; s < q_; ++s) {
          const double v = two_body(p, q, r, s);
          worst = std::max(worst, std::abs(v + two_body(q, p, r, s)));
          worst = std::max(worst, std::abs(v + two_body(p, q, s, r)));
          worst = std::max(worst, std::abs(v - two_body(r, s, p, q)));
          const bool conserves = (p % 2 + q % 2) == (r % 2 + s % 2);
          if (!conserves) worst = std::max(worst, std::abs(v));
        }
  for (int p = 0; p < q_; ++p)
    for (int q = 0; q < q_; ++q)
      if (p % 2 != q % 2) worst = std::max(worst, std::abs(h_(p, q)));
  return worst;
}

SecondQuantizedHamiltonian second_quantize(const MOIntegrals& mo) {
  const int n = mo.n_mo;
  if (mo.h_mo.rows() != n || mo.h_mo.cols() != n || mo.g_mo.dim() != n) {
    throw DomainError("MO integral shapes disagree with n_mo");
  }
  SecondQuantizedHamiltonian sq(2 * n);
  sq.set_constant(mo.e_nuc);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int s = 0; s < 2; ++s) sq.one_body()(2 * i + s, 2 * j + s) = mo.h_mo(i, j);

  // <PQ|RS> = (pr|qs) delta(sP, sR) delta(sQ, sS).
  auto coulomb = [&](int p, int q, int r, int s) {
    if (p % 2 != r % 2 || q % 2 != s % 2) return 0.0;
    return mo.g_mo(p / 2, r / 2, q / 2, s / 2);
  };
  const int m = 2 * n;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
          sq.two_body(p, q, r, s) = coulomb(p, q, r, s) - coulomb(p, q, s, r);
  return sq;
}

FockIndex hf_determinant(int n_alpha, int n_beta) {
  if (n_alpha < 0 || n_beta < 0 || n_alpha > 32 || n_beta > 32) {
    throw DomainError("electron counts out of range");
  }
  FockIndex n = 0;
  for (int i = 0; i < n_alpha; ++i) n |= FockIndex{1} << (2 * i);
  for (int i = 0; i < n_beta; ++i) n |= FockIndex{1} << (2 * i + 1);
  return n;
}

void ComplexPauliSum::add(const PauliString& p, cplx c) {
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < PauliSum::kCoefficientFloor) terms_.erase(it);
}

ComplexPauliSum ComplexPauliSum::operator*(const ComplexPauliSum& other) const {
  ComplexPauliSum out(n_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : other.terms_) {
      auto [phase, p] = multiply(a, b);
      out.add(p, phase * ca * cb);
    }
  return out;
}

ComplexPauliSum& ComplexPauliSum::operator+=(const ComplexPauliSum& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

namespace {

ComplexPauliSum ladder(int n, int p, double y_sign) {
  if (p < 0 || p >= n) throw DomainError("mode index out of range");
  const std::uint64_t z_string = (std::uint64_t{1} << p) - 1;
  const std::uint64_t bit = std::uint64_t{1} << p;
  ComplexPauliSum out(n);
  out.add(PauliString(n, bit, z_string), 0.5);
  out.add(PauliString(n, bit, z_string | bit), cplx(0.0, 0.5 * y_sign));
  return out;
}

}  // namespace

ComplexPauliSum ComplexPauliSum::creation(int n, int p) { return ladder(n, p, -1.0); }
ComplexPauliSum ComplexPauliSum::annihilation(int n, int p) { return ladder(n, p, 1.0); }

PauliSum ComplexPauliSum::to_real(double tol) const {
  PauliSum out(n_);
  for (const auto& [p, c] : terms_) {
    if (std::abs(c.imag()) > tol) {
      throw DomainError("non-Hermitian term " + p.letters());
    }
    out.add(p, c.real());
  }
  return out;
}

PauliSum jordan_wigner(const SecondQuantizedHamiltonian& sq) {
  const int n = sq.n_qubits();
  std::vector<ComplexPauliSum> cr, an;
  for (int p = 0; p < n; ++p) {
    cr.push_back(ComplexPauliSum::creation(n, p));
    an.push_back(ComplexPauliSum::annihilation(n, p));
  }
  ComplexPauliSum acc(n);
  acc.add(PauliString(n), sq.constant());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double h = sq.one_body()(p, q);
      if (h == 0.0) continue;
      ComplexPauliSum term = cr[p] * an[q];
      for (const auto& [s, c] : term.terms()) acc.add(s, h * c);
    }
  // 1/4 sum over all index orders equals the sum over P<Q, R<S.
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      const ComplexPauliSum pair = cr[p] * cr[q];
      for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s) {
          const double g = sq.two_body(p, q, r, s);
          if (g == 0.0) continue;
          const ComplexPauliSum term = pair * (an[s] * an[r]);
          for (const auto& [str, c] : term.terms()) acc.add(str, g * c);
        }
    }
  return acc.to_real();
}

JordanWignerResult jordan_wigner(const SecondQuantizedHamiltonian& sq,
                                 const JordanWignerOptions& opts) {
  JordanWignerResult out;
  out.hamiltonian = jordan_wigner(sq);
  if (!opts.verify) return out;
  const int n = sq.n_qubits();
  if (n > opts.verify_max_qubits) {
    out.warnings.push_back("dense verification skipped: " + std::to_string(n) +
                           " qubits exceeds limit " +
                           std::to_string(opts.verify_max_qubits));
    return out;
  }
  std::vector<FockIndex> all(std::size_t{1} << n);
  std::iota(all.begin(), all.end(), FockIndex{0});
  const Eigen::MatrixXd direct = determinant_matrix(all, sq);
  const Eigen::MatrixXcd dense =
      to_dense(out.hamiltonian, {.max_qubits = opts.verify_max_qubits});
  out.verification_error = (dense - direct.cast<cplx>()).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace cvqe
