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

#include "cvqe/scf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "cvqe/common.hpp"

namespace cvqe {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd coulomb(const Tensor4& eri, const MatrixXd& d) {
  const int n = eri.dim();
  MatrixXd j = MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double acc = 0.0;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) acc += eri(p, q, r, s) * d(r, s);
      j(p, q) = acc;
    }
  return j;
}

MatrixXd exchange(const Tensor4& eri, const MatrixXd& d) {
  const int n = eri.dim();
  MatrixXd k = MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double acc = 0.0;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) acc += eri(p, r, q, s) * d(r, s);
      k(p, q) = acc;
    }
  return k;
}

MatrixXd symmetric_orthogonalizer(const MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
  return es.eigenvectors() *
         es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

struct FockPair {
  MatrixXd alpha;
  MatrixXd beta;
};

FockPair build_fock(const IntegralSet& ints, const MatrixXd& da,
                    const MatrixXd& db) {
  const MatrixXd j = coulomb(ints.eri, da + db);
  return {ints.core + j - exchange(ints.eri, da),
          ints.core + j - exchange(ints.eri, db)};
}

/// Roothaan single-matrix effective Fock operator in the AO basis. Diagonal
/// blocks (closed/open/virtual) use (Fa+Fb)/2, closed-open couples through
/// Fb, open-virtual through Fa, closed-virtual through (Fa+Fb)/2.
MatrixXd effective_fock(const FockPair& f, const MatrixXd& c,
                        const MatrixXd& s, int n_alpha, int n_beta) {
  const int n = static_cast<int>(c.cols());
  const MatrixXd fa = c.transpose() * f.alpha * c;
  const MatrixXd fb = c.transpose() * f.beta * c;
  const MatrixXd fc = 0.5 * (fa + fb);
  auto block = [&](int i) { return i < n_beta ? 0 : (i < n_alpha ? 1 : 2); };
  MatrixXd feff(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int bi = block(i), bj = block(j);
      if (bi == bj) {
        feff(i, j) = fc(i, j);
      } else if ((bi == 0 && bj == 1) || (bi == 1 && bj == 0)) {
        feff(i, j) = fb(i, j);
      } else if ((bi == 1 && bj == 2) || (bi == 2 && bj == 1)) {
        feff(i, j) = fa(i, j);
      } else {
        feff(i, j) = fc(i, j);
      }
    }
  }
  // C^-1 = C^T S for S-orthonormal C.
  const MatrixXd cinv = c.transpose() * s;
  return cinv.transpose() * feff * cinv;
}

void fix_phases(MatrixXd& c) {
  for (int k = 0; k < c.cols(); ++k) {
    Eigen::Index imax = 0;
    c.col(k).cwiseAbs().maxCoeff(&imax);
    if (c(imax, k) < 0.0) c.col(k) *= -1.0;
  }
}

class Diis {
 public:
  explicit Diis(int size) : size_(size) {}

  MatrixXd extrapolate(const MatrixXd& fock, const MatrixXd& error) {
    focks_.push_back(fock);
    errors_.push_back(error);
    if (static_cast<int>(focks_.size()) > size_) {
      focks_.pop_front();
      errors_.pop_front();
    }
    const int m = static_cast<int>(focks_.size());
    if (m < 2) return fock;
    MatrixXd b = MatrixXd::Constant(m + 1, m + 1, -1.0);
    b(m, m) = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        b(i, j) = (errors_[i].array() * errors_[j].array()).sum();
    VectorXd rhs = VectorXd::Zero(m + 1);
    rhs(m) = -1.0;
    const VectorXd x = b.colPivHouseholderQr().solve(rhs);
    if (!x.allFinite()) return fock;
    MatrixXd out = MatrixXd::Zero(fock.rows(), fock.cols());
    for (int i = 0; i < m; ++i) out += x(i) * focks_[i];
    return out;
  }

 private:
  int size_;
  std::deque<MatrixXd> focks_;
  std::deque<MatrixXd> errors_;
};

struct Attempt {
  SCFResult result;
  double last_delta = std::numeric_limits<double>::infinity();
};

Attempt scf_from(const IntegralSet& ints, MatrixXd c, int n_alpha, int n_beta,
                 const ScfConfig& cfg, const MatrixXd& x) {
  const MatrixXd& s = ints.overlap;
  Diis diis(cfg.diis_size);
  Attempt at;
  double e_prev = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    auto [da, db] = rohf_densities(c, n_alpha, n_beta);
    const FockPair f = build_fock(ints, da, db);
    const double e = rohf_energy(ints, da, db);
    const MatrixXd feff = effective_fock(f, c, s, n_alpha, n_beta);
    const MatrixXd d = da + db;
    const MatrixXd err = x.transpose() * (feff * d * s - s * d * feff) * x;
    const double norm = err.norm();
    at.last_delta = std::abs(e - e_prev);
    at.result.iterations = it;
    at.result.e_hf = e;
    at.result.commutator_norm = norm;
    if (norm < cfg.commutator_tol && at.last_delta < cfg.energy_tol) {
      // Canonicalize within the closed/open/virtual blocks so the orbital
      // energies are eigenvalues of the converged effective Fock operator.
      const MatrixXd fmo = c.transpose() * feff * c;
      MatrixXd rot = MatrixXd::Zero(c.cols(), c.cols());
      VectorXd eps(c.cols());
      const int bounds[4] = {0, n_beta, n_alpha, static_cast<int>(c.cols())};
      for (int b = 0; b < 3; ++b) {
        const int lo = bounds[b], len = bounds[b + 1] - bounds[b];
        if (len == 0) continue;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(fmo.block(lo, lo, len, len));
        rot.block(lo, lo, len, len) = es.eigenvectors();
        eps.segment(lo, len) = es.eigenvalues();
      }
      c = c * rot;
      fix_phases(c);
      at.result.mo_coeffs = c;
      at.result.orbital_energies = eps;
      at.result.converged = true;
      return at;
    }
    e_prev = e;
    MatrixXd fx = diis.extrapolate(feff, err);
    if (cfg.level_shift > 0.0) {
      // S C_open C_open^T S and S C_virt C_virt^T S in the current frame.
      const MatrixXd sc = s * c;
      const auto so = sc.middleCols(n_beta, n_alpha - n_beta);
      const auto sv = sc.rightCols(c.cols() - n_alpha);
      fx += 0.5 * cfg.level_shift * so * so.transpose() +
            cfg.level_shift * sv * sv.transpose();
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(x.transpose() * fx * x);
    c = x * es.eigenvectors();
    at.result.orbital_energies = es.eigenvalues();
  }
  at.result.mo_coeffs = c;
  return at;
}

std::vector<MatrixXd> starting_orbitals(const IntegralSet& ints,
                                        const MatrixXd& x, int n_alpha,
                                        bool multi_start) {
  const int n = ints.n_ao;
  std::vector<MatrixXd> bases;
  {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(x.transpose() * ints.core * x);
    bases.push_back(x * es.eigenvectors());
  }
  if (!multi_start) return bases;
  {
    // Generalized Wolfsberg-Helmholz.
    MatrixXd h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        h(i, j) = i == j ? ints.core(i, i)
                         : 0.875 * ints.overlap(i, j) *
                               (ints.core(i, i) + ints.core(j, j));
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(x.transpose() * h * x);
    bases.push_back(x * es.eigenvectors());
  }

  // Occupation permutations among the lowest few orbitals: pick which
  // columns play the closed and open roles. Keeps the search small.
  std::vector<MatrixXd> out;
  const int m = std::min(n, n_alpha + 2);
  for (const auto& base : bases) {
    out.push_back(base);
    if (m > 16) continue;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != n_alpha) continue;
      if (mask == (1u << n_alpha) - 1) continue;  // identity, already added
      std::vector<int> order;
      for (int k = 0; k < m; ++k)
        if (mask >> k & 1u) order.push_back(k);
      for (int k = 0; k < n; ++k)
        if (k >= m || !(mask >> k & 1u)) order.push_back(k);
      MatrixXd c(n, n);
      for (int k = 0; k < n; ++k) c.col(k) = base.col(order[k]);
      out.push_back(c);
      if (out.size() > 64) break;
    }
  }
  return out;
}

}  // namespace

std::pair<int, int> electron_counts(int total_nuclear_charge, int charge,
                                    int two_s) {
  const int n = total_nuclear_charge - charge;
  if (n < 0) throw DomainError("negative electron count");
  if (two_s < 0) two_s = n % 2;
  if (two_s > n || (n + two_s) % 2 != 0) {
    throw DomainError("spin 2S=" + std::to_string(two_s) +
                      " incompatible with " + std::to_string(n) +
                      " electrons");
  }
  return {(n + two_s) / 2, (n - two_s) / 2};
}

std::pair<MatrixXd, MatrixXd> rohf_densities(const MatrixXd& c, int n_alpha,
                                             int n_beta) {
  const auto ca = c.leftCols(n_alpha);
  const auto cb = c.leftCols(n_beta);
  return {ca * ca.transpose(), cb * cb.transpose()};
}

double rohf_energy(const IntegralSet& ints, const MatrixXd& da,
                   const MatrixXd& db) {
  const FockPair f = build_fock(ints, da, db);
  const double e = 0.5 * (((da + db).array() * ints.core.array()).sum() +
                          (da.array() * f.alpha.array()).sum() +
                          (db.array() * f.beta.array()).sum());
  return e + ints.e_nuc;
}

double rohf_commutator_norm(const IntegralSet& ints, const SCFResult& scf) {
  auto [da, db] = rohf_densities(scf.mo_coeffs, scf.n_alpha, scf.n_beta);
  const FockPair f = build_fock(ints, da, db);
  const MatrixXd feff = effective_fock(f, scf.mo_coeffs, ints.overlap,
                                       scf.n_alpha, scf.n_beta);
  const MatrixXd x = symmetric_orthogonalizer(ints.overlap);
  const MatrixXd d = da + db;
  return (x.transpose() *
          (feff * d * ints.overlap - ints.overlap * d * feff) * x)
      .norm();
}

SCFResult run_scf(const IntegralSet& ints, int n_alpha, int n_beta,
                  const ScfConfig& cfg) {
  if (n_alpha < n_beta) std::swap(n_alpha, n_beta);
  if (n_beta < 0 || n_alpha > ints.n_ao) {
    throw DomainError("electron counts (" + std::to_string(n_alpha) + ", " +
                      std::to_string(n_beta) + ") do not fit in " +
                      std::to_string(ints.n_ao) + " orbitals");
  }
  const MatrixXd x = symmetric_orthogonalizer(ints.overlap);

  std::optional<SCFResult> best;
  double worst_delta = 0.0;
  for (const auto& c0 : starting_orbitals(ints, x, n_alpha, cfg.multi_start)) {
    Attempt at = scf_from(ints, c0, n_alpha, n_beta, cfg, x);
    if (!at.result.converged) {
      worst_delta = std::max(worst_delta, at.last_delta);
      continue;
    }
    // Prefer lower energies; ties resolved by the first (deterministic) start.
    if (!best || at.result.e_hf < best->e_hf - 1e-9) best = at.result;
  }
  if (!best) {
    throw ConvergenceError("SCF did not converge in " +
                               std::to_string(cfg.max_iterations) +
                               " iterations from any starting guess",
                           worst_delta);
  }
  best->n_alpha = n_alpha;
  best->n_beta = n_beta;
  return *best;
}

MOIntegrals transform_to_mo(const IntegralSet& ints, const MatrixXd& c) {
  const int n = ints.n_ao;
  const int m = static_cast<int>(c.cols());
  if (c.rows() != n) throw DomainError("MO coefficient shape mismatch");
  MOIntegrals mo;
  mo.n_mo = m;
  mo.e_nuc = ints.e_nuc;
  mo.h_mo = c.transpose() * ints.core * c;

  // Quarter transforms: (pq|rs) -> (iq|rs) -> (ij|rs) -> (ij|ks) -> (ij|kl).
  Tensor4 t1(std::max(n, m)), t2(std::max(n, m));
  auto& a = t1;
  auto& b = t2;
  for (int i = 0; i < m; ++i)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double acc = 0.0;
          for (int p = 0; p < n; ++p) acc += c(p, i) * ints.eri(p, q, r, s);
          a(i, q, r, s) = acc;
        }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double acc = 0.0;
          for (int q = 0; q < n; ++q) acc += c(q, j) * a(i, q, r, s);
          b(i, j, r, s) = acc;
        }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int s = 0; s < n; ++s) {
          double acc = 0.0;
          for (int r = 0; r < n; ++r) acc += c(r, k) * b(i, j, r, s);
          a(i, j, k, s) = acc;
        }
  mo.g_mo = Tensor4(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double acc = 0.0;
          for (int s = 0; s < n; ++s) acc += c(s, l) * a(i, j, k, s);
          mo.g_mo(i, j, k, l) = acc;
        }
  return mo;
}

MOIntegrals transform_to_mo(const IntegralSet& ints, const SCFResult& scf) {
  if (!scf.converged) throw DomainError("SCF result is not converged");
  return transform_to_mo(ints, scf.mo_coeffs);
}

double determinant_energy(const MOIntegrals& mo, int n_alpha, int n_beta) {
  const auto& g = mo.g_mo;
  double e = mo.e_nuc;
  for (int i = 0; i < n_alpha; ++i) e += mo.h_mo(i, i);
  for (int i = 0; i < n_beta; ++i) e += mo.h_mo(i, i);
  for (int i = 0; i < n_alpha; ++i)
    for (int j = 0; j < n_alpha; ++j) e += 0.5 * (g(i, i, j, j) - g(i, j, j, i));
  for (int i = 0; i < n_beta; ++i)
    for (int j = 0; j < n_beta; ++j) e += 0.5 * (g(i, i, j, j) - g(i, j, j, i));
  for (int i = 0; i < n_alpha; ++i)
    for (int j = 0; j < n_beta; ++j) e += g(i, i, j, j);
  return e;
}

double excitation_gap(const VectorXd& eps, FockIndex reference,
                      bool conserve_sz) {
  const int q = static_cast<int>(eps.size());
  if (q > 30) throw ResourceError("excitation_gap: too many spin-orbitals");
  constexpr FockIndex kEven = 0x5555555555555555ULL;
  const int n_ref = std::popcount(reference);
  const int up_ref = std::popcount(reference & kEven);
  std::vector<double> levels;
  for (FockIndex n = 0; n < (FockIndex{1} << q); ++n) {
    if (std::popcount(n) != n_ref) continue;
    if (conserve_sz && std::popcount(n & kEven) != up_ref) continue;
    double e = 0.0;
    for (int p = 0; p < q; ++p)
      if (n >> p & 1) e += eps(p);
    levels.push_back(e);
  }
  if (levels.size() < 2) return std::numeric_limits<double>::infinity();
  std::partial_sort(levels.begin(), levels.begin() + 2, levels.end());
  return levels[1] - levels[0];
}

ModelHamiltonian model_hamiltonian(const SCFResult& scf) {
  if (!scf.converged) throw DomainError("SCF result is not converged");
  const int m = static_cast<int>(scf.orbital_energies.size());
  ModelHamiltonian out;
  out.h0_diag.resize(2 * m);
  for (int i = 0; i < m; ++i) {
    out.h0_diag(2 * i) = scf.orbital_energies(i);
    out.h0_diag(2 * i + 1) = scf.orbital_energies(i);
  }
  for (int i = 0; i < scf.n_alpha; ++i) out.reference |= FockIndex{1} << (2 * i);
  for (int i = 0; i < scf.n_beta; ++i) out.reference |= FockIndex{1} << (2 * i + 1);
  double occupied = 0.0;
  for (int p = 0; p < 2 * m; ++p)
    if (out.reference >> p & 1) occupied += out.h0_diag(p);
  out.shift = scf.e_hf - occupied;
  out.omega0 = excitation_gap(out.h0_diag, out.reference, true);
  if (out.omega0 < 1e-8) {
    out.warnings.push_back("degenerate frontier orbitals: model gap " +
                           std::to_string(out.omega0) + " Ha");
  }
  return out;
}

}  // namespace cvqe
