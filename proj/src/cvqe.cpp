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

#include "cvqe/cvqe.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace cvqe {

namespace {

/// Parity of the occupied modes below p: the Jordan-Wigner string sign.
double jw_sign(FockIndex n, int p) {
  const FockIndex below = (FockIndex{1} << p) - 1;
  return (std::popcount(n & below) & 1) ? -1.0 : 1.0;
}

std::vector<int> bits_of(FockIndex n) {
  std::vector<int> out;
  while (n) {
    out.push_back(std::countr_zero(n));
    n &= n - 1;
  }
  return out;
}

}  // namespace

OutcomeSet collect_outcomes(const SampleCounts& counts, long long threshold) {
  if (threshold < 0) throw DomainError("count threshold must be nonnegative");
  OutcomeSet out;
  out.threshold = threshold;
  const long long cut = std::max(threshold, 1LL);
  for (const auto& [n, c] : counts.counts)
    if (c >= cut) out.members.push_back(n);
  if (out.members.empty()) {
    throw EmptySubspaceError("no outcome reaches the count threshold " +
                             std::to_string(threshold));
  }
  return out;
}

double slater_condon(FockIndex n, FockIndex m, const SecondQuantizedHamiltonian& sq) {
  const FockIndex diff = n ^ m;
  const int ndiff = std::popcount(diff);
  if (ndiff > 4 || std::popcount(n) != std::popcount(m)) return 0.0;
  const auto& h = sq.one_body();

  if (ndiff == 0) {
    const auto occ = bits_of(n);
    double e = sq.constant();
    for (int p : occ) e += h(p, p);
    for (std::size_t a = 0; a < occ.size(); ++a)
      for (std::size_t b = a + 1; b < occ.size(); ++b)
        e += sq.two_body(occ[a], occ[b], occ[a], occ[b]);
    return e;
  }

  if (ndiff == 2) {
    // n = a+_p a_r m
    const int p = std::countr_zero(n & diff);
    const int r = std::countr_zero(m & diff);
    const FockIndex mid = m ^ (FockIndex{1} << r);
    const double sign = jw_sign(m, r) * jw_sign(mid, p);
    double v = h(p, r);
    for (int q : bits_of(m & n)) v += sq.two_body(p, q, r, q);
    return sign * v;
  }

  // n = a+_p a+_q a_s a_r m with p < q and r < s.
  const auto created = bits_of(n & diff);
  const auto removed = bits_of(m & diff);
  const int p = created[0], q = created[1];
  const int r = removed[0], s = removed[1];
  FockIndex cur = m;
  double sign = jw_sign(cur, r);
  cur ^= FockIndex{1} << r;
  sign *= jw_sign(cur, s);
  cur ^= FockIndex{1} << s;
  sign *= jw_sign(cur, q);
  cur ^= FockIndex{1} << q;
  sign *= jw_sign(cur, p);
  return sign * sq.two_body(p, q, r, s);
}

Eigen::MatrixXd determinant_matrix(std::span<const FockIndex> basis,
                                   const SecondQuantizedHamiltonian& sq) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i; j < d; ++j) {
      const double v = slater_condon(basis[i], basis[j], sq);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

SubspaceHamiltonian build_subspace(const OutcomeSet& outcomes,
                                   const SecondQuantizedHamiltonian& sq) {
  if (outcomes.members.empty()) throw EmptySubspaceError("empty outcome set");
  return {outcomes, determinant_matrix(outcomes.members, sq)};
}

OptimizedState optimize(const Eigen::MatrixXcd& matrix) {
  if (matrix.rows() == 0) throw EmptySubspaceError("subspace has dimension 0");
  if (matrix.rows() != matrix.cols()) throw DomainError("subspace matrix not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix);
  OptimizedState out;
  out.energy = es.eigenvalues()(0);
  out.theta = es.eigenvectors().col(0);
  out.theta.normalize();
  for (Eigen::Index k = 0; k < out.theta.size(); ++k) {
    const double mag = std::abs(out.theta(k));
    if (mag > 1e-14) {
      out.theta *= std::conj(out.theta(k)) / mag;
      out.theta(k) = mag;
      break;
    }
  }
  return out;
}

OptimizedState optimize(const SubspaceHamiltonian& subspace) {
  return optimize(subspace.matrix.cast<cplx>().eval());
}

StateVector embed_optimized(const Eigen::VectorXcd& theta, const OutcomeSet& outcomes,
                            int n_qubits) {
  if (theta.size() != static_cast<Eigen::Index>(outcomes.size())) {
    throw DomainError("theta length differs from the outcome set");
  }
  StateVector s(n_qubits);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (outcomes.members[k] >= s.dim()) throw DomainError("outcome outside register");
    s[outcomes.members[k]] = theta(static_cast<Eigen::Index>(k));
  }
  return s;
}

std::vector<LambdaEntry> lambda_diagnostics(const Eigen::VectorXcd& theta,
                                            const StateVector& guiding,
                                            const OutcomeSet& outcomes) {
  if (theta.size() != static_cast<Eigen::Index>(outcomes.size())) {
    throw DomainError("theta length differs from the outcome set");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<LambdaEntry> out;
  std::vector<bool> member(guiding.dim(), false);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const FockIndex n = outcomes.members[k];
    member.at(n) = true;
    LambdaEntry e;
    e.index = n;
    const cplx g = guiding[n];
    if (std::abs(g) == 0.0) {
      e.flagged = true;
      e.infinite = true;
      e.lambda = {0.0, kInf};
    } else {
      e.lambda = cplx(0.0, -1.0) * std::log(theta(static_cast<Eigen::Index>(k)) / g);
    }
    out.push_back(e);
  }
  for (std::size_t n = 0; n < guiding.dim(); ++n) {
    if (member[n]) continue;
    out.push_back({static_cast<FockIndex>(n), {0.0, kInf}, true, false});
  }
  return out;
}

Eigen::VectorXcd reconstruct_theta(const std::vector<LambdaEntry>& lambdas,
                                   const StateVector& guiding,
                                   const OutcomeSet& outcomes) {
  Eigen::VectorXcd theta = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(outcomes.size()));
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const FockIndex n = outcomes.members[k];
    for (const auto& e : lambdas) {
      if (e.index != n) continue;
      if (!e.infinite) theta(static_cast<Eigen::Index>(k)) = guiding[n] * std::exp(cplx(0.0, 1.0) * e.lambda);
      break;
    }
  }
  return theta;
}

}  // namespace cvqe
