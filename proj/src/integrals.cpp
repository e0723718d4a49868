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

#include "cvqe/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cvqe/common.hpp"

namespace cvqe {

namespace {

// Hydrogen 1s contractions (Hehre, Stewart, Pople), zeta = 1.24.
// Table version 1; do not edit without bumping the version in the README.
constexpr std::array<Primitive, 3> kSto3gH = {{
    {3.42525091, 0.15432897},
    {0.62391373, 0.53532814},
    {0.16885540, 0.44463454},
}};

constexpr std::array<Primitive, 6> kSto6gH = {{
    {35.52322122, 0.00916359628},
    {6.513143725, 0.04936149294},
    {1.822142904, 0.16853830490},
    {0.625955266, 0.37056279970},
    {0.2430767471, 0.41649152980},
    {0.1001124280, 0.13033408410},
}};

constexpr double kPi = std::numbers::pi;
constexpr double kLinearDependenceTol = 1e-10;

using Vec3 = std::array<double, 3>;

double dist2(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

Vec3 weighted_center(double a, const Vec3& A, double b, const Vec3& B) {
  const double p = a + b;
  return {(a * A[0] + b * B[0]) / p, (a * A[1] + b * B[1]) / p,
          (a * A[2] + b * B[2]) / p};
}

/// A contracted s function: primitive exponents with coefficients that already
/// include primitive normalization and the overall contraction normalization.
struct ContractedS {
  Vec3 center;
  std::vector<double> exponents;
  std::vector<double> weights;
};

double prim_overlap(double a, double b, double r2) {
  const double p = a + b;
  return std::pow(kPi / p, 1.5) * std::exp(-a * b / p * r2);
}

ContractedS make_shell(const Vec3& center, std::span<const Primitive> prims) {
  ContractedS s{center, {}, {}};
  for (const auto& pr : prims) {
    s.exponents.push_back(pr.exponent);
    s.weights.push_back(pr.coefficient *
                        std::pow(2.0 * pr.exponent / kPi, 0.75));
  }
  double self = 0.0;
  for (std::size_t i = 0; i < prims.size(); ++i) {
    for (std::size_t j = 0; j < prims.size(); ++j) {
      self += s.weights[i] * s.weights[j] *
              prim_overlap(s.exponents[i], s.exponents[j], 0.0);
    }
  }
  const double scale = 1.0 / std::sqrt(self);
  for (double& w : s.weights) w *= scale;
  return s;
}

}  // namespace

BasisSet parse_basis_set(std::string_view name) {
  std::string lower;
  for (char c : name) {
    if (c != '-' && c != '_') lower.push_back(static_cast<char>(std::tolower(c)));
  }
  if (lower == "sto3g") return BasisSet::kSto3g;
  if (lower == "sto6g") return BasisSet::kSto6g;
  throw DomainError("unsupported basis set '" + std::string(name) +
                    "' (sto-3g, sto-6g)");
}

std::string to_string(BasisSet basis) {
  return basis == BasisSet::kSto3g ? "sto-3g" : "sto-6g";
}

std::span<const Primitive> hydrogen_1s(BasisSet basis) {
  if (basis == BasisSet::kSto3g) return kSto3gH;
  return kSto6gH;
}

void Tensor4::set_symmetric(int p, int q, int r, int s, double v) noexcept {
  (*this)(p, q, r, s) = v;
  (*this)(q, p, r, s) = v;
  (*this)(p, q, s, r) = v;
  (*this)(q, p, s, r) = v;
  (*this)(r, s, p, q) = v;
  (*this)(s, r, p, q) = v;
  (*this)(r, s, q, p) = v;
  (*this)(s, r, q, p) = v;
}

double Tensor4::max_symmetry_violation() const {
  double worst = 0.0;
  const auto& t = *this;
  for (int p = 0; p < n_; ++p)
    for (int q = 0; q < n_; ++q)
      for (int r = 0; r < n_; ++r)
        for (int s = 0; s < n_; ++s) {
          const double v = t(p, q, r, s);
          for (double w : {t(q, p, r, s), t(p, q, s, r), t(q, p, s, r),
                           t(r, s, p, q), t(s, r, p, q), t(r, s, q, p),
                           t(s, r, q, p)}) {
            worst = std::max(worst, std::abs(v - w));
          }
        }
  return worst;
}

double boys_f0(double t) {
  if (t < 0.0) throw DomainError("Boys function argument must be nonnegative");
  if (t < 1e-6) {
    // Taylor series; truncation error below 1e-20 in this range.
    return 1.0 - t / 3.0 + t * t / 10.0 - t * t * t / 42.0;
  }
  const double st = std::sqrt(t);
  return 0.5 * std::sqrt(kPi / t) * std::erf(st);
}

IntegralSet compute_integrals(const Geometry& geometry, BasisSet basis) {
  for (const auto& atom : geometry.atoms()) {
    if (atom.element != "H") {
      throw UnsupportedElementError("no basis functions for element '" +
                                    atom.element + "'");
    }
  }
  const int n = static_cast<int>(geometry.size());
  std::vector<ContractedS> shells;
  std::vector<Vec3> nuclei;
  std::vector<double> charges;
  for (const auto& atom : geometry.atoms()) {
    Vec3 c{};
    for (int k = 0; k < 3; ++k) c[k] = atom.position[k] * units::kAngstromToBohr;
    nuclei.push_back(c);
    charges.push_back(atom.charge);
    shells.push_back(make_shell(c, hydrogen_1s(basis)));
  }

  IntegralSet out;
  out.n_ao = n;
  out.overlap = Eigen::MatrixXd::Zero(n, n);
  out.core = Eigen::MatrixXd::Zero(n, n);
  out.eri = Tensor4(n);
  out.e_nuc = nuclear_repulsion(geometry);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const auto& A = shells[i];
      const auto& B = shells[j];
      const double r2 = dist2(A.center, B.center);
      double s = 0.0, t = 0.0, v = 0.0;
      for (std::size_t a = 0; a < A.exponents.size(); ++a) {
        for (std::size_t b = 0; b < B.exponents.size(); ++b) {
          const double alpha = A.exponents[a], beta = B.exponents[b];
          const double w = A.weights[a] * B.weights[b];
          const double p = alpha + beta;
          const double mu = alpha * beta / p;
          const double ov = prim_overlap(alpha, beta, r2);
          s += w * ov;
          t += w * mu * (3.0 - 2.0 * mu * r2) * ov;
          const Vec3 P = weighted_center(alpha, A.center, beta, B.center);
          const double pref = 2.0 * kPi / p * std::exp(-mu * r2);
          for (std::size_t c = 0; c < nuclei.size(); ++c) {
            v -= w * charges[c] * pref * boys_f0(p * dist2(P, nuclei[c]));
          }
        }
      }
      out.overlap(i, j) = out.overlap(j, i) = s;
      out.core(i, j) = out.core(j, i) = t + v;
    }
  }

  // Unique quartets p>=q, r>=s, pq>=rs.
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const auto &A = shells[p], &B = shells[q], &C = shells[r],
                     &D = shells[s];
          const double rab2 = dist2(A.center, B.center);
          const double rcd2 = dist2(C.center, D.center);
          double value = 0.0;
          for (std::size_t a = 0; a < A.exponents.size(); ++a)
            for (std::size_t b = 0; b < B.exponents.size(); ++b) {
              const double ea = A.exponents[a], eb = B.exponents[b];
              const double pab = ea + eb;
              const double kab = std::exp(-ea * eb / pab * rab2);
              const Vec3 P = weighted_center(ea, A.center, eb, B.center);
              const double wab = A.weights[a] * B.weights[b];
              for (std::size_t c = 0; c < C.exponents.size(); ++c)
                for (std::size_t d = 0; d < D.exponents.size(); ++d) {
                  const double ec = C.exponents[c], ed = D.exponents[d];
                  const double pcd = ec + ed;
                  const double kcd = std::exp(-ec * ed / pcd * rcd2);
                  const Vec3 Q = weighted_center(ec, C.center, ed, D.center);
                  const double rho = pab * pcd / (pab + pcd);
                  value += wab * C.weights[c] * D.weights[d] * 2.0 *
                           std::pow(kPi, 2.5) /
                           (pab * pcd * std::sqrt(pab + pcd)) * kab * kcd *
                           boys_f0(rho * dist2(P, Q));
                }
            }
          out.eri.set_symmetric(p, q, r, s, value);
        }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.overlap);
  if (es.eigenvalues().minCoeff() < kLinearDependenceTol) {
    throw IllConditionedBasisError(
        "overlap matrix is numerically singular (min eigenvalue " +
        std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  return out;
}

}  // namespace cvqe
