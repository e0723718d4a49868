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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cvqe/geometry.hpp"

namespace cvqe {

/// Contracted hydrogen 1s basis sets with published exponents/coefficients.
enum class BasisSet { kSto3g, kSto6g };

BasisSet parse_basis_set(std::string_view name);
std::string to_string(BasisSet basis);

struct Primitive {
  double exponent;     // Bohr^-2
  double coefficient;  // contraction coefficient for normalized primitives
};

/// Contraction for the hydrogen 1s shell (zeta = 1.24 already folded in).
std::span<const Primitive> hydrogen_1s(BasisSet basis);

/// Dense rank-4 tensor for (pq|rs) with n^4 storage; n is small here.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const noexcept { return n_; }
  double& operator()(int p, int q, int r, int s) noexcept {
    return data_[index(p, q, r, s)];
  }
  double operator()(int p, int q, int r, int s) const noexcept {
    return data_[index(p, q, r, s)];
  }
  /// Writes value into all eight positions related by real-orbital symmetry.
  void set_symmetric(int p, int q, int r, int s, double value) noexcept;

  /// Largest deviation from 8-fold permutational symmetry.
  double max_symmetry_violation() const;

  std::span<const double> raw() const noexcept { return data_; }

 private:
  std::size_t index(int p, int q, int r, int s) const noexcept {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }
  int n_ = 0;
  std::vector<double> data_;
};

/// One- and two-electron integrals over contracted s functions, Hartree units.
struct IntegralSet {
  int n_ao = 0;
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd core;  // kinetic + nuclear attraction
  Tensor4 eri;           // (pq|rs), chemists' notation
  double e_nuc = 0.0;
};

/// Boys function F_0(t) = integral_0^1 exp(-t u^2) du.
double boys_f0(double t);

IntegralSet compute_integrals(const Geometry& geometry,
                              BasisSet basis = BasisSet::kSto6g);

}  // namespace cvqe
