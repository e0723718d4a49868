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
#include <random>

#include "cvqe/pipeline.hpp"

namespace cvqe::testing {

// Frozen reference values for the well geometry.
inline constexpr double kWellHfSto6g = -1.734113075579;
inline constexpr double kWellFciSto6g = -1.759164454794;
inline constexpr double kWellFciSto3g = -1.747616053930;
inline constexpr FockIndex kTableSupport[12] = {7, 13, 19, 22, 25, 28, 37, 49, 52, 193, 196, 208};

inline const PreparedSystem& well_system() {
  static const PreparedSystem s = [] {
    RunConfig c;
    c.geometry = "well";
    return prepare_system(c);
  }();
  return s;
}

inline const PreparedSystem& system_for(const std::string& label) {
  static std::map<std::string, PreparedSystem> cache;
  auto it = cache.find(label);
  if (it == cache.end()) {
    RunConfig c;
    c.geometry = label;
    it = cache.emplace(label, prepare_system(c)).first;
  }
  return it->second;
}

/// Random real MO integrals with the full 8-fold symmetry.
inline MOIntegrals random_mo(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  MOIntegrals mo;
  mo.n_mo = n;
  mo.h_mo = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) mo.h_mo(p, q) = mo.h_mo(q, p) = u(rng) - (p == q ? 1.0 : 0.0);
  mo.g_mo = Tensor4(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) mo.g_mo.set_symmetric(p, q, r, s, 0.2 * u(rng));
  mo.e_nuc = 0.3 + u(rng);
  return mo;
}

inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

}  // namespace cvqe::testing
