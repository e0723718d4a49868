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
#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cvqe/pauli.hpp"

namespace cvqe {

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, std::vector<cplx> amplitudes);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amp_.size(); }
  std::span<cplx> amplitudes() noexcept { return amp_; }
  std::span<const cplx> amplitudes() const noexcept { return amp_; }
  cplx operator[](FockIndex n) const { return amp_.at(n); }
  cplx& operator[](FockIndex n) { return amp_.at(n); }

  double norm_squared() const noexcept;
  void normalize();
  Eigen::Map<const Eigen::VectorXcd> as_eigen() const {
    return {amp_.data(), static_cast<Eigen::Index>(amp_.size())};
  }
  Eigen::Map<Eigen::VectorXcd> as_eigen() {
    return {amp_.data(), static_cast<Eigen::Index>(amp_.size())};
  }

 private:
  int n_ = 0;
  std::vector<cplx> amp_;
};

StateVector init_fock(FockIndex n, int n_qubits);

/// state <- exp(-i angle P) state = cos(angle) state - i sin(angle) P state.
void apply_pauli_rotation(StateVector& state, const PauliString& p, double angle);

struct ExponentialOptions {
  /// Full eigendecomposition up to this many qubits; Krylov above.
  int dense_max_qubits = 12;
  bool allow_iterative = true;
  double krylov_tolerance = 1e-12;
  int krylov_dimension = 30;
};

/// state <- exp(-i scale H) state.
void apply_exact_exponential(StateVector& state, const PauliSum& h, double scale,
                             const ExponentialOptions& opts = {});
/// Dense real-symmetric generator given directly.
void apply_exact_exponential(StateVector& state, const Eigen::MatrixXd& h,
                             double scale);
/// Iterative Lanczos action; exposed for testing the large-register path.
void apply_krylov_exponential(StateVector& state, const PauliSum& h, double scale,
                              double tolerance = 1e-12, int krylov_dimension = 30);

/// <psi|H|psi>.
double expectation(const StateVector& state, const PauliSum& h);

enum class DistributionLabel { kPTD, kPGD, kSGD, kPOD, kPGndD };
std::string to_string(DistributionLabel label);

struct Distribution {
  std::map<FockIndex, double> probs;
  DistributionLabel label = DistributionLabel::kPTD;
  int n_qubits = 0;

  double at(FockIndex n) const;
  double total() const;
};

Distribution probabilities(const StateVector& state,
                           DistributionLabel label = DistributionLabel::kPTD);

/// Philox4x32-10 counter-based generator.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0);

  static Block generate(Block counter, Key key);

  std::uint32_t next_u32();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  void refill();
  Key key_;
  Block counter_{};
  Block buffer_{};
  int used_ = 4;
};

struct SampleCounts {
  std::map<FockIndex, long long> counts;
  long long shots = 0;
  std::uint64_t seed = 0;
  int n_qubits = 0;

  long long at(FockIndex n) const;
};

/// Multinomial draw of `shots` outcomes.
SampleCounts sample(const Distribution& dist, long long shots, std::uint64_t seed);
SampleCounts sample(const StateVector& state, long long shots, std::uint64_t seed);

/// Empirical frequencies as an sGD distribution.
Distribution empirical_distribution(const SampleCounts& counts);

/// p <- (1 - lambda) p + lambda / 2^Q.
Distribution mix_noise(const Distribution& dist, double lambda);

}  // namespace cvqe
