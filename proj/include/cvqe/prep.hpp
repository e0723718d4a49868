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

#include <string>
#include <utility>
#include <vector>

#include "cvqe/pauli.hpp"
#include "cvqe/statevector.hpp"

namespace cvqe {

struct ScheduleStep {
  double eta = 1.0;
  double scale = 0.0;  // 1/Hartree
};

/// Steps in application order: eta = 1/K, ..., (K-1)/K at scale 1/hbar_omega,
/// then eta = 1 at scale 1/(2 hbar_omega).
struct PrepSchedule {
  int K = 1;
  double hbar_omega = 1.0;
  std::vector<ScheduleStep> steps;
};

/// with_h0_half_step prepends the eta = 0 half-step that only contributes a
/// global phase on the reference determinant.
PrepSchedule build_schedule(int K, double hbar_omega, bool with_h0_half_step = false);

enum class TermOrder { kMagnitudeDescending, kCanonical, kMagnitudeAscending };
TermOrder parse_term_order(std::string_view name);
std::string to_string(TermOrder order);

struct TrotterConfig {
  double prune_threshold_ha = 0.0;
  bool drop_diagonal = false;
  TermOrder term_order = TermOrder::kMagnitudeDescending;
};

/// Rotations executed for one step, identity removed, in execution order.
std::vector<std::pair<PauliString, double>> trotter_terms(const PauliSum& h,
                                                          const TrotterConfig& cfg);

/// Exact per-step exponentials.
StateVector prepare_trapezoidal(const PauliSum& h0, const PauliSum& h,
                                const PrepSchedule& schedule, FockIndex phi0,
                                const ExponentialOptions& opts = {});

/// One first-order Trotter slice per step.
StateVector prepare_guiding(const PauliSum& h0, const PauliSum& h,
                            const PrepSchedule& schedule, FockIndex phi0,
                            const TrotterConfig& cfg = {});

enum class ConditionStatus { kSatisfied, kMarginal, kViolated };
std::string to_string(ConditionStatus status);

/// ratio < margin: satisfied; margin <= ratio <= 1: marginal; ratio > 1: violated.
struct ConditionReport {
  double left_ratio = 0.0;   // (hbar_omega / K) / hbar_omega0
  double right_ratio = 0.0;  // hbar_omega0 / hbar_omega
  double margin = 0.5;
  ConditionStatus left = ConditionStatus::kSatisfied;
  ConditionStatus right = ConditionStatus::kSatisfied;
  bool left_satisfied() const noexcept { return left == ConditionStatus::kSatisfied; }
  bool right_satisfied() const noexcept { return right == ConditionStatus::kSatisfied; }
};

ConditionReport check_conditions(int K, double hbar_omega, double omega0,
                                 double margin = 0.5);

struct CircuitStats {
  std::vector<long long> term_count_per_step;
  long long total_rotations = 0;
  long long cnot_estimate = 0;  // sum of 2 (w - 1) per rotation
  long long depth_proxy = 0;    // sum of 2 (w - 1) + 1 per rotation
};

CircuitStats circuit_stats(const PauliSum& h0, const PauliSum& h,
                           const PrepSchedule& schedule, const TrotterConfig& cfg);
/// Every step executes the rotations of `h` itself.
CircuitStats circuit_stats(const PauliSum& h, const PrepSchedule& schedule,
                           const TrotterConfig& cfg);

}  // namespace cvqe
