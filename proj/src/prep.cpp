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

#include "cvqe/prep.hpp"

#include <algorithm>
#include <cmath>

namespace cvqe {

PrepSchedule build_schedule(int K, double hbar_omega, bool with_h0_half_step) {
  if (K < 1) throw DomainError("K must be at least 1");
  if (!(hbar_omega > 0.0) || !std::isfinite(hbar_omega)) {
    throw DomainError("hbar_omega must be positive and finite");
  }
  PrepSchedule s{K, hbar_omega, {}};
  if (with_h0_half_step) s.steps.push_back({0.0, 0.5 / hbar_omega});
  for (int k = K - 1; k >= 1; --k) {
    s.steps.push_back({1.0 - static_cast<double>(k) / K, 1.0 / hbar_omega});
  }
  s.steps.push_back({1.0, 0.5 / hbar_omega});
  return s;
}

TermOrder parse_term_order(std::string_view name) {
  if (name == "magnitude" || name == "magnitude_desc") return TermOrder::kMagnitudeDescending;
  if (name == "canonical") return TermOrder::kCanonical;
  if (name == "magnitude_asc") return TermOrder::kMagnitudeAscending;
  throw DomainError("unknown term order '" + std::string(name) + "'");
}

std::string to_string(TermOrder order) {
  switch (order) {
    case TermOrder::kMagnitudeDescending: return "magnitude_desc";
    case TermOrder::kCanonical: return "canonical";
    case TermOrder::kMagnitudeAscending: return "magnitude_asc";
  }
  return "?";
}

std::vector<std::pair<PauliString, double>> trotter_terms(const PauliSum& h,
                                                          const TrotterConfig& cfg) {
  const PauliSum kept = prune(h, cfg.prune_threshold_ha, cfg.drop_diagonal);
  std::vector<std::pair<PauliString, double>> terms;
  for (const auto& [p, c] : kept.terms())
    if (!p.is_identity()) terms.emplace_back(p, c);
  // Map order is canonical already; stable sort keeps it for ties.
  if (cfg.term_order == TermOrder::kMagnitudeDescending) {
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      return std::abs(a.second) > std::abs(b.second);
    });
  } else if (cfg.term_order == TermOrder::kMagnitudeAscending) {
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      return std::abs(a.second) < std::abs(b.second);
    });
  }
  return terms;
}

namespace {

std::vector<Eigen::Index> reachable_block(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                          FockIndex start) {
  const Eigen::Index dim = a.rows();
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  std::vector<Eigen::Index> stack{static_cast<Eigen::Index>(start)}, out;
  seen[start] = true;
  while (!stack.empty()) {
    const Eigen::Index j = stack.back();
    stack.pop_back();
    out.push_back(j);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (seen[static_cast<std::size_t>(i)] || (a(i, j) == 0.0 && b(i, j) == 0.0)) continue;
      seen[static_cast<std::size_t>(i)] = true;
      stack.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

StateVector prepare_trapezoidal(const PauliSum& h0, const PauliSum& h,
                                const PrepSchedule& schedule, FockIndex phi0,
                                const ExponentialOptions& opts) {
  if (h0.n_qubits() != h.n_qubits()) throw DomainError("Hamiltonian size mismatch");
  StateVector state = init_fock(phi0, h.n_qubits());
  const bool dense = h.n_qubits() <= opts.dense_max_qubits && h.is_real_matrix() &&
                     h0.is_real_matrix();
  if (dense) {
    const DenseOptions d{.max_qubits = opts.dense_max_qubits};
    const Eigen::MatrixXd full0 = to_dense_real(h0, d);
    const Eigen::MatrixXd full1 = to_dense_real(h, d);
    // Every generator along the path leaves the component of phi0 in the joint
    // sparsity graph invariant, so the evolution is exact restricted to it.
    const auto block = reachable_block(full0, full1, phi0);
    const auto nb = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd m0(nb, nb), m1(nb, nb);
    for (Eigen::Index i = 0; i < nb; ++i)
      for (Eigen::Index j = 0; j < nb; ++j) {
        m0(i, j) = full0(block[i], block[j]);
        m1(i, j) = full1(block[i], block[j]);
      }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(nb);
    for (Eigen::Index i = 0; i < nb; ++i)
      if (static_cast<FockIndex>(block[i]) == phi0) v(i) = 1.0;
    for (const auto& step : schedule.steps) {
      if (!(step.eta >= 0.0 && step.eta <= 1.0)) throw DomainError("eta outside [0, 1]");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((1.0 - step.eta) * m0 + step.eta * m1);
      Eigen::VectorXcd c = es.eigenvectors().transpose().cast<cplx>() * v;
      for (Eigen::Index k = 0; k < nb; ++k)
        c(k) *= std::exp(cplx(0.0, -step.scale * es.eigenvalues()(k)));
      v = es.eigenvectors().cast<cplx>() * c;
    }
    for (Eigen::Index i = 0; i < nb; ++i) state[static_cast<FockIndex>(block[i])] = v(i);
    return state;
  }
  for (const auto& step : schedule.steps) {
    apply_exact_exponential(state, interpolate(h0, h, step.eta), step.scale, opts);
  }
  return state;
}

StateVector prepare_guiding(const PauliSum& h0, const PauliSum& h,
                            const PrepSchedule& schedule, FockIndex phi0,
                            const TrotterConfig& cfg) {
  if (h0.n_qubits() != h.n_qubits()) throw DomainError("Hamiltonian size mismatch");
  StateVector state = init_fock(phi0, h.n_qubits());
  for (const auto& step : schedule.steps) {
    for (const auto& [p, c] : trotter_terms(interpolate(h0, h, step.eta), cfg)) {
      apply_pauli_rotation(state, p, c * step.scale);
    }
  }
  return state;
}

std::string to_string(ConditionStatus status) {
  switch (status) {
    case ConditionStatus::kSatisfied: return "satisfied";
    case ConditionStatus::kMarginal: return "marginal";
    case ConditionStatus::kViolated: return "violated";
  }
  return "?";
}

ConditionReport check_conditions(int K, double hbar_omega, double omega0, double margin) {
  if (K < 1 || !(hbar_omega > 0.0) || !(omega0 > 0.0) || !(margin > 0.0)) {
    throw DomainError("condition check needs positive inputs");
  }
  auto classify = [margin](double r) {
    if (r < margin) return ConditionStatus::kSatisfied;
    if (r <= 1.0) return ConditionStatus::kMarginal;
    return ConditionStatus::kViolated;
  };
  ConditionReport r;
  r.margin = margin;
  r.left_ratio = (hbar_omega / K) / omega0;
  r.right_ratio = omega0 / hbar_omega;
  r.left = classify(r.left_ratio);
  r.right = classify(r.right_ratio);
  return r;
}

namespace {

void accumulate(CircuitStats& s, const std::vector<std::pair<PauliString, double>>& terms) {
  s.term_count_per_step.push_back(static_cast<long long>(terms.size()));
  for (const auto& [p, c] : terms) {
    const long long w = p.weight();
    ++s.total_rotations;
    if (w >= 2) s.cnot_estimate += 2 * (w - 1);
    s.depth_proxy += 2 * std::max(w - 1, 0LL) + 1;
  }
}

}  // namespace

CircuitStats circuit_stats(const PauliSum& h0, const PauliSum& h,
                           const PrepSchedule& schedule, const TrotterConfig& cfg) {
  CircuitStats s;
  if (h.empty() && h0.empty()) return s;
  for (const auto& step : schedule.steps)
    accumulate(s, trotter_terms(interpolate(h0, h, step.eta), cfg));
  return s;
}

CircuitStats circuit_stats(const PauliSum& h, const PrepSchedule& schedule,
                           const TrotterConfig& cfg) {
  CircuitStats s;
  if (h.empty()) return s;
  const auto terms = trotter_terms(h, cfg);
  for (std::size_t k = 0; k < schedule.steps.size(); ++k) accumulate(s, terms);
  return s;
}

}  // namespace cvqe
