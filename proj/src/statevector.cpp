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

#include "cvqe/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace cvqe {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_state(const StateVector& s, int n_qubits) {
  if (s.n_qubits() != n_qubits) {
    throw DomainError("register size mismatch (" + std::to_string(s.n_qubits()) +
                      " vs " + std::to_string(n_qubits) + ")");
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) throw ResourceError("register too large");
  amp_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amplitudes)
    : n_(n_qubits), amp_(std::move(amplitudes)) {
  if (n_qubits < 0 || n_qubits > 30) throw ResourceError("register too large");
  if (amp_.size() != std::size_t{1} << n_qubits) {
    throw DomainError("amplitude count does not match 2^Q");
  }
}

double StateVector::norm_squared() const noexcept {
  double acc = 0.0;
  for (const cplx& a : amp_) acc += std::norm(a);
  return acc;
}

void StateVector::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  for (cplx& a : amp_) a /= n;
}

StateVector init_fock(FockIndex n, int n_qubits) {
  StateVector s(n_qubits);
  if (n >= s.dim()) {
    throw DomainError("Fock index " + std::to_string(n) + " outside 2^" +
                      std::to_string(n_qubits));
  }
  s[n] = 1.0;
  return s;
}

void apply_pauli_rotation(StateVector& state, const PauliString& p, double angle) {
  check_state(state, p.n_qubits());
  auto amp = state.amplitudes();
  const double c = std::cos(angle), s = std::sin(angle);
  const std::uint64_t x = p.flip_mask();
  if (x == 0) {
    for (std::size_t n = 0; n < amp.size(); ++n) amp[n] *= c - kI * s * p.phase(n);
    return;
  }
  const std::uint64_t pivot = x & (~x + 1);
  for (std::size_t n = 0; n < amp.size(); ++n) {
    if (n & pivot) continue;
    const std::size_t m = n ^ x;
    const cplx an = amp[n], am = amp[m];
    // P|m> = phase(m)|n>, P|n> = phase(n)|m>.
    amp[n] = c * an - kI * s * p.phase(m) * am;
    amp[m] = c * am - kI * s * p.phase(n) * an;
  }
}

void apply_exact_exponential(StateVector& state, const Eigen::MatrixXd& h,
                             double scale) {
  if (h.rows() != static_cast<Eigen::Index>(state.dim()) || h.cols() != h.rows()) {
    throw DomainError("generator shape does not match the register");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::VectorXcd coeffs = v.transpose().cast<cplx>() * state.as_eigen();
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    coeffs(k) *= std::exp(-kI * scale * es.eigenvalues()(k));
  state.as_eigen() = v.cast<cplx>() * coeffs;
}

void apply_krylov_exponential(StateVector& state, const PauliSum& h, double scale,
                              double tolerance, int krylov_dimension) {
  check_state(state, h.n_qubits());
  const std::size_t dim = state.dim();
  const int m_max = std::max(2, krylov_dimension);
  double remaining = scale;
  double dt = scale;
  Eigen::VectorXcd v = state.as_eigen();
  std::vector<Eigen::VectorXcd> basis;
  std::vector<cplx> w(dim);
  while (std::abs(remaining) > 0.0) {
    const double beta0 = v.norm();
    if (beta0 == 0.0) break;
    basis.assign(1, v / beta0);
    std::vector<double> alpha, beta;
    bool breakdown = false;
    for (int j = 0; j < m_max; ++j) {
      h.apply(std::span<const cplx>(basis[j].data(), dim), w);
      Eigen::Map<Eigen::VectorXcd> wv(w.data(), static_cast<Eigen::Index>(dim));
      const double a = basis[j].dot(wv).real();
      alpha.push_back(a);
      Eigen::VectorXcd r = wv - a * basis[j];
      if (j > 0) r -= beta.back() * basis[j - 1];
      for (const auto& b : basis) r -= b.dot(r) * b;  // full reorthogonalization
      const double bnorm = r.norm();
      beta.push_back(bnorm);
      if (bnorm < 1e-14 * std::max(1.0, std::abs(a))) {
        breakdown = true;
        break;
      }
      if (j + 1 < m_max) basis.push_back(r / bnorm);
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      t(j, j) = alpha[j];
      if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    while (true) {
      Eigen::VectorXcd y(m);
      const Eigen::VectorXd first = es.eigenvectors().row(0).transpose();
      Eigen::VectorXcd phases(m);
      for (int k = 0; k < m; ++k) phases(k) = std::exp(-kI * dt * es.eigenvalues()(k)) * first(k);
      y = es.eigenvectors().cast<cplx>() * phases;
      const double err = breakdown ? 0.0 : beta0 * beta.back() * std::abs(y(m - 1));
      if (err <= tolerance * std::abs(dt / scale) || std::abs(dt) < 1e-14 * std::abs(scale)) {
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
        for (int k = 0; k < m; ++k) next += (beta0 * y(k)) * basis[k];
        v = next;
        remaining -= dt;
        if (std::abs(remaining) <= 1e-15 * std::abs(scale)) remaining = 0.0;
        dt = std::copysign(std::min(2.0 * std::abs(dt), std::abs(remaining)), remaining);
        break;
      }
      dt *= 0.5;
    }
  }
  state.as_eigen() = v;
}

void apply_exact_exponential(StateVector& state, const PauliSum& h, double scale,
                             const ExponentialOptions& opts) {
  check_state(state, h.n_qubits());
  if (h.empty() || scale == 0.0) return;
  if (h.n_qubits() <= opts.dense_max_qubits) {
    if (h.is_real_matrix()) {
      apply_exact_exponential(state, to_dense_real(h, {.max_qubits = opts.dense_max_qubits}),
                              scale);
      return;
    }
    const Eigen::MatrixXcd m = to_dense(h, {.max_qubits = opts.dense_max_qubits});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * state.as_eigen();
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
      coeffs(k) *= std::exp(-kI * scale * es.eigenvalues()(k));
    state.as_eigen() = es.eigenvectors() * coeffs;
    return;
  }
  if (!opts.allow_iterative) {
    throw ResourceError("exact exponential of " + std::to_string(h.n_qubits()) +
                        " qubits exceeds the dense cap and the iterative path is off");
  }
  apply_krylov_exponential(state, h, scale, opts.krylov_tolerance, opts.krylov_dimension);
}

double expectation(const StateVector& state, const PauliSum& h) {
  check_state(state, h.n_qubits());
  std::vector<cplx> y(state.dim());
  h.apply(state.amplitudes(), y);
  cplx acc{0.0, 0.0};
  for (std::size_t n = 0; n < y.size(); ++n) acc += std::conj(state[n]) * y[n];
  return acc.real();
}

std::string to_string(DistributionLabel label) {
  switch (label) {
    case DistributionLabel::kPTD: return "pTD";
    case DistributionLabel::kPGD: return "pGD";
    case DistributionLabel::kSGD: return "sGD";
    case DistributionLabel::kPOD: return "pOD";
    case DistributionLabel::kPGndD: return "pGndD";
  }
  return "?";
}

double Distribution::at(FockIndex n) const {
  auto it = probs.find(n);
  return it == probs.end() ? 0.0 : it->second;
}

double Distribution::total() const {
  double acc = 0.0;
  for (const auto& [n, p] : probs) acc += p;
  return acc;
}

Distribution probabilities(const StateVector& state, DistributionLabel label) {
  Distribution d;
  d.label = label;
  d.n_qubits = state.n_qubits();
  for (std::size_t n = 0; n < state.dim(); ++n) {
    const double p = std::norm(state[n]);
    if (p > 0.0) d.probs.emplace(n, p);
  }
  return d;
}

Philox4x32::Philox4x32(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {
  counter_[2] = static_cast<std::uint32_t>(stream);
  counter_[3] = static_cast<std::uint32_t>(stream >> 32);
}

Philox4x32::Block Philox4x32::generate(Block ctr, Key key) {
  constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

void Philox4x32::refill() {
  buffer_ = generate(counter_, key_);
  used_ = 0;
  if (++counter_[0] == 0) ++counter_[1];
}

std::uint32_t Philox4x32::next_u32() {
  if (used_ == 4) refill();
  return buffer_[used_++];
}

double Philox4x32::uniform() {
  const std::uint64_t hi = next_u32() >> 5;  // 27 bits
  const std::uint64_t lo = next_u32() >> 6;  // 26 bits
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

long long SampleCounts::at(FockIndex n) const {
  auto it = counts.find(n);
  return it == counts.end() ? 0 : it->second;
}

SampleCounts sample(const Distribution& dist, long long shots, std::uint64_t seed) {
  if (shots < 1) throw DomainError("shots must be at least 1");
  std::vector<FockIndex> keys;
  std::vector<double> cdf;
  double acc = 0.0;
  for (const auto& [n, p] : dist.probs) {
    if (p <= 0.0) continue;
    acc += p;
    keys.push_back(n);
    cdf.push_back(acc);
  }
  if (keys.empty()) throw DomainError("cannot sample an empty distribution");
  SampleCounts out;
  out.shots = shots;
  out.seed = seed;
  out.n_qubits = dist.n_qubits;
  std::vector<long long> hist(keys.size(), 0);
  Philox4x32 rng(seed);
  for (long long s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++hist[static_cast<std::size_t>(it - cdf.begin())];
  }
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (hist[k] > 0) out.counts.emplace(keys[k], hist[k]);
  return out;
}

SampleCounts sample(const StateVector& state, long long shots, std::uint64_t seed) {
  return sample(probabilities(state), shots, seed);
}

Distribution empirical_distribution(const SampleCounts& counts) {
  Distribution d;
  d.label = DistributionLabel::kSGD;
  d.n_qubits = counts.n_qubits;
  for (const auto& [n, c] : counts.counts)
    d.probs.emplace(n, static_cast<double>(c) / static_cast<double>(counts.shots));
  return d;
}

Distribution mix_noise(const Distribution& dist, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("noise lambda must lie in [0, 1]");
  }
  if (lambda == 0.0) return dist;
  if (dist.n_qubits > 30) throw ResourceError("register too large for noise mixing");
  Distribution out;
  out.label = dist.label;
  out.n_qubits = dist.n_qubits;
  const std::size_t dim = std::size_t{1} << dist.n_qubits;
  const double floor = lambda / static_cast<double>(dim);
  for (std::size_t n = 0; n < dim; ++n) out.probs.emplace(n, (1.0 - lambda) * dist.at(n) + floor);
  return out;
}

}  // namespace cvqe
