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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cvqe/statevector.hpp"
#include "fixtures.hpp"

using namespace cvqe;
using doctest::Approx;

namespace {

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> a(std::size_t{1} << n);
  for (auto& v : a) v = cplx(g(rng), g(rng));
  StateVector s(n, a);
  s.normalize();
  return s;
}

PauliSum random_sum(int n, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PauliSum h(n);
  for (int t = 0; t < terms; ++t) {
    std::string s;
    for (int q = 0; q < n; ++q) s += "IXYZ"[letter(rng)];
    h.add(PauliString::from_letters(s), u(rng));
  }
  return h;
}

Eigen::MatrixXcd taylor_exp(const Eigen::MatrixXcd& a) {
  // exp(a) by scaling and squaring around a long Taylor series.
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm /= 2;
    ++squarings;
  }
  const Eigen::MatrixXcd b = a / std::pow(2.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double tv(const Distribution& p, const Distribution& q) {
  double d = 0.0;
  std::map<FockIndex, double> all = p.probs;
  for (const auto& [n, v] : q.probs) all.emplace(n, 0.0);
  for (const auto& [n, v] : all) d += std::abs(p.at(n) - q.at(n));
  return 0.5 * d;
}

}  // namespace

TEST_CASE("init_fock") {
  const StateVector zero = init_fock(0, 8);
  CHECK(zero.dim() == 256);
  CHECK(zero[0] == cplx(1.0));
  const StateVector hf = init_fock(7, 8);
  CHECK(hf[7] == cplx(1.0));
  CHECK(hf.norm_squared() == 1.0);
  CHECK_THROWS_AS(init_fock(256, 8), DomainError);
  CHECK_THROWS_AS(StateVector(2, std::vector<cplx>(3)), DomainError);
}

TEST_CASE("Pauli rotations") {
  StateVector s = init_fock(0, 1);
  apply_pauli_rotation(s, PauliString::from_letters("Z"), 0.3);
  CHECK(std::abs(s[0] - std::exp(cplx(0, -0.3))) < 1e-15);
  StateVector t = init_fock(0, 1);
  apply_pauli_rotation(t, PauliString::from_letters("X"), M_PI / 2);
  CHECK(std::abs(t[1] - cplx(0, -1)) < 1e-15);
  CHECK(std::norm(t[1]) == Approx(1.0));
  CHECK(std::abs(t[0]) < 1e-15);
}

TEST_CASE("Pauli rotation matches the dense exponential") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector s = random_state(3, rng);
    PauliSum one = random_sum(3, 1, rng);
    if (one.empty()) continue;
    const PauliString p = one.terms().begin()->first;
    const double angle = std::uniform_real_distribution<double>(-3, 3)(rng);
    StateVector r = s;
    apply_pauli_rotation(r, p, angle);
    PauliSum unit(3);
    unit.add(p, 1.0);
    const Eigen::VectorXcd want = taylor_exp(cplx(0, -angle) * to_dense(unit)) * s.as_eigen();
    CHECK((r.as_eigen() - want).norm() < 1e-12);
    CHECK(std::abs(r.norm_squared() - 1.0) < 1e-12);
    apply_pauli_rotation(r, p, -angle);
    CHECK((r.as_eigen() - s.as_eigen()).norm() < 1e-12);
  }
}

TEST_CASE("exact exponential") {
  std::mt19937_64 rng(3);
  const StateVector s = random_state(3, rng);
  StateVector same = s;
  apply_exact_exponential(same, PauliSum(3), 2.5);
  CHECK((same.as_eigen() - s.as_eigen()).norm() < 1e-15);

  PauliSum z(1);
  z.add(PauliString::from_letters("Z"), 1.0);
  StateVector one = init_fock(1, 1);
  apply_exact_exponential(one, z, M_PI);
  CHECK(std::abs(one[1] - std::exp(cplx(0, M_PI))) < 1e-12);

  for (int trial = 0; trial < 5; ++trial) {
    const PauliSum h = random_sum(2, 8, rng);
    const StateVector x = random_state(2, rng);
    StateVector y = x;
    apply_exact_exponential(y, h, 0.7);
    const Eigen::VectorXcd want = taylor_exp(cplx(0, -0.7) * to_dense(h)) * x.as_eigen();
    CHECK((y.as_eigen() - want).norm() < 1e-10);
  }
}

TEST_CASE("Krylov path agrees with the dense path") {
  std::mt19937_64 rng(8);
  const auto& sys = testing::well_system();
  const StateVector x = random_state(8, rng);
  for (double scale : {0.05, 1.0, 10.0}) {
    StateVector dense = x, krylov = x;
    apply_exact_exponential(dense, sys.hamiltonian, scale);
    apply_krylov_exponential(krylov, sys.hamiltonian, scale);
    CHECK((dense.as_eigen() - krylov.as_eigen()).norm() < 1e-10);
  }
  StateVector y = x;
  const ExponentialOptions opts{.dense_max_qubits = 4, .allow_iterative = false};
  CHECK_THROWS_AS(apply_exact_exponential(y, sys.hamiltonian, 1.0, opts), ResourceError);
  StateVector k = x, d = x;
  apply_exact_exponential(k, sys.hamiltonian, 2.0, ExponentialOptions{.dense_max_qubits = 4});
  apply_exact_exponential(d, sys.hamiltonian, 2.0);
  CHECK((k.as_eigen() - d.as_eigen()).norm() < 1e-10);
}

TEST_CASE("norm preservation and sector confinement") {
  const auto& sys = testing::well_system();
  StateVector s = init_fock(7, 8);
  for (int k = 0; k < 5; ++k) {
    apply_exact_exponential(s, interpolate(sys.h0, sys.hamiltonian, 0.2 * k), 0.9);
  }
  for (const auto& [p, c] : sys.hamiltonian.terms()) apply_pauli_rotation(s, p, 0.1 * c);
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
  s = init_fock(7, 8);
  for (int k = 0; k < 5; ++k)
    apply_exact_exponential(s, interpolate(sys.h0, sys.hamiltonian, 0.2 * k), 0.9);
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);
  double outside = 0.0;
  for (std::size_t n = 0; n < s.dim(); ++n)
    if (std::popcount(n & 0x55u) != 2 || std::popcount(n & 0xAAu) != 1) outside += std::norm(s[n]);
  CHECK(outside < 1e-10);
}

TEST_CASE("probabilities") {
  const Distribution p0 = probabilities(init_fock(0, 2));
  CHECK(p0.probs.size() == 1);
  CHECK(p0.at(0) == 1.0);
  StateVector bell(2);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const Distribution b = probabilities(bell, DistributionLabel::kPGD);
  CHECK(b.label == DistributionLabel::kPGD);
  CHECK(b.at(0) == Approx(0.5));
  CHECK(b.at(3) == Approx(0.5));
  CHECK(b.at(1) == 0.0);
  CHECK(b.total() == Approx(1.0));
  CHECK(to_string(DistributionLabel::kPGndD) == "pGndD");
  CHECK(to_string(DistributionLabel::kSGD) == "sGD");
}

TEST_CASE("Philox4x32-10 known answers") {
  using B = Philox4x32::Block;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::generate(B{0, 0, 0, 0}, K{0, 0}) ==
        B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                             K{0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                             K{0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("Philox streams are deterministic and uniform") {
  Philox4x32 a(42), b(42), c(43);
  for (int k = 0; k < 10; ++k) CHECK(a.next_u32() == b.next_u32());
  Philox4x32 d(42);
  int same = 0;
  for (int k = 0; k < 10; ++k) same += d.next_u32() == c.next_u32();
  CHECK(same < 2);
  Philox4x32 u(7);
  double sum = 0.0, lo = 1.0, hi = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const double x = u.uniform();
    sum += x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(std::abs(sum / n - 0.5) < 5 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("sampling") {
  const SampleCounts point = sample(init_fock(7, 8), 1000, 1);
  CHECK(point.counts.size() == 1);
  CHECK(point.at(7) == 1000);
  CHECK(point.shots == 1000);
  CHECK(point.seed == 1);

  StateVector plus(1);
  plus[0] = plus[1] = 1.0 / std::sqrt(2.0);
  const SampleCounts big = sample(plus, 1000000, 12345);
  CHECK(std::abs(big.at(0) - 500000) < 5 * 500);
  CHECK(big.at(0) + big.at(1) == 1000000);

  const SampleCounts again = sample(plus, 1000, 9), again2 = sample(plus, 1000, 9);
  CHECK(again.counts == again2.counts);
  CHECK_THROWS_AS(sample(plus, 0, 1), DomainError);
}

TEST_CASE("sparse guiding state misses improbable outcomes at 2^10 shots") {
  const auto& sys = testing::well_system();
  RunConfig c;
  apply_regime(c, "A");
  const PreparedStates st = prepare_states(sys, c);
  const Distribution pgd = probabilities(st.guiding, DistributionLabel::kPGD);
  FockIndex best = 0;
  for (const auto& [n, p] : pgd.probs)
    if (p > pgd.at(best)) best = n;
  CHECK(best == 7);
  const SampleCounts counts = sample(pgd, 1024, 1);
  int missing = 0;
  for (FockIndex n : testing::kTableSupport) missing += counts.at(n) == 0;
  CHECK(missing > 0);
}

TEST_CASE("empirical TV decays like shots^-1/2") {
  const Distribution p = ground_distribution(testing::well_system().fci);
  std::vector<double> scaled;
  for (long long shots : {1000LL, 10000LL, 100000LL, 1000000LL}) {
    std::vector<double> d;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      d.push_back(tv(empirical_distribution(sample(p, shots, seed)), p));
    std::nth_element(d.begin(), d.begin() + 10, d.end());
    scaled.push_back(d[10] * std::sqrt(static_cast<double>(shots)));
  }
  for (double s : scaled) {
    CHECK(s / scaled.front() < 3.0);
    CHECK(s / scaled.front() > 1.0 / 3.0);
  }
}

TEST_CASE("noise mixing") {
  const Distribution p = probabilities(init_fock(7, 8));
  const Distribution same = mix_noise(p, 0.0);
  CHECK(same.probs == p.probs);
  const Distribution uni = mix_noise(p, 1.0);
  CHECK(uni.probs.size() == 256);
  for (const auto& [n, v] : uni.probs) CHECK(v == Approx(1.0 / 256));
  const Distribution half = mix_noise(p, 0.5);
  CHECK(half.at(7) == Approx(0.5 + 1.0 / 512).epsilon(1e-15));
  CHECK(half.at(8) == Approx(1.0 / 512).epsilon(1e-15));
  CHECK(half.total() == Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(mix_noise(p, 1.5), DomainError);
  CHECK_THROWS_AS(mix_noise(p, -0.1), DomainError);
}
