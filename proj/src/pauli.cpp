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

#include "cvqe/pauli.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cvqe {

namespace {

constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::uint64_t width_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

int letter_code(std::uint64_t x, std::uint64_t z, int q) {
  const int xb = static_cast<int>(x >> q & 1), zb = static_cast<int>(z >> q & 1);
  // I=0, X=1, Y=2, Z=3
  return xb ? (zb ? 2 : 1) : (zb ? 3 : 0);
}

void require_same_width(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DomainError("Pauli sums act on different register sizes (" +
                      std::to_string(a.n_qubits()) + " vs " +
                      std::to_string(b.n_qubits()) + ")");
  }
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x, std::uint64_t z)
    : n_(n_qubits), x_(x), z_(z) {
  check_width();
  if ((x | z) & ~width_mask(n_)) throw DomainError("Pauli mask exceeds register");
}

void PauliString::check_width() const {
  if (n_ < 0 || n_ > 64) throw DomainError("Pauli strings support 0..64 qubits");
}

PauliString PauliString::from_letters(std::string_view text) {
  PauliString p(static_cast<int>(text.size()));
  for (int q = 0; q < p.n_; ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': p.x_ |= std::uint64_t{1} << q; break;
      case 'Y': p.x_ |= std::uint64_t{1} << q; p.z_ |= std::uint64_t{1} << q; break;
      case 'Z': p.z_ |= std::uint64_t{1} << q; break;
      default:
        throw DomainError(std::string("invalid Pauli letter '") + text[q] + "'");
    }
  }
  return p;
}

PauliString PauliString::single(int n_qubits, int qubit, char letter) {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  if (qubit < 0 || qubit >= n_qubits) throw DomainError("qubit index out of range");
  s[static_cast<std::size_t>(qubit)] = letter;
  return from_letters(s);
}

char PauliString::letter(int q) const noexcept {
  return "IXYZ"[letter_code(x_, z_, q)];
}

std::string PauliString::letters() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }
int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

cplx PauliString::phase(FockIndex n) const noexcept {
  // P = i^{#Y} X^x Z^z, and Z^z|n> = (-1)^{|z & n|} |n>.
  const int sign = std::popcount(z_ & n) & 1;
  const cplx base = kIPowers[y_count() & 3];
  return sign ? -base : base;
}

std::strong_ordering PauliString::operator<=>(const PauliString& o) const noexcept {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  const std::uint64_t diff = (x_ ^ o.x_) | (z_ ^ o.z_);
  if (diff == 0) return std::strong_ordering::equal;
  const int q = std::countr_zero(diff);
  return letter_code(x_, z_, q) <=> letter_code(o.x_, o.z_, q);
}

std::pair<cplx, PauliString> multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) throw DomainError("Pauli width mismatch");
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  // (X^x1 Z^z1)(X^x2 Z^z2) = (-1)^{|z1 & x2|} X^x Z^z; fold the i^{#Y} factors.
  int k = a.y_count() + b.y_count() - std::popcount(x & z) +
          2 * (std::popcount(a.z_mask() & b.x_mask()) & 1);
  k = ((k % 4) + 4) % 4;
  return {kIPowers[k], PauliString(a.n_qubits(), x, z)};
}

void PauliSum::add(const PauliString& p, double c) {
  if (p.n_qubits() != n_) throw DomainError("Pauli string width mismatch");
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kCoefficientFloor) terms_.erase(it);
}

double PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

double PauliSum::identity_coefficient() const {
  return coefficient(PauliString(n_));
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  require_same_width(*this, other);
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSum& PauliSum::operator*=(double s) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < kCoefficientFloor) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

void PauliSum::apply(std::span<const cplx> x, std::span<cplx> y) const {
  const std::size_t dim = std::size_t{1} << n_;
  if (x.size() != dim || y.size() != dim) throw DomainError("state size mismatch");
  std::fill(y.begin(), y.end(), cplx{0.0, 0.0});
  for (const auto& [p, c] : terms_) {
    const std::uint64_t flip = p.flip_mask();
    const std::uint64_t z = p.z_mask();
    const cplx base = c * kIPowers[p.y_count() & 3];
    for (std::size_t n = 0; n < dim; ++n) {
      const cplx v = (std::popcount(z & n) & 1) ? -base : base;
      y[n ^ flip] += v * x[n];
    }
  }
}

bool PauliSum::is_real_matrix() const noexcept {
  for (const auto& [p, c] : terms_)
    if (p.y_count() % 2 != 0) return false;
  return true;
}

std::string PauliSum::to_text() const {
  std::ostringstream out;
  char buf[64];
  for (const auto& [p, c] : terms_) {
    std::snprintf(buf, sizeof buf, "%+.17e ", c);
    out << buf << p.letters() << '\n';
  }
  return out.str();
}

PauliSum PauliSum::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  PauliSum out;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string coeff, letters;
    if (!(ls >> coeff)) continue;
    if (!(ls >> letters)) throw ParseError("missing Pauli letters", lineno);
    double c = 0.0;
    try {
      c = std::stod(coeff);
    } catch (const std::exception&) {
      throw ParseError("bad coefficient '" + coeff + "'", lineno);
    }
    const auto p = PauliString::from_letters(letters);
    if (n < 0) {
      n = p.n_qubits();
      out = PauliSum(n);
    } else if (p.n_qubits() != n) {
      throw ParseError("inconsistent Pauli string length", lineno);
    }
    out.add(p, c);
  }
  return out;
}

PauliSum interpolate(const PauliSum& h0, const PauliSum& h, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("interpolation parameter must lie in [0, 1]");
  }
  require_same_width(h0, h);
  if (eta == 0.0) return h0;
  if (eta == 1.0) return h;
  PauliSum out(h.n_qubits());
  for (const auto& [p, c] : h0.terms()) out.add(p, (1.0 - eta) * c);
  for (const auto& [p, c] : h.terms()) out.add(p, eta * c);
  return out;
}

PauliSum prune(const PauliSum& h, double threshold, bool drop_diagonal) {
  if (threshold < 0.0) throw DomainError("prune threshold must be nonnegative");
  PauliSum out(h.n_qubits());
  for (const auto& [p, c] : h.terms()) {
    if (std::abs(c) < threshold) continue;
    if (drop_diagonal && p.is_diagonal()) continue;
    out.add(p, c);
  }
  return out;
}

Eigen::MatrixXcd to_dense(const PauliSum& h, const DenseOptions& opts) {
  if (h.n_qubits() > opts.max_qubits) {
    throw ResourceError("dense matrix for " + std::to_string(h.n_qubits()) +
                        " qubits exceeds the cap of " +
                        std::to_string(opts.max_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : h.terms()) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      const auto col = static_cast<FockIndex>(n);
      m(static_cast<Eigen::Index>(col ^ p.flip_mask()), n) += c * p.phase(col);
    }
  }
  return m;
}

Eigen::MatrixXd to_dense_real(const PauliSum& h, const DenseOptions& opts) {
  if (!h.is_real_matrix()) throw DomainError("Pauli sum has a complex matrix");
  if (h.n_qubits() > opts.max_qubits) {
    throw ResourceError("dense matrix for " + std::to_string(h.n_qubits()) +
                        " qubits exceeds the cap of " +
                        std::to_string(opts.max_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [p, c] : h.terms()) {
    for (Eigen::Index n = 0; n < dim; ++n) {
      const auto col = static_cast<FockIndex>(n);
      m(static_cast<Eigen::Index>(col ^ p.flip_mask()), n) += c * p.phase(col).real();
    }
  }
  return m;
}

PauliSum diagonal_number_operator(std::span<const double> eps, double shift) {
  const int n = static_cast<int>(eps.size());
  PauliSum out(n);
  double constant = shift;
  for (int q = 0; q < n; ++q) {
    constant += 0.5 * eps[q];
    out.add(PauliString::single(n, q, 'Z'), -0.5 * eps[q]);
  }
  out.add(PauliString(n), constant);
  return out;
}

}  // namespace cvqe
