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

#include "cvqe/fcidump.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cvqe/common.hpp"

namespace cvqe {

namespace {

constexpr double kConflictTol = 1e-10;

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Extracts integer lists for NORB, NELEC, MS2, ISYM, ORBSYM from the
/// namelist block (which may span several lines).
FcidumpHeader parse_header(const std::string& block) {
  FcidumpHeader h;
  std::string text = upper(block);
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '&' || c == '/') c = ' ';
  }
  // Tokens look like KEY=v1 v2 ... possibly with spaces around '='.
  std::string normalized;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '=') {
      while (!normalized.empty() && normalized.back() == ' ') normalized.pop_back();
      normalized += " = ";
    } else {
      normalized += text[i];
    }
  }
  std::istringstream in(normalized);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  std::map<std::string, std::vector<int>> values;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i + 1] != "=") continue;
    auto& v = values[toks[i]];
    for (std::size_t j = i + 2; j < toks.size(); ++j) {
      if (j + 1 < toks.size() && toks[j + 1] == "=") break;
      int x = 0;
      auto [p, ec] = std::from_chars(toks[j].data(), toks[j].data() + toks[j].size(), x);
      if (ec != std::errc{} || p != toks[j].data() + toks[j].size()) break;
      v.push_back(x);
    }
  }
  auto scalar = [&](const char* key, bool required, int fallback) {
    auto it = values.find(key);
    if (it == values.end() || it->second.empty()) {
      if (required) throw FormatError(std::string("FCIDUMP header lacks ") + key);
      return fallback;
    }
    return it->second.front();
  };
  h.norb = scalar("NORB", true, 0);
  h.nelec = scalar("NELEC", true, 0);
  h.ms2 = scalar("MS2", false, 0);
  h.isym = scalar("ISYM", false, 1);
  if (auto it = values.find("ORBSYM"); it != values.end()) h.orbsym = it->second;
  if (h.norb <= 0) throw FormatError("FCIDUMP NORB must be positive");
  if (h.nelec < 0 || h.nelec > 2 * h.norb) {
    throw FormatError("FCIDUMP NELEC=" + std::to_string(h.nelec) +
                      " inconsistent with NORB=" + std::to_string(h.norb));
  }
  if (std::abs(h.ms2) > h.nelec || (h.nelec + h.ms2) % 2 != 0) {
    throw FormatError("FCIDUMP MS2 inconsistent with NELEC");
  }
  if (!h.orbsym.empty() && static_cast<int>(h.orbsym.size()) != h.norb) {
    throw FormatError("FCIDUMP ORBSYM length differs from NORB");
  }
  return h;
}

struct Canonical4 {
  int p, q, r, s;
  auto operator<=>(const Canonical4&) const = default;
};

Canonical4 canonical(int p, int q, int r, int s) {
  if (p < q) std::swap(p, q);
  if (r < s) std::swap(r, s);
  if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) {
    std::swap(p, r);
    std::swap(q, s);
  }
  return {p, q, r, s};
}

void record(std::map<Canonical4, double>& seen, Canonical4 key, double value,
            int line) {
  auto [it, inserted] = seen.emplace(key, value);
  if (!inserted && std::abs(it->second - value) > kConflictTol) {
    throw FormatError("line " + std::to_string(line) +
                      ": conflicting duplicate FCIDUMP entry");
  }
}

}  // namespace

Fcidump read_fcidump(std::string_view text) {
  const std::string src(text);
  const std::string up = upper(src);
  const auto begin = up.find("&FCI");
  if (begin == std::string::npos) throw FormatError("FCIDUMP lacks &FCI header");
  auto end = up.find("&END", begin);
  std::size_t body;
  if (end != std::string::npos) {
    body = end + 4;
  } else {
    end = up.find('/', begin);
    if (end == std::string::npos) throw FormatError("unterminated FCIDUMP header");
    body = end + 1;
  }
  Fcidump out;
  out.header = parse_header(src.substr(begin + 4, end - begin - 4));
  const int n = out.header.norb;
  out.integrals.n_mo = n;
  out.integrals.h_mo = Eigen::MatrixXd::Zero(n, n);
  out.integrals.g_mo = Tensor4(n);
  out.integrals.e_nuc = 0.0;

  std::map<Canonical4, double> two_body;
  std::map<Canonical4, double> one_body;  // stored as (p, q, 0, 0)
  std::optional<double> constant;

  const int header_lines =
      static_cast<int>(std::count(src.begin(), src.begin() + static_cast<long>(body), '\n'));
  std::istringstream in(src.substr(body));
  std::string line;
  int lineno = header_lines + 1;
  // The &END line itself may be followed by the rest of its line.
  bool first = true;
  while (std::getline(in, line)) {
    if (!first) ++lineno;
    first = false;
    std::istringstream ls(line);
    std::string vtok;
    if (!(ls >> vtok)) continue;
    for (char& c : vtok) {
      if (c == 'D' || c == 'd') c = 'E';
    }
    double value = 0.0;
    int idx[4];
    try {
      std::size_t used = 0;
      value = std::stod(vtok, &used);
      if (used != vtok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw FormatError("line " + std::to_string(lineno) + ": bad value '" + vtok + "'");
    }
    for (int& k : idx) {
      if (!(ls >> k)) {
        throw FormatError("line " + std::to_string(lineno) + ": expected 4 indices");
      }
      if (k < 0 || k > n) {
        throw FormatError("line " + std::to_string(lineno) + ": index " +
                          std::to_string(k) + " outside 0.." + std::to_string(n));
      }
    }
    const auto [i, j, k, l] = idx;
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      if (constant && std::abs(*constant - value) > kConflictTol) {
        throw FormatError("line " + std::to_string(lineno) + ": conflicting constant");
      }
      constant = value;
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      record(two_body, canonical(i - 1, j - 1, k - 1, l - 1), value, lineno);
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      record(one_body, {std::max(i, j) - 1, std::min(i, j) - 1, 0, 0}, value, lineno);
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      // orbital energy record; not needed downstream
    } else {
      throw FormatError("line " + std::to_string(lineno) + ": unsupported index pattern");
    }
  }
  for (const auto& [key, v] : two_body) {
    out.integrals.g_mo.set_symmetric(key.p, key.q, key.r, key.s, v);
  }
  for (const auto& [key, v] : one_body) {
    out.integrals.h_mo(key.p, key.q) = v;
    out.integrals.h_mo(key.q, key.p) = v;
  }
  out.integrals.e_nuc = constant.value_or(0.0);
  return out;
}

Fcidump read_fcidump_file(const std::string& path) {
  return read_fcidump(slurp(path));
}

std::string write_fcidump(const MOIntegrals& mo, int n_alpha, int n_beta) {
  std::ostringstream out;
  const int n = mo.n_mo;
  out << " &FCI NORB=" << n << ",NELEC=" << n_alpha + n_beta
      << ",MS2=" << n_alpha - n_beta << ",\n  ORBSYM=";
  for (int i = 0; i < n; ++i) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  char buf[96];
  auto emit = [&](double v, int i, int j, int k, int l) {
    std::snprintf(buf, sizeof buf, "%24.17e %4d %4d %4d %4d\n", v, i, j, k, l);
    out << buf;
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * (p + 1) / 2 + q < r * (r + 1) / 2 + s) continue;
          const double v = mo.g_mo(p, q, r, s);
          if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      const double v = mo.h_mo(p, q);
      if (v != 0.0) emit(v, p + 1, q + 1, 0, 0);
    }
  emit(mo.e_nuc, 0, 0, 0, 0);
  return out.str();
}

double basis_set_correction(std::optional<double> e_hf_large,
                            std::optional<double> e_hf_small) {
  if (!e_hf_large) {
    throw UnavailableCorrectionError("large-basis HF energy not supplied");
  }
  if (!e_hf_small) {
    throw UnavailableCorrectionError("small-basis HF energy not supplied");
  }
  return *e_hf_large - *e_hf_small;
}

LargeBasisTable LargeBasisTable::parse(std::string_view text) {
  LargeBasisTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string label, value;
    if (!(ls >> label)) continue;
    if (!(ls >> value)) throw ParseError("missing energy for '" + label + "'", lineno);
    double e = 0.0;
    try {
      std::size_t used = 0;
      e = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("bad energy '" + value + "'", lineno);
    }
    if (t.find(label)) throw ParseError("duplicate label '" + label + "'", lineno);
    t.entries_.emplace_back(label, e);
  }
  return t;
}

LargeBasisTable LargeBasisTable::read_file(const std::string& path) {
  return parse(slurp(path));
}

std::optional<double> LargeBasisTable::find(std::string_view label) const {
  for (const auto& [k, v] : entries_)
    if (k == label) return v;
  return std::nullopt;
}

double LargeBasisTable::at(std::string_view label) const {
  if (auto v = find(label)) return *v;
  throw UnavailableCorrectionError("no large-basis HF energy for '" +
                                   std::string(label) + "'");
}

}  // namespace cvqe
