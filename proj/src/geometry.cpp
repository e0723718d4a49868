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

#include "cvqe/geometry.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cvqe/common.hpp"

namespace cvqe {

namespace {

constexpr double kMinSeparationAngstrom = 1e-6;

const std::set<std::string, std::less<>> kKnownElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Fe", "Cu", "Zn", "Br"};

std::vector<std::string> split_fields(std::string_view line) {
  std::string cleaned(line);
  for (char& c : cleaned) {
    if (c == '&' || c == '|' || c == ',' || c == '\t') c = ' ';
  }
  // LaTeX row terminators and chemistry macros.
  for (const std::string_view junk : {"\\\\", "\\hline", "\\ce{", "$"}) {
    for (auto pos = cleaned.find(junk); pos != std::string::npos;
         pos = cleaned.find(junk)) {
      cleaned.replace(pos, junk.size(), " ");
    }
  }
  for (char& c : cleaned) {
    if (c == '{' || c == '}') c = ' ';
  }
  std::istringstream in(cleaned);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double parse_number(const std::string& token, int line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError("expected a finite coordinate, got '" + token + "'",
                     line);
  }
  return value;
}

std::string normalize_element(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (std::isalpha(static_cast<unsigned char>(c))) out.push_back(c);
  }
  if (out.empty()) return out;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  for (std::size_t i = 1; i < out.size(); ++i) {
    out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
  }
  return out;
}

Atom parse_atom(const std::vector<std::string>& fields, int line) {
  if (fields.size() != 4) {
    throw ParseError("expected 'element x y z', got " +
                         std::to_string(fields.size()) + " fields",
                     line);
  }
  const std::string element = normalize_element(fields[0]);
  if (element.empty() || element.size() != fields[0].size() ||
      !kKnownElements.contains(element)) {
    throw ParseError("unknown element symbol '" + fields[0] + "'", line);
  }
  if (element != "H") {
    throw UnsupportedElementError("line " + std::to_string(line) +
                                  ": element '" + element +
                                  "' is not supported (hydrogen only)");
  }
  Atom atom;
  atom.element = element;
  atom.charge = 1;
  for (int k = 0; k < 3; ++k) atom.position[k] = parse_number(fields[k + 1], line);
  return atom;
}

bool has_digit(std::string_view s) {
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

bool is_integer_line(std::string_view s) {
  const auto fields = split_fields(s);
  if (fields.size() != 1) return false;
  for (char c : fields[0]) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Geometry::Geometry(std::vector<Atom> atoms, std::string comment)
    : atoms_(std::move(atoms)), comment_(std::move(comment)) {
  for (const auto& a : atoms_) {
    for (double x : a.position) {
      if (!std::isfinite(x)) throw DomainError("non-finite atomic coordinate");
    }
  }
}

int Geometry::total_nuclear_charge() const noexcept {
  int z = 0;
  for (const auto& a : atoms_) z += a.charge;
  return z;
}

double Geometry::distance(std::size_t i, std::size_t j) const {
  const auto& a = atoms_.at(i).position;
  const auto& b = atoms_.at(j).position;
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

std::string Geometry::to_xyz() const {
  std::ostringstream out;
  out.precision(12);
  out << std::fixed << atoms_.size() << '\n' << comment_ << '\n';
  for (const auto& a : atoms_) {
    out << a.element << ' ' << a.position[0] << ' ' << a.position[1] << ' '
        << a.position[2] << '\n';
  }
  return out.str();
}

Geometry parse_geometry(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }

  std::size_t first = 0;
  while (first < lines.size() && split_fields(lines[first]).empty()) ++first;
  if (first == lines.size()) throw ParseError("empty geometry", 1);

  std::vector<Atom> atoms;
  std::string comment;
  if (is_integer_line(lines[first])) {
    const auto count = std::stoul(split_fields(lines[first])[0]);
    if (first + 1 < lines.size()) comment = std::string(lines[first + 1]);
    std::size_t i = first + 2;
    for (; i < lines.size() && atoms.size() < count; ++i) {
      const auto fields = split_fields(lines[i]);
      if (fields.empty()) continue;
      atoms.push_back(parse_atom(fields, static_cast<int>(i + 1)));
    }
    if (atoms.size() != count) {
      throw ParseError("XYZ header declares " + std::to_string(count) +
                           " atoms but " + std::to_string(atoms.size()) +
                           " were found",
                       static_cast<int>(first + 1));
    }
    for (; i < lines.size(); ++i) {
      if (!split_fields(lines[i]).empty()) {
        throw ParseError("unexpected content after the last atom",
                         static_cast<int>(i + 1));
      }
    }
  } else {
    for (std::size_t i = first; i < lines.size(); ++i) {
      if (!has_digit(lines[i])) continue;
      atoms.push_back(parse_atom(split_fields(lines[i]), static_cast<int>(i + 1)));
    }
    if (atoms.empty()) throw ParseError("no atom records found", 1);
  }

  Geometry geometry(std::move(atoms), std::move(comment));
  for (std::size_t a = 0; a < geometry.size(); ++a) {
    for (std::size_t b = a + 1; b < geometry.size(); ++b) {
      if (geometry.distance(a, b) < kMinSeparationAngstrom) {
        throw DomainError("atoms " + std::to_string(a + 1) + " and " +
                          std::to_string(b + 1) + " coincide");
      }
    }
  }
  return geometry;
}

Geometry read_geometry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geometry file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_geometry(buf.str());
}

namespace {
constexpr std::string_view kReactants = R"(4
reactants
H   0.000000000000   8.528398637950   0.000000000000
H   0.000000000000   7.471601362050   0.000000000000
H  -0.370880024809  -1.000000000000   0.000000000000
H   0.370880024809  -1.000000000000   0.000000000000
)";
constexpr std::string_view kWell = R"(4
well
H  -0.000000000092   1.471548475039  -0.000000000204
H   0.000000000553   0.068342894392  -0.000000000201
H  -0.418764663051  -0.769945684835  -0.000000000513
H   0.418764662590  -0.769945684597   0.000000000918
)";
constexpr std::string_view kProducts = R"(4
products
H  -0.000000000092   7.471548475039  -0.000000000204
H   0.000000000553   0.068342894392  -0.000000000201
H  -0.418764663051  -0.769945684835  -0.000000000513
H   0.418764662590  -0.769945684597   0.000000000918
)";
}  // namespace

bool is_builtin_geometry(std::string_view label) {
  return label == "reactants" || label == "well" || label == "products";
}

Geometry builtin_geometry(std::string_view label) {
  if (label == "reactants") return parse_geometry(kReactants);
  if (label == "well") return parse_geometry(kWell);
  if (label == "products") return parse_geometry(kProducts);
  throw DomainError("unknown built-in geometry '" + std::string(label) + "'");
}

double nuclear_repulsion(const Geometry& geometry) {
  double e = 0.0;
  const auto& atoms = geometry.atoms();
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t b = a + 1; b < atoms.size(); ++b) {
      const double r = geometry.distance(a, b);
      if (r < kMinSeparationAngstrom) {
        throw SingularityError("nuclei " + std::to_string(a + 1) + " and " +
                               std::to_string(b + 1) + " coincide");
      }
      e += atoms[a].charge * atoms[b].charge / (r * units::kAngstromToBohr);
    }
  }
  return e;
}

}  // namespace cvqe
