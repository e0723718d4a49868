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

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace cvqe {

struct Atom {
  std::string element;
  int charge = 1;
  std::array<double, 3> position{};  // Angstrom
};

/// Nuclear framework of a molecule. Positions are stored in Angstrom exactly
/// as read; conversion to Bohr happens at the integral boundary.
class Geometry {
 public:
  Geometry() = default;
  Geometry(std::vector<Atom> atoms, std::string comment = {});

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::string& comment() const noexcept { return comment_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  int total_nuclear_charge() const noexcept;

  /// Distance between atoms i and j in Angstrom.
  double distance(std::size_t i, std::size_t j) const;

  std::string to_xyz() const;

 private:
  std::vector<Atom> atoms_;
  std::string comment_;
};

/// Accepts either XYZ text (atom count, comment line, records) or a
/// coordinate table whose rows are `element x y z` separated by whitespace,
/// `&`, `|` or commas. Table lines without digits are treated as headers.
Geometry parse_geometry(std::string_view text);
Geometry read_geometry_file(const std::string& path);

/// Built-in reaction-path structures: "reactants", "well", "products".
Geometry builtin_geometry(std::string_view label);
bool is_builtin_geometry(std::string_view label);

/// Sum over nuclear pairs of Z_a Z_b / r_ab, in Hartree.
double nuclear_repulsion(const Geometry& geometry);

}  // namespace cvqe
