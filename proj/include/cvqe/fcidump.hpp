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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvqe/scf.hpp"

namespace cvqe {

struct FcidumpHeader {
  int norb = 0;
  int nelec = 0;
  int ms2 = 0;
  int isym = 1;
  std::vector<int> orbsym;
};

struct Fcidump {
  MOIntegrals integrals;
  FcidumpHeader header;
};

/// Parses FCIDUMP text (namelist header, then `value i j k l` records with
/// 1-based indices in chemists' notation; `i j 0 0` is h_ij and `0 0 0 0`
/// the constant). Symmetry-redundant records are merged; conflicting ones
/// raise FormatError.
Fcidump read_fcidump(std::string_view text);
Fcidump read_fcidump_file(const std::string& path);

/// Writes symmetry-unique entries with round-trip precision, constant last.
std::string write_fcidump(const MOIntegrals& mo, int n_alpha, int n_beta);

// ---------------------------------------------------------------------------

/// Large-basis minus small-basis HF energy. Either value missing raises
/// UnavailableCorrectionError; the correction is never silently zero.
double basis_set_correction(std::optional<double> e_hf_large,
                            std::optional<double> e_hf_small);

/// Table of externally computed large-basis HF energies keyed by geometry
/// label. File format: `label<ws>energy_hartree[<ws>note...]`, `#` comments.
class LargeBasisTable {
 public:
  static LargeBasisTable parse(std::string_view text);
  static LargeBasisTable read_file(const std::string& path);

  std::optional<double> find(std::string_view label) const;
  /// Throws UnavailableCorrectionError when the label is absent.
  double at(std::string_view label) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

}  // namespace cvqe
