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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cvqe {

using cplx = std::complex<double>;

/// Occupation-number basis label: bit q is the occupation of spin-orbital q,
/// qubit 0 is the least-significant bit.
using FockIndex = std::uint64_t;

namespace units {
inline constexpr double kHartreeToEv = 27.211386245988;
inline constexpr double kBohrToAngstrom = 0.529177210903;
inline constexpr double kAngstromToBohr = 1.0 / kBohrToAngstrom;
inline constexpr double kChemicalAccuracyEv = 0.043;

constexpr double to_ev(double hartree) { return hartree * kHartreeToEv; }
constexpr double to_hartree(double ev) { return ev / kHartreeToEv; }
}  // namespace units

// Error hierarchy. Every failure mode named by an operation maps to one of
// these so callers (and the CLI) can attribute it.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class UnsupportedElementError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class IllConditionedBasisError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_delta)
      : Error(what), last_delta_(last_delta) {}
  double last_energy_delta() const noexcept { return last_delta_; }

 private:
  double last_delta_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class UnavailableCorrectionError : public Error {
 public:
  using Error::Error;
};

class EmptySubspaceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error raised inside one pipeline stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace cvqe
