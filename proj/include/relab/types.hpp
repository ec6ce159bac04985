// Copyright 2026 The relab Authors
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
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Thrown when a numerical contract is violated: positivity, unit trace,
/// projector completeness, Kraus completeness, unitarity, sector leakage.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown on structurally malformed input: unknown labels, duplicate labels,
/// shape mismatches, missing fields.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
// Default numerical tolerances. Operator identities are held to 1e-12,
// channel-level checks to 1e-10, and physical-state positivity allows the
// usual eigensolver slack of -1e-10.
inline constexpr double hermitian = 1e-12;
inline constexpr double trace_one = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double projector = 1e-12;
inline constexpr double kraus = 1e-10;
inline constexpr double unitary = 1e-12;
inline constexpr double verdict = 1e-9;
}  // namespace tol

}  // namespace relab
