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

#include <initializer_list>
#include <vector>

#include <relab/types.hpp>

namespace relab {

/// Kronecker product, first argument most significant.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix kron(std::initializer_list<Matrix> ms) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& m : ms) out = kron(out, m);
  return out;
}

inline Matrix kron(const std::vector<Matrix>& ms) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& m : ms) out = kron(out, m);
  return out;
}

inline Vector basis_vector(int dim, int index) {
  if (index < 0 || index >= dim) throw SchemaError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return 1.0;
  return max_abs(u.adjoint() * u - Matrix::Identity(u.cols(), u.cols()));
}

inline bool is_unitary(const Matrix& u, double tolerance = tol::unitary) {
  return unitarity_defect(u) <= tolerance;
}

inline bool is_hermitian(const Matrix& m, double tolerance = tol::hermitian) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tolerance;
}

/// Half the trace norm of (a - b), evaluated through the eigenvalues of the
/// hermitian difference. Equals 1 for orthogonal pure states and 0 for equal
/// arguments. Accepts unnormalized hermitian inputs, where the value is still
/// half the trace norm but no longer bounded by 1 in general.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw SchemaError("trace_distance: shape mismatch");
  Matrix diff = a - b;
  // Canonical sign for the difference so the result is bitwise symmetric in
  // its arguments.
  auto flip_sign = [&diff]() {
    for (Eigen::Index i = 0; i < diff.rows(); ++i)
      for (Eigen::Index j = 0; j < diff.cols(); ++j) {
        const Complex& z = diff(i, j);
        if (z.real() != 0.0 || z.imag() != 0.0)
          return z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0);
      }
    return false;
  };
  if (flip_sign()) diff = -diff;
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum() / 2.0;
}

}  // namespace relab
