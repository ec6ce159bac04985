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
#include <random>

#include <Eigen/Dense>

namespace relab::test {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// Four-nested-loop Kronecker product, kept deliberately naive so library
// results are checked against an independent construction.
inline Matrix kron_oracle(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e99;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

// Gaussian complex matrix from a generator local to the tests, independent of
// the library samplers.
inline Matrix ginibre(int rows, int cols, std::mt19937_64& eng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(eng), n(eng));
  return m;
}

inline Matrix random_density_oracle(int dim, std::mt19937_64& eng) {
  Matrix g = ginibre(dim, dim, eng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

inline Vector random_unit_vector(int dim, std::mt19937_64& eng) {
  Matrix g = ginibre(dim, 1, eng);
  Vector v = g.col(0);
  return v / v.norm();
}

// QR-based unitary from the local generator, used where property inputs need
// genericity without relying on the library sampler under test.
inline Matrix haar_oracle(int dim, std::mt19937_64& eng) {
  Matrix g = ginibre(dim, dim, eng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

}  // namespace relab::test
