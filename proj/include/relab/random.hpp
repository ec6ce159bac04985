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

#include <cstdint>
#include <random>

#include <relab/channel.hpp>

namespace relab {

/// Deterministic generator: one seed, one stream. Every sampler below, given
/// the same seed, returns bit-identical output on one platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double normal() { return normal_(eng_); }

  Complex complex_normal() { return Complex(normal(), normal()); }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline Matrix ginibre_matrix(int rows, int cols, Rng& rng) {
  if (rows < 1 || cols < 1)
    throw SchemaError("random: nonpositive matrix dimension");
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of the R diagonal pushed into Q. Dimension one returns the scalar 1 so the
/// phase convention is fixed.
inline Matrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw SchemaError("random: nonpositive unitary dimension");
  if (dim == 1) {
    rng.complex_normal();  // keep the stream position consistent
    return Matrix::Identity(1, 1);
  }
  Matrix g = ginibre_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    double mag = std::abs(d);
    q.col(i) *= (mag == 0.0) ? Complex(1, 0) : d / mag;
  }
  return q;
}

inline Matrix random_unitary(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

inline Vector random_pure(int dim, Rng& rng) {
  Vector v = ginibre_matrix(dim, 1, rng).col(0);
  return v / v.norm();
}

inline Matrix random_density(int dim, Rng& rng) {
  Matrix g = ginibre_matrix(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

///// CPTP map sampled through the Stinespring picture: a Haar isometry from the
/// input space into output (x) environment with environment dimension
/// din * dout, sliced along the environment into din * dout Kraus operators.
/// Both legs carry the label "sys" so sampled channels chain directly.
inline KrausChannel random_cptp(int din, int dout, Rng& rng) {
  if (din < 1 || dout < 1)
    throw SchemaError("random: nonpositive channel dimension");
  const int denv = din * dout;
  const int big = dout * denv;
  Matrix u = random_unitary(big, rng);
  std::vector<Matrix> kraus(denv, Matrix::Zero(dout, din));
  for (int e = 0; e < denv; ++e)
    for (int o = 0; o < dout; ++o)
      for (int i = 0; i < din; ++i) kraus[e](o, i) = u(o * denv + e, i);
  return KrausChannel(Space({{"sys", din, {}}}), Space({{"sys", dout, {}}}),
                      std::move(kraus));
}

inline KrausChannel random_cptp(int din, int dout, std::uint64_t seed) {
  Rng rng(seed);
  return random_cptp(din, dout, rng);
}

}  // namespace relab
