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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include <relab/linalg.hpp>

#include "helpers.hpp"

using namespace relab;
using test::kron_oracle;
using test::max_abs_diff;

TEST_CASE("kron matches the nested-loop oracle", "[linalg]") {
  std::mt19937_64 eng(21);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = test::ginibre(2, 3, eng);
    Matrix b = test::ginibre(3, 2, eng);
    REQUIRE(max_abs_diff(kron(a, b), kron_oracle(a, b)) < 1e-15);
  }
  Matrix i2 = Matrix::Identity(2, 2);
  Matrix i3 = Matrix::Identity(3, 3);
  REQUIRE(max_abs_diff(kron(i2, i3), Matrix::Identity(6, 6)) == 0.0);
}

TEST_CASE("kron of a list folds left to right", "[linalg]") {
  std::mt19937_64 eng(22);
  Matrix a = test::ginibre(2, 2, eng);
  Matrix b = test::ginibre(3, 3, eng);
  Matrix c = test::ginibre(2, 2, eng);
  Matrix got = kron({a, b, c});
  Matrix want = kron_oracle(kron_oracle(a, b), c);
  REQUIRE(max_abs_diff(got, want) < 1e-15);
}

TEST_CASE("trace distance of orthogonal pure states is one", "[linalg]") {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  REQUIRE(trace_distance(p0, p1) == Catch::Approx(1.0).margin(1e-14));
  REQUIRE(trace_distance(p0, p0) == 0.0);
}

TEST_CASE("trace distance matches a singular-value oracle", "[linalg]") {
  std::mt19937_64 eng(23);
  for (int trial = 0; trial < 30; ++trial) {
    int dim = 2 + static_cast<int>(eng() % 3);
    Matrix a = test::random_density_oracle(dim, eng);
    Matrix b = test::random_density_oracle(dim, eng);
    double got = trace_distance(a, b);
    Eigen::JacobiSVD<Matrix> svd(a - b);
    double want = svd.singularValues().sum() / 2.0;
    REQUIRE(got == Catch::Approx(want).margin(1e-12));
    REQUIRE(got >= 0.0);
    REQUIRE(got <= 1.0 + 1e-12);
  }
}

TEST_CASE("trace distance is a metric on random triples", "[linalg]") {
  std::mt19937_64 eng(24);
  for (int trial = 0; trial < 50; ++trial) {
    int dim = 2 + static_cast<int>(eng() % 3);
    Matrix a = test::random_density_oracle(dim, eng);
    Matrix b = test::random_density_oracle(dim, eng);
    Matrix c = test::random_density_oracle(dim, eng);
    double ab = trace_distance(a, b);
    double ba = trace_distance(b, a);
    double ac = trace_distance(a, c);
    double cb = trace_distance(c, b);
    REQUIRE(ab == ba);  // bitwise symmetric by construction
    REQUIRE(ab <= ac + cb + 1e-12);
    REQUIRE(trace_distance(a, a) == 0.0);
  }
}

TEST_CASE("trace distance rejects shape mismatches", "[linalg]") {
  REQUIRE_THROWS_AS(trace_distance(Matrix::Identity(2, 2),
                                   Matrix::Identity(3, 3)),
                    SchemaError);
}

TEST_CASE("unitarity defect detects non-unitaries", "[linalg]") {
  std::mt19937_64 eng(25);
  Matrix u = test::haar_oracle(4, eng);
  REQUIRE(unitarity_defect(u) < 1e-12);
  REQUIRE(is_unitary(u));
  Matrix m = u;
  m(0, 0) += 0.01;
  REQUIRE_FALSE(is_unitary(m));
}

TEST_CASE("hermiticity check", "[linalg]") {
  std::mt19937_64 eng(26);
  Matrix g = test::ginibre(3, 3, eng);
  Matrix h = g + g.adjoint();
  REQUIRE(is_hermitian(h));
  Matrix m = h;
  m(0, 1) += Complex(0, 0.01);
  REQUIRE_FALSE(is_hermitian(m));
}

TEST_CASE("basis vectors and projectors", "[linalg]") {
  Vector e1 = basis_vector(3, 1);
  REQUIRE(e1.size() == 3);
  REQUIRE(std::abs(e1(1) - 1.0) == 0.0);
  Matrix p = projector(e1);
  REQUIRE(max_abs_diff(p * p, p) == 0.0);
  REQUIRE(std::abs(p.trace() - 1.0) == 0.0);
}
