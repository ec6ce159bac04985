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

#include <relab/measurement.hpp>
#include <relab/state.hpp>

#include "helpers.hpp"

using namespace relab;
using test::kron_oracle;
using test::max_abs_diff;

namespace {

// Random complete projector family on `dim` levels: a haar basis split into
// contiguous groups. Independent of the library constructors.
ReferenceMeasurement random_family(const std::string& factor, int dim,
                                   int outcomes, std::mt19937_64& eng) {
  Matrix u = test::haar_oracle(dim, eng);
  std::vector<Matrix> projectors(outcomes, Matrix::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) {
    int grp = std::min(i * outcomes / dim, outcomes - 1);
    projectors[grp] += u.col(i) * u.col(i).adjoint();
  }
  std::vector<std::string> labels;
  for (int g = 0; g < outcomes; ++g) labels.push_back("l" + std::to_string(g));
  return ReferenceMeasurement{factor, labels, projectors};
}

}  // namespace

TEST_CASE("measurement validation catches broken families", "[measurement]") {
  Space sp({{"R", 2, {}}});
  auto comp = computational_measurement("R", 2, {"t1", "t2"});
  REQUIRE_NOTHROW(comp.validate_for(sp));

  // Scaled projectors no longer sum to the identity.
  ReferenceMeasurement incomplete = comp;
  for (auto& p : incomplete.projectors) p *= 0.9;
  REQUIRE_THROWS_WITH(incomplete.validate_for(sp),
                      Catch::Matchers::ContainsSubstring("complete"));

  ReferenceMeasurement lopsided = comp;
  lopsided.projectors[0](0, 1) = 0.3;  // not hermitian
  REQUIRE_THROWS_AS(lopsided.validate_for(sp), InvariantError);

  ReferenceMeasurement dup = comp;
  dup.labels[1] = dup.labels[0];
  REQUIRE_THROWS_AS(dup.validate_for(sp), SchemaError);

  ReferenceMeasurement overlapping{
      "R",
      {"a", "b"},
      {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}};
  REQUIRE_THROWS_AS(overlapping.validate_for(sp), InvariantError);

  ReferenceMeasurement wrong_factor = comp;
  wrong_factor.factor = "Z";
  REQUIRE_THROWS_AS(wrong_factor.validate_for(sp), SchemaError);
}

TEST_CASE("dephase is idempotent and trace preserving", "[measurement]") {
  std::mt19937_64 eng(41);
  for (int trial = 0; trial < 50; ++trial) {
    int rdim = 2 + static_cast<int>(eng() % 3);
    int outcomes = 2 + static_cast<int>(eng() % (rdim - 1));
    Space sp({{"R", rdim, {}}, {"T", 2, {}}});
    auto family = random_family("R", rdim, outcomes, eng);
    DensityOperator rho(sp, test::random_density_oracle(sp.dim(), eng));
    DensityOperator once = dephase(rho, family);
    DensityOperator twice = dephase(once, family);
    REQUIRE(std::abs(once.trace() - 1.0) < 1e-12);
    REQUIRE(max_abs_diff(once.matrix(), twice.matrix()) < 1e-13);
  }
}

TEST_CASE("dephase removes cross-block coherence", "[measurement]") {
  Space sp({{"R", 2, {}}});
  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  auto comp = computational_measurement("R", 2, {"a", "b"});
  DensityOperator rho(sp, plus);
  DensityOperator out = dephase(rho, comp);
  REQUIRE(max_abs_diff(out.matrix(), 0.5 * Matrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("dephase acts only on the named factor", "[measurement]") {
  std::mt19937_64 eng(42);
  Matrix rr = test::random_density_oracle(2, eng);
  Matrix tt = test::random_density_oracle(3, eng);
  Space sp({{"R", 2, {}}, {"T", 3, {}}});
  auto comp = computational_measurement("R", 2, {"a", "b"});
  DensityOperator rho(sp, kron_oracle(rr, tt));
  Matrix rr_dephased = rr;
  rr_dephased(0, 1) = 0.0;
  rr_dephased(1, 0) = 0.0;
  DensityOperator out = dephase(rho, comp);
  REQUIRE(max_abs_diff(out.matrix(), kron_oracle(rr_dephased, tt)) < 1e-15);
}

TEST_CASE("controlled unitary reproduces CNOT", "[measurement]") {
  auto comp = computational_measurement("R", 2, {"0", "1"});
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  Matrix cu = controlled_unitary(comp, {{"0", Matrix::Identity(2, 2)},
                                        {"1", x}});
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = 1;
  cnot(1, 1) = 1;
  cnot(2, 3) = 1;
  cnot(3, 2) = 1;
  REQUIRE(max_abs_diff(cu, cnot) == 0.0);
}

TEST_CASE("controlled unitary matches block assembly on random families",
          "[measurement]") {
  std::mt19937_64 eng(43);
  for (int trial = 0; trial < 20; ++trial) {
    int rdim = 3;
    auto family = random_family("R", rdim, 3, eng);
    std::map<std::string, Matrix> ops;
    Matrix want = Matrix::Zero(rdim * 2, rdim * 2);
    for (int g = 0; g < 3; ++g) {
      Matrix u = test::haar_oracle(2, eng);
      ops[family.labels[g]] = u;
      want += kron_oracle(family.projectors[g], u);
    }
    Matrix got = controlled_unitary(family, ops);
    REQUIRE(max_abs_diff(got, want) < 1e-14);
    REQUIRE(is_unitary(got));
    // The controlled operation commutes with every reference projector.
    for (int g = 0; g < 3; ++g) {
      Matrix pe = kron_oracle(family.projectors[g], Matrix::Identity(2, 2));
      REQUIRE(max_abs_diff(pe * got, got * pe) < 1e-12);
    }
  }
}

TEST_CASE("controlled unitary requires one operator per label",
          "[measurement]") {
  auto comp = computational_measurement("R", 2, {"0", "1"});
  REQUIRE_THROWS_AS(
      controlled_unitary(comp, {{"0", Matrix::Identity(2, 2)}}),
      SchemaError);
  REQUIRE_THROWS_AS(
      controlled_unitary(comp, {{"0", Matrix::Identity(2, 2)},
                                {"oops", Matrix::Identity(2, 2)}}),
      SchemaError);
  REQUIRE_THROWS_AS(
      controlled_unitary(comp, {{"0", Matrix::Identity(2, 2)},
                                {"1", Matrix::Identity(3, 3)}}),
      SchemaError);
}

TEST_CASE("target-major controlled form is a swap conjugation",
          "[measurement]") {
  std::mt19937_64 eng(44);
  auto comp = computational_measurement("R", 2, {"t1", "t2"});
  Matrix u1 = test::haar_oracle(3, eng);
  Matrix u2 = test::haar_oracle(3, eng);
  Matrix reference_major = controlled_unitary(comp, {{"t1", u1}, {"t2", u2}});

  // Direct assembly with the time pointer as the second tensor slot.
  Matrix target_major = kron_oracle(u1, comp.projectors[0]) +
                        kron_oracle(u2, comp.projectors[1]);

  // Perfect shuffle mapping |r,t> to |t,r>.
  Matrix shuffle = Matrix::Zero(6, 6);
  for (int r = 0; r < 2; ++r)
    for (int t = 0; t < 3; ++t) shuffle(t * 2 + r, r * 3 + t) = 1.0;
  REQUIRE(max_abs_diff(shuffle * reference_major * shuffle.transpose(),
                       target_major) < 1e-14);
}
