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

#include <relab/process.hpp>
#include <relab/qswitch.hpp>
#include <relab/random.hpp>

#include "helpers.hpp"

using namespace relab;
using test::max_abs_diff;

namespace {

Space leg(int dim) { return Space({{"sys", dim, {}}}); }

// Hermitian effect with spectrum inside [0, 1].
Matrix random_effect(int dim, std::mt19937_64& eng) {
  Matrix v = test::haar_oracle(dim, eng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector p(dim);
  for (int i = 0; i < dim; ++i) p(i) = unit(eng);
  return v * p.asDiagonal() * v.adjoint();
}

}  // namespace

TEST_CASE("process vector norm and wiring", "[process]") {
  for (int d : {2, 3}) {
    ProcessVector pv = qs_process_vector(d);
    REQUIRE(pv.space.dim() == 4 * d * d * d * d * d * d);
    REQUIRE(pv.w.size() == pv.space.dim());

    // Integer entries, so the squared norm is exact.
    double norm2 = pv.w.squaredNorm();
    REQUIRE(norm2 == 2.0 * d * d * d);

    const int pc = pv.space.index_of("past_ctrl");
    const int pt = pv.space.index_of("past_tgt");
    const int ai = pv.space.index_of("a_in");
    const int ao = pv.space.index_of("a_out");
    const int bi = pv.space.index_of("b_in");
    const int bo = pv.space.index_of("b_out");
    const int fc = pv.space.index_of("future_ctrl");
    const int ft = pv.space.index_of("future_tgt");

    int nonzero = 0;
    for (int i = 0; i < pv.w.size(); ++i) {
      if (pv.w(i) == Complex(0.0, 0.0)) continue;
      REQUIRE(pv.w(i) == Complex(1.0, 0.0));
      ++nonzero;
      std::vector<int> digit = pv.space.digits(i);
      REQUIRE(digit[pc] == digit[fc]);
      if (digit[pc] == 0) {
        // First routing branch: past feeds a, a feeds b, b feeds the future.
        REQUIRE(digit[pt] == digit[ai]);
        REQUIRE(digit[ao] == digit[bi]);
        REQUIRE(digit[bo] == digit[ft]);
      } else {
        REQUIRE(digit[pt] == digit[bi]);
        REQUIRE(digit[bo] == digit[ai]);
        REQUIRE(digit[ao] == digit[ft]);
      }
    }
    REQUIRE(nonzero == 2 * d * d * d);
  }
}

TEST_CASE("born rule matches the coarse circuit", "[process][property]") {
  std::mt19937_64 eng(81);
  ProcessVector pv = qs_process_vector(2);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix ua = test::haar_oracle(2, eng);
    Matrix ub = test::haar_oracle(2, eng);
    Matrix rho = test::random_density_oracle(4, eng);
    Matrix effect = random_effect(4, eng);

    Matrix sw = qs_coarse(ua, ub);
    double want = (effect * sw * rho * sw.adjoint()).trace().real();

    double got = born_probability(
        pv, DensityOperator(pv.space.keep({"past_ctrl", "past_tgt"}), rho),
        unitary_channel(leg(2), ua), unitary_channel(leg(2), ub), effect);
    REQUIRE(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("born rule is normalized on every channel pair",
          "[process][property]") {
  std::mt19937_64 eng(82);
  Rng rng(910);
  ProcessVector pv = qs_process_vector(2);
  Matrix one = Matrix::Identity(4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    KrausChannel a = random_cptp(2, 2, rng);
    KrausChannel b = random_cptp(2, 2, rng);
    Matrix rho = test::random_density_oracle(4, eng);
    double total = born_probability(
        pv, DensityOperator(pv.space.keep({"past_ctrl", "past_tgt"}), rho), a,
        b, one);
    REQUIRE(std::abs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("discarding one party flattens the target", "[process]") {
  std::mt19937_64 eng(83);
  Rng rng(911);
  ProcessVector pv = qs_process_vector(2);

  // Measure-and-forget on a's slot: output is maximally mixed regardless of
  // input, so the future target reads 1/d whichever order ran.
  std::vector<Matrix> forget;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix k = Matrix::Zero(2, 2);
      k(i, j) = 1.0 / std::sqrt(2.0);
      forget.push_back(k);
    }
  KrausChannel erase(leg(2), leg(2), forget);

  for (int trial = 0; trial < 5; ++trial) {
    Matrix ub = test::haar_oracle(2, eng);
    Matrix rho = test::random_density_oracle(4, eng);
    DensityOperator prep(pv.space.keep({"past_ctrl", "past_tgt"}), rho);
    double sum = 0.0;
    for (int t = 0; t < 2; ++t) {
      Matrix pick = test::kron_oracle(Matrix::Identity(2, 2),
                                      projector(basis_vector(2, t)));
      double p = born_probability(pv, prep, erase,
                                  unitary_channel(leg(2), ub), pick);
      REQUIRE(std::abs(p - 0.5) < 1e-9);
      sum += p;
    }
    REQUIRE(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("born rule validates its pieces", "[process]") {
  std::mt19937_64 eng(84);
  Rng rng(912);
  ProcessVector pv = qs_process_vector(2);
  KrausChannel ch = random_cptp(2, 2, rng);
  Matrix rho4 = test::random_density_oracle(4, eng);
  DensityOperator prep(pv.space.keep({"past_ctrl", "past_tgt"}), rho4);

  DensityOperator bad_prep(leg(2), test::random_density_oracle(2, eng));
  REQUIRE_THROWS_AS(
      born_probability(pv, bad_prep, ch, ch, Matrix::Identity(4, 4)),
      SchemaError);

  KrausChannel bad_ch = random_cptp(2, 3, rng);
  REQUIRE_THROWS_AS(
      born_probability(pv, prep, bad_ch, ch, Matrix::Identity(4, 4)),
      SchemaError);

  REQUIRE_THROWS_AS(
      born_probability(pv, prep, ch, ch, Matrix::Identity(3, 3)),
      SchemaError);

  Matrix skew = Matrix::Zero(4, 4);
  skew(0, 1) = 1.0;
  REQUIRE_THROWS_AS(born_probability(pv, prep, ch, ch, skew), InvariantError);

  REQUIRE_THROWS_AS(qs_process_vector(0), SchemaError);
}
