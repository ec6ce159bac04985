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

#include <relab/space.hpp>

#include "helpers.hpp"

using namespace relab;
using test::kron_oracle;
using test::max_abs_diff;

TEST_CASE("space validates factors", "[space]") {
  REQUIRE_NOTHROW(Space({{"A", 2, {}}, {"B", 3, {}}}));
  REQUIRE_THROWS_AS(Space({{"A", 2, {}}, {"A", 3, {}}}), SchemaError);
  REQUIRE_THROWS_AS(Space({{"A", 0, {}}}), SchemaError);
  REQUIRE_THROWS_AS(Space({{"A", -1, {}}}), SchemaError);
  // Sector marks must partition the factor dimension.
  REQUIRE_NOTHROW(Space({{"W", 3, {{"msg", 2}, {"vac", 1}}}}));
  REQUIRE_THROWS_AS(Space({{"W", 3, {{"msg", 2}, {"vac", 2}}}}), SchemaError);
  REQUIRE_THROWS_AS(Space({{"W", 3, {{"msg", 3}, {"vac", 0}}}}), SchemaError);
}

TEST_CASE("space dimension and index arithmetic", "[space]") {
  Space sp({{"A", 2, {}}, {"B", 3, {}}, {"C", 2, {}}});
  REQUIRE(sp.dim() == 12);
  REQUIRE(sp.num_factors() == 3);
  REQUIRE(sp.index_of("B") == 1);
  REQUIRE(sp.has("C"));
  REQUIRE_FALSE(sp.has("D"));
  REQUIRE_THROWS_AS(sp.index_of("D"), SchemaError);

  // First factor is most significant: flat = a*6 + b*2 + c.
  REQUIRE(sp.flat({1, 0, 1}) == 7);
  auto d = sp.digits(7);
  REQUIRE(d == std::vector<int>{1, 0, 1});
  for (int i = 0; i < sp.dim(); ++i) REQUIRE(sp.flat(sp.digits(i)) == i);
}

TEST_CASE("space keep preserves original factor order", "[space]") {
  Space sp({{"A", 2, {}}, {"B", 3, {}}, {"C", 2, {}}});
  Space kept = sp.keep({"C", "A"});
  REQUIRE(kept.num_factors() == 2);
  REQUIRE(kept.factor(0).label == "A");
  REQUIRE(kept.factor(1).label == "C");
  REQUIRE(kept.dim() == 4);
  REQUIRE_THROWS_AS(sp.keep({"A", "Z"}), SchemaError);
}

TEST_CASE("embed_operator on a middle factor matches a kron sandwich",
          "[space]") {
  std::mt19937_64 eng(11);
  Space sp({{"A", 2, {}}, {"B", 3, {}}, {"C", 2, {}}});
  Matrix op = test::ginibre(3, 3, eng);
  Matrix embedded = embed_operator(sp, {"B"}, op);
  Matrix expected = kron_oracle(
      kron_oracle(Matrix::Identity(2, 2), op), Matrix::Identity(2, 2));
  REQUIRE(max_abs_diff(embedded, expected) < 1e-15);
}

TEST_CASE("embed_operator handles non-adjacent factors", "[space]") {
  std::mt19937_64 eng(12);
  Space sp({{"A", 2, {}}, {"B", 3, {}}, {"C", 2, {}}});
  Matrix op = test::ginibre(4, 4, eng);  // acts on A (x) C
  Matrix embedded = embed_operator(sp, {"A", "C"}, op);
  REQUIRE(embedded.rows() == 12);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 3; ++b2)
            for (int c2 = 0; c2 < 2; ++c2) {
              Complex got = embedded(sp.flat({a, b, c}), sp.flat({a2, b2, c2}));
              Complex want = (b == b2)
                                 ? op(a * 2 + c, a2 * 2 + c2)
                                 : Complex(0, 0);
              REQUIRE(std::abs(got - want) < 1e-15);
            }
}

TEST_CASE("embed_operator respects the requested factor order", "[space]") {
  std::mt19937_64 eng(13);
  Space sp({{"A", 2, {}}, {"B", 3, {}}, {"C", 2, {}}});
  Matrix op = test::ginibre(4, 4, eng);
  // Same operator viewed with its tensor slots as (C, A) instead of (A, C).
  Matrix embedded = embed_operator(sp, {"C", "A"}, op);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2) {
          Complex got = embedded(sp.flat({a, 0, c}), sp.flat({a2, 0, c2}));
          Complex want = op(c * 2 + a, c2 * 2 + a2);
          REQUIRE(std::abs(got - want) < 1e-15);
        }
}

TEST_CASE("embed_operator rejects bad arguments", "[space]") {
  Space sp({{"A", 2, {}}, {"B", 3, {}}});
  REQUIRE_THROWS_AS(embed_operator(sp, {"Z"}, Matrix::Identity(2, 2)),
                    SchemaError);
  REQUIRE_THROWS_AS(embed_operator(sp, {"A"}, Matrix::Identity(3, 3)),
                    SchemaError);
  REQUIRE_THROWS_AS(embed_operator(sp, {"A", "A"}, Matrix::Identity(4, 4)),
                    SchemaError);
}
