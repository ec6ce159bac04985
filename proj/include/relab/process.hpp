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

#include <relab/channel.hpp>

namespace relab {

/// Pure process connecting a preparation party (control and target), two
/// operation parties a and b, and a final measurement party. The vector
/// lives on eight slots in the fixed order past_ctrl, past_tgt, a_in, a_out,
/// b_in, b_out, future_ctrl, future_tgt; its squared norm is 2 d^3.
struct ProcessVector {
  int d = 0;
  Space space;
  Vector w;
};

/// Each control branch wires the parties in one of the two orders: branch 0
/// feeds the target through a then b, branch 1 through b then a, and the
/// control itself passes straight from past to future.
inline ProcessVector qs_process_vector(int d) {
  if (d < 1) throw SchemaError("process: nonpositive target dimension");
  Space sp({{"past_ctrl", 2, {}},
            {"past_tgt", d, {}},
            {"a_in", d, {}},
            {"a_out", d, {}},
            {"b_in", d, {}},
            {"b_out", d, {}},
            {"future_ctrl", 2, {}},
            {"future_tgt", d, {}}});
  Vector w = Vector::Zero(sp.dim());
  for (int t = 0; t < d; ++t)
    for (int m = 0; m < d; ++m)
      for (int n = 0; n < d; ++n) {
        w(sp.flat({0, t, t, m, m, n, 0, n})) += 1.0;
        w(sp.flat({1, t, m, n, t, m, 1, n})) += 1.0;
      }
  return ProcessVector{d, std::move(sp), std::move(w)};
}

/// Probability of one measurement effect given the parties' fillings:
/// Tr[W (rho (x) C_a (x) C_b (x) effect^T)^T] with W the outer product of
/// the process vector and C the input-first Choi operator of each channel.
inline double born_probability(const ProcessVector& pv,
                               const DensityOperator& preparation,
                               const KrausChannel& party_a,
                               const KrausChannel& party_b,
                               const Matrix& effect) {
  const int d = pv.d;
  if (preparation.space().dim() != 2 * d)
    throw SchemaError("process: preparation does not fill the past slots");
  if (party_a.in_space().dim() != d || party_a.out_space().dim() != d ||
      party_b.in_space().dim() != d || party_b.out_space().dim() != d)
    throw SchemaError("process: party channels must act on the target "
                      "dimension");
  if (effect.rows() != 2 * d || effect.cols() != 2 * d)
    throw SchemaError("process: effect does not fill the future slots");
  if (!is_hermitian(effect, tol::hermitian))
    throw InvariantError("process: effect is not hermitian");

  const Matrix filling = kron({preparation.matrix(), party_a.choi(),
                               party_b.choi(), effect.transpose()});
  // Tr[|w><w| M^T] contracts as w^T M conj(w).
  const Complex value =
      (pv.w.transpose() * filling * pv.w.conjugate())(0, 0);
  return value.real();
}

}  // namespace relab
