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

#include <utility>
#include <vector>

#include <relab/state.hpp>

namespace relab {

/// Completely positive map in Kraus form between labeled spaces. The
/// constructor classifies the map: trace preserving when sum K^dag K equals
/// the identity within 1e-10, trace non-increasing when it stays below the
/// identity, and anything above the identity is rejected.
class KrausChannel {
 public:
  KrausChannel(Space in, Space out, std::vector<Matrix> kraus)
      : in_(std::move(in)), out_(std::move(out)), kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw SchemaError("channel: no kraus operators");
    for (const auto& k : kraus_)
      if (k.rows() != out_.dim() || k.cols() != in_.dim())
        throw SchemaError("channel: kraus shape does not match the spaces");
    Matrix total = Matrix::Zero(in_.dim(), in_.dim());
    for (const auto& k : kraus_) total += k.adjoint() * k;
    trace_preserving_ =
        max_abs(total - Matrix::Identity(in_.dim(), in_.dim())) <= tol::kraus;
    if (!trace_preserving_) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(
          Matrix::Identity(in_.dim(), in_.dim()) - total,
          Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -tol::kraus)
        throw InvariantError(
            "channel: kraus completeness sum exceeds the identity");
    }
  }

  const Space& in_space() const { return in_; }
  const Space& out_space() const { return out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  bool is_trace_preserving() const { return trace_preserving_; }
  bool is_trace_nonincreasing() const { return !trace_preserving_; }

  DensityOperator apply(const DensityOperator& rho) const {
    if (!(rho.space() == in_))
      throw SchemaError("channel: input lives on the wrong space");
    Matrix out = apply_raw(rho.matrix());
    const bool keep_normalized = rho.normalized() && trace_preserving_;
    return keep_normalized ? DensityOperator(out_, out)
                           : DensityOperator::unnormalized(out_, out);
  }

  /// Kraus sum on a bare matrix. Skips state validation, so it also accepts
  /// subnormalized or otherwise non-state inputs such as projected branches.
  Matrix apply_raw(const Matrix& m) const {
    if (m.rows() != in_.dim() || m.cols() != in_.dim())
      throw SchemaError("channel: matrix shape does not match the input space");
    Matrix out = Matrix::Zero(out_.dim(), out_.dim());
    for (const auto& k : kraus_) out += k * m * k.adjoint();
    return out;
  }

  /// Choi operator with the input slot first: C = sum_ij |i><j| (x) E(|i><j|),
  /// assembled as sum_m |v_m><v_m| with v_m = sum_i |i> (x) K_m |i>.
  Matrix choi() const {
    const int din = in_.dim();
    const int dout = out_.dim();
    Matrix c = Matrix::Zero(din * dout, din * dout);
    for (const auto& k : kraus_) {
      Vector v = Vector::Zero(din * dout);
      for (int i = 0; i < din; ++i)
        v.segment(i * dout, dout) = k.col(i);
      c += v * v.adjoint();
    }
    return c;
  }

 private:
  Space in_;
  Space out_;
  std::vector<Matrix> kraus_;
  bool trace_preserving_ = false;
};

inline KrausChannel identity_channel(const Space& sp) {
  return KrausChannel(sp, sp, {Matrix::Identity(sp.dim(), sp.dim())});
}

inline KrausChannel unitary_channel(const Space& sp, const Matrix& u) {
  if (u.rows() != sp.dim() || u.cols() != sp.dim())
    throw SchemaError("channel: unitary shape does not match the space");
  return KrausChannel(sp, sp, {u});
}

inline DensityOperator apply_channel(const KrausChannel& ch,
                                     const DensityOperator& rho) {
  return ch.apply(rho);
}

/// Sequential composition: (after . before), i.e. before runs first.
inline KrausChannel compose(const KrausChannel& after,
                            const KrausChannel& before) {
  if (after.in_space().dim() != before.out_space().dim())
    throw SchemaError("compose: intermediate dimensions do not match");
  std::vector<Matrix> ks;
  ks.reserve(after.kraus().size() * before.kraus().size());
  for (const auto& a : after.kraus())
    for (const auto& b : before.kraus()) ks.push_back(a * b);
  return KrausChannel(before.in_space(), after.out_space(), std::move(ks));
}

}  // namespace relab
