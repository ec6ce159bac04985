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

#include <relab/linalg.hpp>
#include <relab/space.hpp>

namespace relab {

/// Density operator on a labeled composite space. Construction validates
/// hermiticity (1e-12), positivity (eigenvalues above -1e-10) and, unless the
/// unnormalized factory is used, unit trace (1e-12). Unnormalized variants
/// appear only where an operation's contract says so, e.g. projected event
/// branches.
class DensityOperator {
 public:
  DensityOperator(Space space, Matrix rho)
      : DensityOperator(std::move(space), std::move(rho), true) {}

  static DensityOperator unnormalized(Space space, Matrix rho) {
    return DensityOperator(std::move(space), std::move(rho), false);
  }

  const Space& space() const { return space_; }
  const Matrix& matrix() const { return rho_; }
  bool normalized() const { return normalized_; }

  double trace() const { return rho_.trace().real(); }

  double purity() const { return (rho_ * rho_).trace().real(); }

 private:
  DensityOperator(Space space, Matrix rho, bool normalized)
      : space_(std::move(space)), rho_(std::move(rho)),
        normalized_(normalized) {
    if (rho_.rows() != space_.dim() || rho_.cols() != space_.dim())
      throw SchemaError("state: matrix shape does not match the space");
    if (!is_hermitian(rho_))
      throw InvariantError("state: matrix is not hermitian within 1e-12");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd)
      throw InvariantError("state: matrix is not positive semidefinite");
    if (normalized_ && std::abs(rho_.trace().real() - 1.0) > tol::trace_one)
      throw InvariantError("state: trace differs from one beyond 1e-12");
  }

  Space space_;
  Matrix rho_;
  bool normalized_ = true;
};

inline DensityOperator pure_state(Space space, const Vector& amplitudes) {
  if (amplitudes.size() != space.dim())
    throw SchemaError("pure_state: amplitude count does not match the space");
  return DensityOperator(std::move(space), projector(amplitudes));
}

/// Traces out every factor of sp not named in keep_labels, acting on a bare
/// matrix. Kept factors stay in the original factor order of the space.
inline Matrix partial_trace(const Space& sp, const Matrix& m,
                            const std::vector<std::string>& keep) {
  if (m.rows() != sp.dim() || m.cols() != sp.dim())
    throw SchemaError("partial_trace: matrix shape does not match the space");
  Space kept_space = sp.keep(keep);  // validates labels, fixes order
  std::vector<int> kept_flags(sp.num_factors(), 0);
  for (const auto& l : keep) kept_flags[sp.index_of(l)] = 1;

  const int n = sp.dim();
  Matrix out = Matrix::Zero(kept_space.dim(), kept_space.dim());
  auto kept_index = [&](const std::vector<int>& d) {
    int s = 0;
    for (int f = 0; f < sp.num_factors(); ++f)
      if (kept_flags[f]) s = s * sp.factor(f).dim + d[f];
    return s;
  };
  for (int i = 0; i < n; ++i) {
    const std::vector<int> di = sp.digits(i);
    for (int j = 0; j < n; ++j) {
      const std::vector<int> dj = sp.digits(j);
      bool traced_equal = true;
      for (int f = 0; f < sp.num_factors(); ++f) {
        if (!kept_flags[f] && di[f] != dj[f]) {
          traced_equal = false;
          break;
        }
      }
      if (traced_equal) out(kept_index(di), kept_index(dj)) += m(i, j);
    }
  }
  return out;
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<std::string>& keep) {
  Space kept_space = rho.space().keep(keep);
  Matrix out = partial_trace(rho.space(), rho.matrix(), keep);
  return rho.normalized() ? DensityOperator(kept_space, std::move(out))
                          : DensityOperator::unnormalized(kept_space,
                                                          std::move(out));
}

inline double trace_distance(const DensityOperator& a,
                             const DensityOperator& b) {
  if (!(a.space() == b.space()))
    throw SchemaError("trace_distance: states live on different spaces");
  return trace_distance(a.matrix(), b.matrix());
}

}  // namespace relab
