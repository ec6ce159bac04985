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

#include <map>
#include <set>
#include <vector>

#include <relab/state.hpp>

namespace relab {

/// Complete family of orthogonal projectors on one reference factor, one per
/// outcome label. Completeness, orthogonality and idempotence are held to
/// 1e-12.
struct ReferenceMeasurement {
  std::string factor;
  std::vector<std::string> labels;
  std::vector<Matrix> projectors;

  int outcome_count() const { return static_cast<int>(labels.size()); }

  int label_index(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<int>(i);
    throw SchemaError("measurement: unknown outcome label '" + label + "'");
  }

  void validate(int factor_dim) const {
    if (labels.empty())
      throw SchemaError("measurement: no outcome labels");
    if (labels.size() != projectors.size())
      throw SchemaError("measurement: label and projector counts differ");
    std::set<std::string> seen;
    for (const auto& l : labels)
      if (l.empty() || !seen.insert(l).second)
        throw SchemaError("measurement: empty or duplicate outcome label");
    Matrix sum = Matrix::Zero(factor_dim, factor_dim);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
      const Matrix& p = projectors[i];
      if (p.rows() != factor_dim || p.cols() != factor_dim)
        throw SchemaError("measurement: projector shape does not match factor");
      if (!is_hermitian(p, tol::projector))
        throw InvariantError("measurement: projector '" + labels[i] +
                             "' is not hermitian");
      sum += p;
    }
    if (max_abs(sum - Matrix::Identity(factor_dim, factor_dim)) >
        tol::projector)
      throw InvariantError(
          "measurement: projector family is not complete (does not sum to the "
          "identity)");
    for (std::size_t i = 0; i < projectors.size(); ++i) {
      const Matrix& p = projectors[i];
      if (max_abs(p * p - p) > tol::projector)
        throw InvariantError("measurement: projector '" + labels[i] +
                             "' is not idempotent");
      for (std::size_t j = 0; j < i; ++j)
        if (max_abs(p * projectors[j]) > tol::projector)
          throw InvariantError("measurement: projectors '" + labels[i] +
                               "' and '" + labels[j] + "' overlap");
    }
  }

  void validate_for(const Space& sp) const {
    validate(sp.factor(factor).dim);  // factor lookup throws on bad label
  }
};

/// Projective family along the computational basis of one factor.
inline ReferenceMeasurement computational_measurement(
    const std::string& factor, int dim, std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != dim)
    throw SchemaError("measurement: need one label per basis vector");
  ReferenceMeasurement m{factor, std::move(labels), {}};
  for (int i = 0; i < dim; ++i)
    m.projectors.push_back(projector(basis_vector(dim, i)));
  return m;
}

/// Trivial family with a single outcome covering the whole factor.
inline ReferenceMeasurement singleton_measurement(const std::string& factor,
                                                  int dim,
                                                  const std::string& label) {
  return ReferenceMeasurement{factor, {label}, {Matrix::Identity(dim, dim)}};
}

/// Pinching map: sum_l (P_l (x) 1) rho (P_l (x) 1) over the measurement's
/// factor. Trace preserving, idempotent, and the identity on states already
/// block diagonal with respect to the family.
inline DensityOperator dephase(const DensityOperator& rho,
                               const ReferenceMeasurement& m) {
  const Space& sp = rho.space();
  m.validate_for(sp);
  Matrix out = Matrix::Zero(sp.dim(), sp.dim());
  for (const auto& p : m.projectors) {
    Matrix embedded = embed_operator(sp, {m.factor}, p);
    out += embedded * rho.matrix() * embedded;
  }
  return rho.normalized() ? DensityOperator(sp, out)
                          : DensityOperator::unnormalized(sp, out);
}

/// Reference-controlled operation sum_l P_l (x) U_l with the reference slot
/// first. Requires exactly one operator per outcome label; all operators must
/// share one target dimension. Unitary whenever every U_l is.
inline Matrix controlled_unitary(const ReferenceMeasurement& m,
                                 const std::map<std::string, Matrix>& ops) {
  if (m.labels.empty()) throw SchemaError("controlled: no outcome labels");
  if (ops.size() != m.labels.size())
    throw SchemaError("controlled: need exactly one operator per label");
  const int rdim = static_cast<int>(m.projectors.front().rows());
  int tdim = -1;
  for (const auto& [label, u] : ops) {
    m.label_index(label);  // throws on labels outside the family
    if (u.rows() != u.cols())
      throw SchemaError("controlled: target operator is not square");
    if (tdim < 0) tdim = static_cast<int>(u.rows());
    if (u.rows() != tdim)
      throw SchemaError("controlled: target operators differ in dimension");
  }
  m.validate(rdim);
  Matrix out = Matrix::Zero(rdim * tdim, rdim * tdim);
  for (std::size_t i = 0; i < m.labels.size(); ++i)
    out += kron(m.projectors[i], ops.at(m.labels[i]));
  return out;
}

}  // namespace relab
