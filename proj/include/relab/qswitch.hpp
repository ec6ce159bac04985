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

#include <vector>

#include <relab/linalg.hpp>

namespace relab {

/// Extends an operation on the message sector by a fixed point on a one
/// dimensional vacuum sector appended after it: U (+) 1.
inline Matrix vacuum_extended(const Matrix& u) {
  if (u.rows() != u.cols())
    throw SchemaError("switch: operation is not square");
  const int d = static_cast<int>(u.rows());
  Matrix out = Matrix::Zero(d + 1, d + 1);
  out.topLeftCorner(d, d) = u;
  out(d, d) = 1.0;
  return out;
}

/// Control qubit deciding the order of two operations on one target:
/// |0><0| (x) U_B U_A + |1><1| (x) U_A U_B, control slot first.
inline Matrix qs_coarse(const Matrix& u_a, const Matrix& u_b) {
  if (u_a.rows() != u_a.cols() || u_b.rows() != u_b.cols() ||
      u_a.rows() != u_b.rows())
    throw SchemaError("switch: operations must be square and share one "
                      "dimension");
  if (!is_unitary(u_a, tol::unitary) || !is_unitary(u_b, tol::unitary))
    throw InvariantError("switch: operations must be unitary");
  const int d = static_cast<int>(u_a.rows());
  Matrix out = Matrix::Zero(2 * d, 2 * d);
  out.block(0, 0, d, d) = u_b * u_a;
  out.block(d, d, d, d) = u_a * u_b;
  return out;
}

/// Isometry from control (x) target into two message-or-vacuum slots:
/// |0>|psi> goes to |psi>|vac> and |1>|psi> to |vac>|psi>. Each output slot
/// has dimension d + 1 with the vacuum on the last basis vector.
inline Matrix w_sup(int d) {
  if (d < 1) throw SchemaError("switch: nonpositive target dimension");
  const int slot = d + 1;
  Matrix w = Matrix::Zero(slot * slot, 2 * d);
  for (int t = 0; t < d; ++t) {
    w(t * slot + d, t) = 1.0;      // |t, vac> from |0, t>
    w(d * slot + t, d + t) = 1.0;  // |vac, t> from |1, t>
  }
  return w;
}

/// Permutation taking A (x) B to B (x) A for dimensions a and b.
inline Matrix shuffle_permutation(int a, int b) {
  if (a < 1 || b < 1) throw SchemaError("shuffle: nonpositive dimension");
  Matrix p = Matrix::Zero(a * b, a * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) p(j * a + i, i * b + j) = 1.0;
  return p;
}

/// One lab's operation in the fine-grained picture: fires on the message or
/// vacuum slot when its clock shows the given reading and idles otherwise.
/// Slot order is particle first, clock second.
inline Matrix fine_grained_op(const Matrix& u, int reading,
                              int clock_dim = 2) {
  if (u.rows() != u.cols())
    throw SchemaError("switch: operation is not square");
  if (clock_dim < 1 || reading < 0 || reading >= clock_dim)
    throw SchemaError("switch: clock reading out of range");
  if (!is_unitary(u, tol::unitary))
    throw InvariantError("switch: operation must be unitary");
  const int d = static_cast<int>(u.rows());
  Matrix at = projector(basis_vector(clock_dim, reading));
  return kron(vacuum_extended(u), at) +
         kron(Matrix::Identity(d + 1, d + 1),
              Matrix::Identity(clock_dim, clock_dim) - at);
}

/// The switch compiled from local pieces: route into two slots, apply the
/// first-reading operations, exchange the slots, apply the second-reading
/// operations, and route back. Equals
/// |0><0| (x) U_B2 U_A1 + |1><1| (x) U_A2 U_B1 on control (x) target.
inline Matrix fine_grained_circuit(const Matrix& u_a1, const Matrix& u_a2,
                                   const Matrix& u_b1, const Matrix& u_b2) {
  const Matrix* ops[] = {&u_a1, &u_a2, &u_b1, &u_b2};
  for (const Matrix* u : ops) {
    if (u->rows() != u->cols() || u->rows() != u_a1.rows())
      throw SchemaError("switch: operations must be square and share one "
                        "dimension");
    if (!is_unitary(*u, tol::unitary))
      throw InvariantError("switch: operations must be unitary");
  }
  const int d = static_cast<int>(u_a1.rows());
  const Matrix w = w_sup(d);
  const Matrix swap = shuffle_permutation(d + 1, d + 1);
  const Matrix first = kron(vacuum_extended(u_a1), vacuum_extended(u_b1));
  const Matrix second = kron(vacuum_extended(u_a2), vacuum_extended(u_b2));
  const Matrix inner = swap * second * swap * first;

  const int big = (d + 1) * (d + 1);
  Matrix leak = (Matrix::Identity(big, big) - w * w.adjoint()) * inner * w;
  if (max_abs(leak) > tol::kraus)
    throw InvariantError(
        "switch: circuit leaks outside the superposed routing range");
  return w.adjoint() * inner * w;
}

/// Operation conditioned on a two-valued time register, target slot first:
/// U_1 (x) |0><0| + U_2 (x) |1><1|.
inline Matrix effective_op(const Matrix& u1, const Matrix& u2) {
  if (u1.rows() != u1.cols() || u2.rows() != u2.cols() ||
      u1.rows() != u2.rows())
    throw SchemaError("switch: operations must be square and share one "
                      "dimension");
  return kron(u1, projector(basis_vector(2, 0))) +
         kron(u2, projector(basis_vector(2, 1)));
}

/// Operator on control (x) target that never mixes the control's direct-sum
/// sectors. Construction rejects support across two different sectors.
class SectoredOperator {
 public:
  SectoredOperator(std::vector<int> control_sectors, int target_dim,
                   Matrix op)
      : sectors_(std::move(control_sectors)),
        target_dim_(target_dim),
        op_(std::move(op)) {
    if (sectors_.empty()) throw SchemaError("sectored: no control sectors");
    int cdim = 0;
    for (int s : sectors_) {
      if (s < 1) throw SchemaError("sectored: nonpositive sector dimension");
      cdim += s;
    }
    if (target_dim_ < 1)
      throw SchemaError("sectored: nonpositive target dimension");
    if (op_.rows() != cdim * target_dim_ || op_.cols() != op_.rows())
      throw SchemaError(
          "sectored: operator shape does not match the sector partition");
    std::vector<int> sector_of;
    sector_of.reserve(cdim);
    for (std::size_t k = 0; k < sectors_.size(); ++k)
      for (int i = 0; i < sectors_[k]; ++i)
        sector_of.push_back(static_cast<int>(k));
    for (Eigen::Index r = 0; r < op_.rows(); ++r)
      for (Eigen::Index c = 0; c < op_.cols(); ++c)
        if (sector_of[r / target_dim_] != sector_of[c / target_dim_] &&
            std::abs(op_(r, c)) > tol::projector)
          throw InvariantError("sectored: operator mixes control sectors");
  }

  const Matrix& matrix() const { return op_; }
  const std::vector<int>& control_sectors() const { return sectors_; }
  int target_dim() const { return target_dim_; }

  /// Diagonal block carried by the k-th control sector.
  Matrix block(int k) const {
    int off = 0;
    for (int j = 0; j < k; ++j) off += sectors_.at(j);
    const int size = sectors_.at(k) * target_dim_;
    return op_.block(off * target_dim_, off * target_dim_, size, size);
  }

 private:
  std::vector<int> sectors_;
  int target_dim_ = 0;
  Matrix op_;
};

/// Operation conditioned on a routing control, control slot first:
/// |0><0| (x) U_1 + |1><1| (x) U_2, packaged with its sector structure.
inline SectoredOperator routed_op(const Matrix& u1, const Matrix& u2) {
  if (u1.rows() != u1.cols() || u2.rows() != u2.cols() ||
      u1.rows() != u2.rows())
    throw SchemaError("switch: operations must be square and share one "
                      "dimension");
  const int d = static_cast<int>(u1.rows());
  Matrix op = kron(projector(basis_vector(2, 0)), u1) +
              kron(projector(basis_vector(2, 1)), u2);
  return SectoredOperator({1, 1}, d, std::move(op));
}

/// Isometry from target (x) two-valued time register into the two
/// message-or-vacuum slots: |i, 0> goes to |i, vac> and |i, 1> to |vac, i>.
inline Matrix one_particle_iso(int d) {
  if (d < 1) throw SchemaError("switch: nonpositive target dimension");
  const int slot = d + 1;
  Matrix v = Matrix::Zero(slot * slot, 2 * d);
  for (int i = 0; i < d; ++i) {
    v(i * slot + d, 2 * i) = 1.0;      // |i, vac> from |i, 0>
    v(d * slot + i, 2 * i + 1) = 1.0;  // |vac, i> from |i, 1>
  }
  return v;
}

/// Pulls a two-slot operator back onto target (x) time register through the
/// one particle isometry. Amplitude the operator moves out of the one
/// particle sector is flagged, never silently projected away.
inline Matrix to_effective(const Matrix& two_slot_op, int d) {
  const Matrix v = one_particle_iso(d);
  if (two_slot_op.rows() != v.rows() || two_slot_op.cols() != v.rows())
    throw SchemaError("switch: operator shape does not match the two slots");
  const int big = static_cast<int>(v.rows());
  Matrix leak =
      (Matrix::Identity(big, big) - v * v.adjoint()) * two_slot_op * v;
  if (max_abs(leak) > tol::kraus)
    throw InvariantError(
        "switch: operator leaks out of the one particle sector");
  return v.adjoint() * two_slot_op * v;
}

/// Control entangled with two two-valued time registers:
/// alpha |0, t1, t1> + beta |1, t2, t2>.
inline Vector ref_entangled_control(Complex alpha, Complex beta) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm2 - 1.0) > tol::trace_one)
    throw InvariantError("switch: control amplitudes are not normalized");
  Vector w = Vector::Zero(8);
  w(0) = alpha;
  w(7) = beta;
  return w;
}

}  // namespace relab
