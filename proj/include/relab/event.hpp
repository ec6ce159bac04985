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
#include <string>
#include <variant>
#include <vector>

#include <relab/channel.hpp>
#include <relab/measurement.hpp>

namespace relab {

/// One reference-conditioned operation. Each outcome label maps to a channel
/// in Kraus form acting on the product of the target factors in the order
/// the surrounding lab lists them. Labels missing from the map act as the
/// identity, and every listed branch must be trace preserving on its own so
/// the conditioned whole stays a channel.
struct ConditionedStep {
  std::map<std::string, std::vector<Matrix>> branches;
};

inline ConditionedStep conditioned_unitaries(
    std::map<std::string, Matrix> ops) {
  ConditionedStep step;
  for (auto& [label, u] : ops) step.branches[label] = {std::move(u)};
  return step;
}

/// Closed dynamics of the reference factor itself, such as a clock ticking
/// forward between two conditioned operations.
struct ReferenceDynamics {
  Matrix unitary;
};

using EventStep = std::variant<ConditionedStep, ReferenceDynamics>;

/// An operation as a finite sequence of steps, applied in listed order.
struct Event {
  std::vector<EventStep> steps;
};

/// Compiles an event into one channel on the full space. Conditioned steps
/// become sum_l P_l (x) K^l_m with the branches aligned by kraus index and
/// the shorter ones padded with zeros; that sum is trace preserving exactly
/// when every branch is.
inline KrausChannel event_channel(const Space& sp,
                                  const ReferenceMeasurement& reference,
                                  const std::vector<std::string>& targets,
                                  const Event& event) {
  reference.validate_for(sp);
  const int rdim = sp.factor(reference.factor).dim;

  std::set<std::string> seen;
  std::vector<std::string> on{reference.factor};
  int tdim = 1;
  for (const auto& t : targets) {
    if (t == reference.factor)
      throw SchemaError("event: reference factor listed among targets");
    if (!seen.insert(t).second)
      throw SchemaError("event: duplicate target factor '" + t + "'");
    tdim *= sp.factor(t).dim;  // throws on unknown labels
    on.push_back(t);
  }

  auto compile_conditioned = [&](const ConditionedStep& step) {
    std::size_t width = 1;
    for (const auto& [label, ks] : step.branches) {
      reference.label_index(label);  // throws on labels outside the family
      if (ks.empty())
        throw SchemaError("event: conditioned branch '" + label +
                          "' has no kraus operators");
      Matrix total = Matrix::Zero(tdim, tdim);
      for (const auto& k : ks) {
        if (k.rows() != tdim || k.cols() != tdim)
          throw SchemaError("event: branch '" + label +
                            "' operator shape does not match the targets");
        total += k.adjoint() * k;
      }
      if (max_abs(total - Matrix::Identity(tdim, tdim)) > tol::kraus)
        throw InvariantError("event: conditioned branch '" + label +
                             "' is not trace preserving");
      width = std::max(width, ks.size());
    }
    std::vector<Matrix> big;
    big.reserve(width);
    for (std::size_t m = 0; m < width; ++m) {
      Matrix op = Matrix::Zero(rdim * tdim, rdim * tdim);
      for (std::size_t l = 0; l < reference.labels.size(); ++l) {
        auto it = step.branches.find(reference.labels[l]);
        if (it == step.branches.end()) {
          if (m == 0)
            op += kron(reference.projectors[l], Matrix::Identity(tdim, tdim));
          continue;
        }
        if (m < it->second.size())
          op += kron(reference.projectors[l], it->second[m]);
      }
      big.push_back(embed_operator(sp, on, op));
    }
    return KrausChannel(sp, sp, std::move(big));
  };

  auto compile_dynamics = [&](const ReferenceDynamics& step) {
    if (step.unitary.rows() != rdim || step.unitary.cols() != rdim)
      throw SchemaError(
          "event: reference dynamics shape does not match the reference "
          "factor");
    if (!is_unitary(step.unitary, tol::unitary))
      throw InvariantError("event: reference dynamics is not unitary");
    return KrausChannel(
        sp, sp, {embed_operator(sp, {reference.factor}, step.unitary)});
  };

  KrausChannel total = identity_channel(sp);
  for (const auto& step : event.steps) {
    KrausChannel next = std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ConditionedStep>)
            return compile_conditioned(s);
          else
            return compile_dynamics(s);
        },
        step);
    total = compose(next, total);
  }
  return total;
}

}  // namespace relab
