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

#include <optional>
#include <string>
#include <vector>

#include <relab/event.hpp>

namespace relab {

/// An agent's laboratory: the reference measurement that defines which
/// outcomes the agent can condition on, and the ordered target factors its
/// operations act on.
struct Lab {
  ReferenceMeasurement reference;
  std::vector<std::string> targets;
};

/// Everything around the lab a verdict may depend on: the joint preparation
/// and the continuation run downstream of the event. The reference factor is
/// discarded after the continuation, so only what leaks into the remaining
/// factors counts.
struct Context {
  DensityOperator initial;
  std::optional<KrausChannel> continuation;
};

struct CheckOptions {
  double tolerance = 1e-9;
  /// Compare right after the event, ignoring the continuation.
  bool strict_local = false;
};

struct MeasurabilityVerdict {
  bool measurable = false;
  double distance = 0.0;
  double tolerance = 0.0;
};

enum class LocalisationKind { Localised, DegenerateLocalised, NonLocalised };

struct BranchReport {
  std::string label;
  double weight = 0.0;    // trace surviving the two-sided projection
  double distance = 0.0;  // trace distance from the branch to the full output
};

struct LocalisationVerdict {
  LocalisationKind kind = LocalisationKind::NonLocalised;
  std::vector<std::string> localised_labels;
  std::vector<BranchReport> branches;
  double tolerance = 0.0;
};

namespace detail {

inline void validate_context(const Lab& lab, const Context& ctx) {
  const Space& sp = ctx.initial.space();
  lab.reference.validate_for(sp);
  if (ctx.continuation) {
    if (!(ctx.continuation->in_space() == sp) ||
        !(ctx.continuation->out_space() == sp))
      throw SchemaError(
          "context: continuation does not act on the preparation space");
    if (!ctx.continuation->is_trace_preserving())
      throw InvariantError("context: continuation is not trace preserving");
  }
}

}  // namespace detail

/// Whether the event's outcome record could be read off from everything
/// except the reference: runs the event on the preparation and on its
/// reference-dephased twin, pushes both through the continuation, discards
/// the reference factor, and compares what is left. Identical remainders mean
/// the conditioning left no usable record, so the outcome is a relative fact.
inline MeasurabilityVerdict check_relative_measurability(
    const Lab& lab, const Context& ctx, const Event& event,
    const CheckOptions& opt = {}) {
  detail::validate_context(lab, ctx);
  const Space& sp = ctx.initial.space();
  KrausChannel ev = event_channel(sp, lab.reference, lab.targets, event);

  DensityOperator direct = ev.apply(ctx.initial);
  DensityOperator pinched = ev.apply(dephase(ctx.initial, lab.reference));
  if (!opt.strict_local && ctx.continuation) {
    direct = ctx.continuation->apply(direct);
    pinched = ctx.continuation->apply(pinched);
  }

  std::vector<std::string> keep;
  for (const auto& l : sp.labels())
    if (l != lab.reference.factor) keep.push_back(l);
  const double dist = trace_distance(partial_trace(direct, keep),
                                     partial_trace(pinched, keep));
  return MeasurabilityVerdict{dist <= opt.tolerance, dist, opt.tolerance};
}

/// Which reference outcomes carry the event: sandwiches the event between one
/// outcome projector on both sides, pushes the surviving branch through the
/// continuation, discards the reference, and compares with the uninhibited
/// run settled the same way. A branch that reproduces the full output pins
/// the event to that outcome.
inline LocalisationVerdict check_localisation(const Lab& lab,
                                              const Context& ctx,
                                              const Event& event,
                                              const CheckOptions& opt = {}) {
  detail::validate_context(lab, ctx);
  const Space& sp = ctx.initial.space();
  KrausChannel ev = event_channel(sp, lab.reference, lab.targets, event);

  std::vector<std::string> keep;
  for (const auto& l : sp.labels())
    if (l != lab.reference.factor) keep.push_back(l);
  auto settle = [&](Matrix m) {
    if (!opt.strict_local && ctx.continuation)
      m = ctx.continuation->apply_raw(m);
    return partial_trace(sp, m, keep);
  };
  const Matrix full = settle(ev.apply_raw(ctx.initial.matrix()));

  LocalisationVerdict out;
  out.tolerance = opt.tolerance;
  for (std::size_t l = 0; l < lab.reference.labels.size(); ++l) {
    Matrix p = embed_operator(sp, {lab.reference.factor},
                              lab.reference.projectors[l]);
    Matrix branch =
        settle(p * ev.apply_raw(p * ctx.initial.matrix() * p) * p);
    BranchReport report;
    report.label = lab.reference.labels[l];
    report.weight = branch.trace().real();
    report.distance = trace_distance(branch, full);
    if (report.distance <= opt.tolerance)
      out.localised_labels.push_back(report.label);
    out.branches.push_back(std::move(report));
  }
  if (out.localised_labels.size() == 1)
    out.kind = LocalisationKind::Localised;
  else if (out.localised_labels.size() > 1)
    out.kind = LocalisationKind::DegenerateLocalised;
  else
    out.kind = LocalisationKind::NonLocalised;
  return out;
}

}  // namespace relab
