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

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <relab/scenarios.hpp>

// JSON interchange for lab/context/event triples. The format is documented
// in docs/scenario-file.md; its version tag is kScenarioSchemaVersion.
//
// Error contract: structural problems (missing/mistyped fields, bad matrix
// shapes, unknown labels) raise SchemaError whose message starts with the
// path of the offending field, e.g. "event[0].branches.t1". Numeric
// violations (a non-PSD state, an incomplete projector family, a
// non-trace-preserving continuation) surface as InvariantError from the same
// validators the in-memory types use.

namespace relab {

inline constexpr const char* kScenarioSchemaVersion = "1";

namespace detail_io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] inline void fail(const std::string& path,
                              const std::string& what) {
  throw SchemaError((path.empty() ? std::string("(root)") : path) + ": " +
                    what);
}

inline std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

inline std::string at(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

inline const json& require(const json& obj, const std::string& key,
                           const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing required field");
  return *it;
}

inline std::string require_string(const json& obj, const std::string& key,
                                  const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

inline int require_int(const json& obj, const std::string& key,
                       const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<int>();
}

inline Complex complex_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    fail(path, "expected a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty())
    fail(path, "expected a non-empty array of matrix rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    fail(at(path, 0), "expected a non-empty matrix row");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<int>(rows), static_cast<int>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array()) fail(at(path, r), "expected a matrix row");
    if (j[r].size() != cols) fail(at(path, r), "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<int>(r), static_cast<int>(c)) =
          complex_from_json(j[r][c], at(at(path, r), c));
  }
  return m;
}

inline Matrix square_matrix_from_json(const json& j, int dim,
                                      const std::string& path) {
  Matrix m = matrix_from_json(j, path);
  if (m.rows() != dim || m.cols() != dim)
    fail(path, "expected a " + std::to_string(dim) + "x" +
                   std::to_string(dim) + " matrix, got " +
                   std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  return m;
}

inline ojson matrix_to_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (int r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Space space_from_json(const json& doc) {
  const json& jspace = require(doc, "space", "");
  const json& jfactors = require(jspace, "factors", "space");
  if (!jfactors.is_array() || jfactors.empty())
    fail("space.factors", "expected a non-empty array");
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < jfactors.size(); ++i) {
    const std::string fpath = at("space.factors", i);
    const json& jf = jfactors[i];
    Factor f;
    f.label = require_string(jf, "label", fpath);
    f.dim = require_int(jf, "dim", fpath);
    if (jf.contains("sectors")) {
      const json& js = jf["sectors"];
      if (!js.is_array()) fail(join(fpath, "sectors"), "expected an array");
      for (std::size_t k = 0; k < js.size(); ++k) {
        const std::string spath = at(join(fpath, "sectors"), k);
        Sector s;
        s.label = require_string(js[k], "label", spath);
        s.dim = require_int(js[k], "dim", spath);
        f.sectors.push_back(std::move(s));
      }
    }
    factors.push_back(std::move(f));
  }
  try {
    return Space(std::move(factors));
  } catch (const SchemaError& e) {
    fail("space", e.what());
  }
}

}  // namespace detail_io

/// Rebuilds a lab/context/event triple from its JSON document. Structural
/// faults throw SchemaError with the offending field path; numeric faults
/// propagate as InvariantError from the type validators.
inline ScenarioModel scenario_from_json(const nlohmann::json& doc) {
  using detail_io::at;
  using detail_io::fail;
  using detail_io::join;
  using detail_io::require;

  if (!doc.is_object()) fail("", "expected a JSON object");
  const std::string version =
      detail_io::require_string(doc, "schema_version", "");
  if (version != kScenarioSchemaVersion)
    fail("schema_version", "unsupported version '" + version +
                               "' (expected '" +
                               std::string(kScenarioSchemaVersion) + "')");

  const Space sp = detail_io::space_from_json(doc);
  auto has_factor = [&](const std::string& label) {
    for (const auto& f : sp.factors())
      if (f.label == label) return true;
    return false;
  };

  // Reference measurement.
  const nlohmann::json& jref = require(doc, "reference", "");
  ReferenceMeasurement ref;
  ref.factor = detail_io::require_string(jref, "factor", "reference");
  if (!has_factor(ref.factor))
    fail("reference.factor", "unknown factor label '" + ref.factor + "'");
  const int rdim = sp.factor(ref.factor).dim;
  const nlohmann::json& jlabels = require(jref, "labels", "reference");
  if (!jlabels.is_array() || jlabels.empty())
    fail("reference.labels", "expected a non-empty array");
  for (std::size_t i = 0; i < jlabels.size(); ++i) {
    if (!jlabels[i].is_string())
      fail(at("reference.labels", i), "expected a string");
    ref.labels.push_back(jlabels[i].get<std::string>());
  }
  const nlohmann::json& jprojs = require(jref, "projectors", "reference");
  if (!jprojs.is_array() || jprojs.size() != ref.labels.size())
    fail("reference.projectors",
         "expected one projector per outcome label (" +
             std::to_string(ref.labels.size()) + ")");
  for (std::size_t i = 0; i < jprojs.size(); ++i)
    ref.projectors.push_back(detail_io::square_matrix_from_json(
        jprojs[i], rdim, at("reference.projectors", i)));

  // Targets.
  const nlohmann::json& jtargets = require(doc, "targets", "");
  if (!jtargets.is_array() || jtargets.empty())
    fail("targets", "expected a non-empty array");
  std::vector<std::string> targets;
  int tdim = 1;
  for (std::size_t i = 0; i < jtargets.size(); ++i) {
    if (!jtargets[i].is_string()) fail(at("targets", i), "expected a string");
    const std::string t = jtargets[i].get<std::string>();
    if (!has_factor(t))
      fail(at("targets", i), "unknown factor label '" + t + "'");
    if (t == ref.factor)
      fail(at("targets", i), "target coincides with the reference factor");
    if (std::find(targets.begin(), targets.end(), t) != targets.end())
      fail(at("targets", i), "duplicate target '" + t + "'");
    targets.push_back(t);
    tdim *= sp.factor(t).dim;
  }

  // Optional advisory environment label.
  if (doc.contains("environment")) {
    if (!doc["environment"].is_string())
      fail("environment", "expected a string");
    const std::string env = doc["environment"].get<std::string>();
    if (!has_factor(env))
      fail("environment", "unknown factor label '" + env + "'");
    if (env == ref.factor ||
        std::find(targets.begin(), targets.end(), env) != targets.end())
      fail("environment", "environment overlaps the reference or a target");
  }

  // Initial state (validated by the density-operator constructor).
  const Matrix rho = detail_io::square_matrix_from_json(
      require(doc, "initial_state", ""), sp.dim(), "initial_state");

  // Event steps.
  const nlohmann::json& jevent = require(doc, "event", "");
  if (!jevent.is_array()) fail("event", "expected an array of steps");
  Event event;
  for (std::size_t i = 0; i < jevent.size(); ++i) {
    const std::string spath = at("event", i);
    const nlohmann::json& js = jevent[i];
    const std::string type = detail_io::require_string(js, "type", spath);
    if (type == "conditioned") {
      const nlohmann::json& jb = require(js, "branches", spath);
      if (!jb.is_object() || jb.empty())
        fail(join(spath, "branches"),
             "expected an object mapping outcome labels to operator lists");
      ConditionedStep step;
      for (auto it = jb.begin(); it != jb.end(); ++it) {
        const std::string bpath = join(join(spath, "branches"), it.key());
        if (std::find(ref.labels.begin(), ref.labels.end(), it.key()) ==
            ref.labels.end())
          fail(bpath, "unknown reference outcome label");
        if (!it.value().is_array() || it.value().empty())
          fail(bpath, "expected a non-empty array of operators");
        std::vector<Matrix> ops;
        for (std::size_t k = 0; k < it.value().size(); ++k)
          ops.push_back(detail_io::square_matrix_from_json(
              it.value()[k], tdim, at(bpath, k)));
        step.branches.emplace(it.key(), std::move(ops));
      }
      event.steps.push_back(std::move(step));
    } else if (type == "reference_dynamics") {
      event.steps.push_back(ReferenceDynamics{detail_io::square_matrix_from_json(
          require(js, "unitary", spath), rdim, join(spath, "unitary"))});
    } else {
      fail(join(spath, "type"),
           "unknown step type '" + type +
               "' (expected 'conditioned' or 'reference_dynamics')");
    }
  }

  // Optional continuation as a Kraus list on the full space.
  std::optional<KrausChannel> continuation;
  if (doc.contains("continuation")) {
    const nlohmann::json& jc = doc["continuation"];
    if (!jc.is_array() || jc.empty())
      fail("continuation", "expected a non-empty array of Kraus operators");
    std::vector<Matrix> kraus;
    for (std::size_t i = 0; i < jc.size(); ++i)
      kraus.push_back(detail_io::square_matrix_from_json(
          jc[i], sp.dim(), at("continuation", i)));
    continuation.emplace(sp, sp, std::move(kraus));
  }

  Lab lab{std::move(ref), std::move(targets)};
  Context ctx{DensityOperator(sp, rho), std::move(continuation)};
  // Enforce the in-memory numeric invariants at load time: projector-family
  // axioms (completeness first among them) and continuation trace
  // preservation. Violations surface as InvariantError.
  detail::validate_context(lab, ctx);
  return ScenarioModel{std::move(lab), std::move(ctx), std::move(event)};
}

/// Serializes a lab/context/event triple to the documented JSON format.
/// Round trip through scenario_from_json reproduces verdicts bit for bit:
/// JSON doubles use shortest-exact formatting.
inline nlohmann::ordered_json scenario_to_json(const ScenarioModel& m) {
  using detail_io::matrix_to_json;
  using ojson = nlohmann::ordered_json;

  const Space& sp = m.context.initial.space();
  ojson doc;
  doc["schema_version"] = kScenarioSchemaVersion;

  ojson factors = ojson::array();
  for (const auto& f : sp.factors()) {
    ojson jf;
    jf["label"] = f.label;
    jf["dim"] = f.dim;
    if (!f.sectors.empty()) {
      ojson js = ojson::array();
      for (const auto& s : f.sectors)
        js.push_back(ojson{{"label", s.label}, {"dim", s.dim}});
      jf["sectors"] = std::move(js);
    }
    factors.push_back(std::move(jf));
  }
  doc["space"] = ojson{{"factors", std::move(factors)}};

  ojson projs = ojson::array();
  for (const auto& p : m.lab.reference.projectors)
    projs.push_back(matrix_to_json(p));
  doc["reference"] = ojson{{"factor", m.lab.reference.factor},
                           {"labels", m.lab.reference.labels},
                           {"projectors", std::move(projs)}};
  doc["targets"] = m.lab.targets;
  doc["initial_state"] = matrix_to_json(m.context.initial.matrix());

  ojson steps = ojson::array();
  for (const auto& step : m.event.steps) {
    if (const auto* cond = std::get_if<ConditionedStep>(&step)) {
      ojson branches;
      for (const auto& [label, ops] : cond->branches) {
        ojson list = ojson::array();
        for (const auto& op : ops) list.push_back(matrix_to_json(op));
        branches[label] = std::move(list);
      }
      steps.push_back(
          ojson{{"type", "conditioned"}, {"branches", std::move(branches)}});
    } else {
      const auto& dyn = std::get<ReferenceDynamics>(step);
      steps.push_back(ojson{{"type", "reference_dynamics"},
                            {"unitary", matrix_to_json(dyn.unitary)}});
    }
  }
  doc["event"] = std::move(steps);

  if (m.context.continuation) {
    ojson kraus = ojson::array();
    for (const auto& k : m.context.continuation->kraus())
      kraus.push_back(matrix_to_json(k));
    doc["continuation"] = std::move(kraus);
  }
  return doc;
}

/// Parses a scenario file from disk. A file that is not valid JSON at all is
/// reported as SchemaError carrying the parser's position message.
inline ScenarioModel load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("scenario file '" + path + "' is not valid JSON: " +
                      e.what());
  }
  return scenario_from_json(doc);
}

inline void save_scenario_file(const ScenarioModel& m,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open '" + path + "' for writing");
  out << scenario_to_json(m).dump(2) << "\n";
}

}  // namespace relab
