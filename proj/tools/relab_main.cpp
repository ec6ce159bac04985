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

// relab - command line front end.
//
// Subcommands:
//   table     compute a verdict table and compare it with the expected labels
//   scenario  analyze one supported lab/context combination
//   check     validate a scenario file and report its verdicts
//   verify    run the full verification suite
//
// Exit codes: 0 success, 1 verdict mismatch or failed verification,
// 2 usage or schema error, 3 numeric invariant violation.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <relab/scenario_io.hpp>
#include <relab/scenarios.hpp>
#include <relab/verify.hpp>

namespace {

using nlohmann::ordered_json;
using namespace relab;

struct RunConfig {
  double tolerance = 1e-9;
  int d = 2;
  std::uint64_t seed = 20260814ULL;
  std::string format = "markdown";
  bool strict_local = false;
};

ScenarioConfig scenario_config(const RunConfig& rc) {
  ScenarioConfig cfg;
  cfg.d = rc.d;
  cfg.seed = rc.seed;
  return cfg;
}

CheckOptions check_options(const RunConfig& rc) {
  CheckOptions opt;
  opt.tolerance = rc.tolerance;
  opt.strict_local = rc.strict_local;
  return opt;
}

ordered_json settings_json(const RunConfig& rc) {
  return ordered_json{{"tolerance", rc.tolerance},
                      {"seed", rc.seed},
                      {"d", rc.d},
                      {"strict_local", rc.strict_local}};
}

std::string settings_line(const RunConfig& rc) {
  std::ostringstream os;
  os << "tolerance=" << rc.tolerance << " seed=" << rc.seed << " d=" << rc.d
     << " strict-local=" << (rc.strict_local ? "on" : "off");
  return os.str();
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

ordered_json branches_json(const std::vector<BranchReport>& branches) {
  ordered_json arr = ordered_json::array();
  for (const auto& b : branches)
    arr.push_back(ordered_json{{"label", b.label},
                               {"weight", b.weight},
                               {"distance", b.distance}});
  return arr;
}

ordered_json row_json(const VerdictRow& row) {
  return ordered_json{{"scenario", row.scenario},
                      {"reference", row.reference},
                      {"event", row.event},
                      {"measurable", row.measurable_label},
                      {"measurability_distance", row.measurability_distance},
                      {"localisation", row.localisation_label},
                      {"tolerance", row.tolerance},
                      {"branches", branches_json(row.branches)}};
}

void print_row_markdown_header(std::ostream& os) {
  os << "| Scenario | Reference | Event | Relatively measurable | "
        "Localisation | Distance |\n"
     << "|---|---|---|---|---|---|\n";
}

void print_row_markdown(std::ostream& os, const VerdictRow& row) {
  os << "| " << md_cell(row.scenario) << " | " << md_cell(row.reference)
     << " | " << md_cell(row.event) << " | " << row.measurable_label << " | "
     << md_cell(row.localisation_label) << " | "
     << sci(row.measurability_distance) << " |\n";
}

void print_branches_markdown(std::ostream& os,
                             const std::vector<BranchReport>& branches) {
  if (branches.empty()) return;
  os << "\n| Branch | Weight | Distance to full output |\n|---|---|---|\n";
  for (const auto& b : branches)
    os << "| " << b.label << " | " << sci(b.weight) << " | "
       << sci(b.distance) << " |\n";
}

void print_supported_matrix(std::ostream& os) {
  os << "supported combinations (scenario / agent / reference / events):\n";
  for (const auto& row : supported_matrix()) {
    os << "  " << scenario_token(row.scenario) << " / "
       << agent_token(row.agent) << " / " << reference_token(row.reference)
       << " /";
    for (const auto& e : row.events) os << " " << event_token(e);
    os << "\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_table(const RunConfig& rc, const std::string& which) {
  const ScenarioConfig cfg = scenario_config(rc);
  const CheckOptions opt = check_options(rc);
  std::vector<std::string> diffs;

  if (which == "main") {
    const std::vector<VerdictRow> rows = table_main(cfg, opt);
    const auto& want = expected_main_table();
    for (std::size_t i = 0; i < rows.size() && i < want.size(); ++i) {
      auto diff = [&](const char* field, const std::string& got,
                      const std::string& exp) {
        if (got != exp)
          diffs.push_back("row " + std::to_string(i + 1) + " " + field +
                          ": got '" + got + "', expected '" + exp + "'");
      };
      diff("scenario", rows[i].scenario, want[i].scenario);
      diff("reference", rows[i].reference, want[i].reference);
      diff("event", rows[i].event, want[i].event);
      diff("measurable", rows[i].measurable_label, want[i].measurable);
      diff("localisation", rows[i].localisation_label, want[i].localisation);
    }
    if (rows.size() != want.size())
      diffs.push_back("expected " + std::to_string(want.size()) +
                      " rows, got " + std::to_string(rows.size()));

    if (rc.format == "json") {
      ordered_json doc;
      doc["command"] = "table";
      doc["which"] = "main";
      doc["settings"] = settings_json(rc);
      doc["rows"] = ordered_json::array();
      for (const auto& r : rows) doc["rows"].push_back(row_json(r));
      doc["matches_expected"] = diffs.empty();
      doc["diffs"] = diffs;
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "# Verdict table (" << settings_line(rc) << ")\n\n";
      print_row_markdown_header(std::cout);
      for (const auto& r : rows) print_row_markdown(std::cout, r);
      if (!diffs.empty()) {
        std::cout << "\n## Differences from the expected labels\n";
        for (const auto& d : diffs) std::cout << "- " << d << "\n";
      } else {
        std::cout << "\nAll 7 rows match the expected labels.\n";
      }
    }
    return diffs.empty() ? 0 : 1;
  }

  // Classification grid.
  const AppendixTable t = appendix_table(cfg, opt);
  const auto& want = expected_appendix_grid();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (t.rows[i].cells[j].cls != want[i][j])
        diffs.push_back("cell (" + t.rows[i].description + ", " +
                        t.columns[j] + "): got " +
                        to_string(t.rows[i].cells[j].cls) + ", expected " +
                        to_string(want[i][j]));

  if (rc.format == "json") {
    ordered_json doc;
    doc["command"] = "table";
    doc["which"] = "appendix";
    doc["settings"] = settings_json(rc);
    doc["columns"] = t.columns;
    doc["rows"] = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json cells = ordered_json::array();
      for (const auto& c : row.cells)
        cells.push_back(ordered_json{{"class", to_string(c.cls)},
                                     {"witness", c.witness}});
      doc["rows"].push_back(ordered_json{{"description", row.description},
                                         {"cells", cells}});
    }
    doc["matches_expected"] = diffs.empty();
    doc["diffs"] = diffs;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "# Classification grid (" << settings_line(rc) << ")\n\n"
              << "| Description | " << t.columns[0] << " | " << t.columns[1]
              << " | " << t.columns[2] << " |\n|---|---|---|---|\n";
    for (const auto& row : t.rows) {
      std::cout << "| " << row.description << " |";
      for (const auto& c : row.cells)
        std::cout << " " << to_string(c.cls) << " (" << c.witness << ") |";
      std::cout << "\n";
    }
    if (!diffs.empty()) {
      std::cout << "\n## Differences from the expected classes\n";
      for (const auto& d : diffs) std::cout << "- " << d << "\n";
    } else {
      std::cout << "\nAll 9 cells match the expected classes.\n";
    }
  }
  return diffs.empty() ? 0 : 1;
}

int cmd_scenario(const RunConfig& rc, const std::string& name,
                 const std::string& agent_name, const std::string& ref_name,
                 const std::string& event_name,
                 const std::string& export_path) {
  auto scenario = parse_scenario(name);
  auto agent = parse_agent(agent_name);
  auto reference = parse_reference(ref_name);
  auto event = parse_event(event_name);
  if (!scenario || !agent || !reference || !event) {
    std::cerr << "unknown ";
    if (!scenario) std::cerr << "scenario '" << name << "'";
    else if (!agent) std::cerr << "agent '" << agent_name << "'";
    else if (!reference) std::cerr << "reference '" << ref_name << "'";
    else std::cerr << "event '" << event_name << "'";
    std::cerr << "\n";
    print_supported_matrix(std::cerr);
    return 2;
  }
  const LabChoice choice{*agent, *reference, *event};
  if (!is_supported(*scenario, choice)) {
    std::cerr << "unsupported combination: " << scenario_token(*scenario)
              << " / " << agent_token(*agent) << " / "
              << reference_token(*reference) << " / " << event_token(*event)
              << "\n";
    print_supported_matrix(std::cerr);
    return 2;
  }

  const ScenarioConfig cfg = scenario_config(rc);
  const CheckOptions opt = check_options(rc);

  if (!export_path.empty())
    save_scenario_file(build_context(*scenario, choice, cfg), export_path);

  const bool slit = (*scenario == ScenarioId::DoubleSlit);
  VerdictRow row = slit ? double_slit(*agent, cfg, opt).row
                        : analyze(*scenario, choice, cfg, opt);

  if (rc.format == "json") {
    ordered_json doc;
    doc["command"] = "scenario";
    doc["scenario"] = scenario_token(*scenario);
    doc["agent"] = agent_token(*agent);
    doc["reference"] = reference_token(*reference);
    doc["event"] = event_token(*event);
    doc["settings"] = settings_json(rc);
    doc["row"] = row_json(row);
    if (slit) {
      DoubleSlitReport rep = double_slit(*agent, cfg, opt);
      doc["interference"] = ordered_json{
          {"baseline", rep.baseline}, {"with_phase_kick", rep.intervened}};
    }
    if (!export_path.empty()) doc["exported_to"] = export_path;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "# Scenario " << scenario_token(*scenario) << " / "
              << agent_token(*agent) << " / " << reference_token(*reference)
              << " / " << event_token(*event) << " (" << settings_line(rc)
              << ")\n\n";
    print_row_markdown_header(std::cout);
    print_row_markdown(std::cout, row);
    print_branches_markdown(std::cout, row.branches);
    if (slit) {
      DoubleSlitReport rep = double_slit(*agent, cfg, opt);
      std::cout << "\n| Readout | Left | Right |\n|---|---|---|\n"
                << "| baseline | " << sci(rep.baseline[0]) << " | "
                << sci(rep.baseline[1]) << " |\n"
                << "| with phase kick | " << sci(rep.intervened[0]) << " | "
                << sci(rep.intervened[1]) << " |\n";
    }
    if (!export_path.empty())
      std::cout << "\nScenario file written to " << export_path << "\n";
  }
  return 0;
}

int cmd_check(const RunConfig& rc, const std::string& file) {
  const ScenarioModel m = load_scenario_file(file);
  const CheckOptions opt = check_options(rc);
  const MeasurabilityVerdict mv =
      check_relative_measurability(m.lab, m.context, m.event, opt);
  const LocalisationVerdict lv =
      check_localisation(m.lab, m.context, m.event, opt);
  const std::string loc_label = format_localisation(m.lab, lv);

  if (rc.format == "json") {
    ordered_json doc;
    doc["command"] = "check";
    doc["file"] = file;
    doc["settings"] = settings_json(rc);
    doc["reference_factor"] = m.lab.reference.factor;
    doc["targets"] = m.lab.targets;
    doc["measurable"] = mv.measurable ? "Yes" : "No";
    doc["measurability_distance"] = mv.distance;
    doc["localisation"] = loc_label;
    doc["localised_labels"] = lv.localised_labels;
    doc["branches"] = branches_json(lv.branches);
    doc["tolerance"] = opt.tolerance;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "# Check " << file << " (" << settings_line(rc) << ")\n\n"
              << "- reference factor: " << m.lab.reference.factor << "\n"
              << "- relatively measurable: "
              << (mv.measurable ? "Yes" : "No") << " (distance "
              << sci(mv.distance) << ", tolerance " << sci(opt.tolerance)
              << ")\n"
              << "- localisation: " << loc_label << "\n";
    print_branches_markdown(std::cout, lv.branches);
  }
  return 0;
}

int cmd_verify(const RunConfig& rc) {
  const VerifyReport rep = run_verify(scenario_config(rc), check_options(rc));

  if (rc.format == "json") {
    // Timing is excluded so reruns with the same settings are byte
    // identical.
    ordered_json doc;
    doc["command"] = "verify";
    doc["settings"] = settings_json(rc);
    doc["criteria"] = ordered_json::array();
    for (const auto& c : rep.criteria)
      doc["criteria"].push_back(ordered_json{{"id", c.id},
                                             {"title", c.title},
                                             {"passed", c.passed},
                                             {"cases", c.cases},
                                             {"max_deviation", c.max_deviation},
                                             {"tolerance", c.tolerance},
                                             {"detail", c.detail}});
    doc["all_passed"] = rep.all_passed;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "# Verification (" << settings_line(rc) << ")\n\n";
    for (const auto& c : rep.criteria) {
      std::cout << "[" << (c.passed ? "PASS" : "FAIL") << "] " << c.id
                << ": " << c.title << " — " << c.cases << " cases, max "
                << "deviation " << sci(c.max_deviation) << " (tolerance "
                << sci(c.tolerance) << "), " << sci(c.seconds) << " s";
      if (!c.detail.empty()) std::cout << " — " << c.detail;
      std::cout << "\n";
    }
    std::cout << "\ntotal " << sci(rep.total_seconds) << " s (budget "
              << rep.total_budget_seconds << " s): "
              << (rep.all_passed ? "all criteria passed"
                                 : "FAILURES present")
              << "\n";
  }
  return rep.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relab - relative measurability and localisation toolkit"};
  app.require_subcommand(1);

  RunConfig rc;
  auto add_common = [&rc](CLI::App* cmd) {
    cmd->add_option("--tolerance", rc.tolerance,
                    "verdict tolerance, in (0, 1e-3]")
        ->envname("RELAB_TOLERANCE")
        ->check(CLI::Range(1e-300, 1e-3).description("(0, 1e-3]"));
    cmd->add_option("--d", rc.d, "target dimension, in [2, 4]")
        ->envname("RELAB_D")
        ->check(CLI::Range(2, 4));
    cmd->add_option("--seed", rc.seed, "seed for the agents' unitaries")
        ->envname("RELAB_SEED");
    cmd->add_option("--format", rc.format, "output format")
        ->envname("RELAB_FORMAT")
        ->check(CLI::IsMember({"json", "markdown"}));
    cmd->add_flag("--strict-local", rc.strict_local,
                  "compare right after the event, ignoring the continuation")
        ->envname("RELAB_STRICT_LOCAL");
  };

  std::string which = "main";
  CLI::App* table = app.add_subcommand(
      "table", "compute a verdict table and compare with expected labels");
  table->add_option("--which", which, "main or appendix")
      ->check(CLI::IsMember({"main", "appendix"}));
  add_common(table);

  std::string name, agent_name = "alice", ref_name = "x", event_name = "A";
  std::string export_path;
  CLI::App* scenario =
      app.add_subcommand("scenario", "analyze one supported combination");
  scenario->add_option("--name", name, "qs_ct, qs_qt, qs_g, or double-slit")
      ->required();
  scenario->add_option("--agent", agent_name, "alice, claire, or quinn");
  scenario->add_option("--reference", ref_name,
                       "t, x, xt, a, tau, singleton, or t_arr");
  scenario->add_option("--event", event_name, "A, A1, or A2");
  scenario->add_option("--export", export_path,
                       "also write the built scenario file here");
  add_common(scenario);

  std::string file;
  CLI::App* check =
      app.add_subcommand("check", "validate a scenario file and report "
                                  "verdicts");
  check->add_option("--file", file, "path to a scenario JSON file")
      ->required();
  add_common(check);

  CLI::App* verify =
      app.add_subcommand("verify", "run the full verification suite");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (table->parsed()) return cmd_table(rc, which);
    if (scenario->parsed())
      return cmd_scenario(rc, name, agent_name, ref_name, event_name,
                          export_path);
    if (check->parsed()) return cmd_check(rc, file);
    if (verify->parsed()) return cmd_verify(rc);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
