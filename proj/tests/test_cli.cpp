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

// End-to-end tests of the command line binary: exit codes, report content,
// determinism, and the schema/invariant error split.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args) {
  const std::string out_path = "/tmp/relab_cli_out.txt";
  const std::string err_path = "/tmp/relab_cli_err.txt";
  const std::string cmd = std::string(RELAB_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("both tables match their expected labels and exit zero") {
  RunResult main_table = run_cli("table --which main");
  INFO(main_table.out << main_table.err);
  CHECK(main_table.code == 0);
  CHECK(contains(main_table.out, "All 7 rows match"));
  CHECK(contains(main_table.out, "t1/t2-localised"));

  RunResult appendix = run_cli("table --which appendix");
  INFO(appendix.out << appendix.err);
  CHECK(appendix.code == 0);
  CHECK(contains(appendix.out, "All 9 cells match"));
  CHECK(contains(appendix.out, "Unresolved (open question: follow-up work)"));
}

TEST_CASE("table reports include the run settings, not bare verdicts") {
  RunResult r = run_cli("table --which main --seed 11 --format json");
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["settings"]["seed"] == 11);
  CHECK(doc["settings"]["d"] == 2);
  CHECK(doc["settings"]["tolerance"].get<double>() == 1e-9);
  for (const auto& row : doc["rows"]) {
    CHECK(row.contains("measurability_distance"));
    CHECK(row.contains("tolerance"));
  }
}

TEST_CASE("scenario reports verdicts with witnessed distances") {
  RunResult r =
      run_cli("scenario --name qs_ct --reference t --event A --format json");
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["row"]["measurable"] == "Yes");
  CHECK(doc["row"]["localisation"] == "non-localised");
  CHECK(doc["row"]["measurability_distance"].get<double>() == 0.0);
  REQUIRE(doc["row"]["branches"].size() == 2);

  // The embedded two-slit experimenter is not relatively measurable, and the
  // phase kick flips the readout.
  RunResult quinn =
      run_cli("scenario --name double-slit --agent quinn --format json");
  REQUIRE(quinn.code == 0);
  auto qdoc = nlohmann::json::parse(quinn.out);
  CHECK(qdoc["row"]["measurable"] == "No");
  CHECK(qdoc["row"]["measurability_distance"].get<double>() >= 0.1);
  CHECK(qdoc["interference"]["baseline"][0].get<double>() ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(qdoc["interference"]["with_phase_kick"][1].get<double>() ==
        Catch::Approx(1.0).margin(1e-12));

  // The external agent analyzed in the trajectory-superposed protocol
  // reproduces the first classical-trajectory row.
  RunResult claire = run_cli(
      "scenario --name qs_qt --reference t --agent claire --format json");
  REQUIRE(claire.code == 0);
  auto cdoc = nlohmann::json::parse(claire.out);
  CHECK(cdoc["row"]["measurable"] == "Yes");
  CHECK(cdoc["row"]["localisation"] == "non-localised");
}

TEST_CASE("unsupported combinations exit 2 and print the supported matrix") {
  RunResult r = run_cli("scenario --name qs_qt --reference tau --event A2");
  CHECK(r.code == 2);
  CHECK(contains(r.err, "unsupported combination"));
  CHECK(contains(r.err, "supported combinations"));
  CHECK(contains(r.err, "double-slit / quinn / x / A"));

  RunResult bad = run_cli("scenario --name qs_xx --reference t");
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "unknown scenario"));
}

TEST_CASE("invalid flags exit 2") {
  CHECK(run_cli("table --d 9").code == 2);
  CHECK(run_cli("table --tolerance 0.5").code == 2);
  CHECK(run_cli("table --tolerance 0").code == 2);
  CHECK(run_cli("table --format yaml").code == 2);
  CHECK(run_cli("bogus").code == 2);
  CHECK(run_cli("").code == 2);
}

TEST_CASE("check validates scenario files and splits the error classes") {
  const std::string good = "/tmp/relab_cli_scenario.json";
  RunResult exported = run_cli("scenario --name qs_qt --reference a --export " +
                               good + " --format json");
  REQUIRE(exported.code == 0);

  RunResult ok = run_cli("check --file " + good + " --format json");
  REQUIRE(ok.code == 0);
  auto doc = nlohmann::json::parse(ok.out);
  CHECK(doc["measurable"] == "No");
  CHECK(doc["measurability_distance"].get<double>() ==
        Catch::Approx(0.5).margin(1e-12));

  // Numeric invariant violation: projectors scaled to 0.9 of the identity.
  auto fdoc = nlohmann::json::parse(slurp(good));
  for (auto& p : fdoc["reference"]["projectors"])
    for (auto& row : p)
      for (auto& entry : row)
        entry[0] = entry[0].get<double>() * 0.9;
  const std::string incomplete = "/tmp/relab_cli_incomplete.json";
  {
    std::ofstream f(incomplete);
    f << fdoc.dump();
  }
  RunResult inv = run_cli("check --file " + incomplete);
  CHECK(inv.code == 3);
  CHECK(contains(inv.err, "complete"));

  // Structural violation: a branch keyed by a label the reference lacks.
  auto sdoc = nlohmann::json::parse(slurp(good));
  sdoc["event"][0]["branches"]["t9"] = sdoc["event"][0]["branches"]["a1"];
  const std::string mislabeled = "/tmp/relab_cli_mislabeled.json";
  {
    std::ofstream f(mislabeled);
    f << sdoc.dump();
  }
  RunResult sch = run_cli("check --file " + mislabeled);
  CHECK(sch.code == 2);
  CHECK(contains(sch.err, "event[0].branches.t9"));

  RunResult missing = run_cli("check --file /tmp/relab_cli_nothere.json");
  CHECK(missing.code == 2);

  std::remove(good.c_str());
  std::remove(incomplete.c_str());
  std::remove(mislabeled.c_str());
}

TEST_CASE("strict-local comparison flips the entangled-pointer verdict") {
  RunResult loose = run_cli("scenario --name qs_qt --reference xt --format json");
  RunResult strict = run_cli(
      "scenario --name qs_qt --reference xt --strict-local --format json");
  REQUIRE(loose.code == 0);
  REQUIRE(strict.code == 0);
  auto ldoc = nlohmann::json::parse(loose.out);
  auto sdoc = nlohmann::json::parse(strict.out);
  CHECK(ldoc["row"]["measurable"] == "No");
  CHECK(sdoc["row"]["measurable"] == "Yes");
  CHECK(sdoc["settings"]["strict_local"] == true);
}

TEST_CASE("verify passes, and identical seeds give byte-identical JSON") {
  RunResult a = run_cli("verify --seed 7 --format json");
  RunResult b = run_cli("verify --seed 7 --format json");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["all_passed"] == true);
  CHECK(doc["criteria"].size() == 9);
  for (const auto& c : doc["criteria"]) {
    CHECK(c["passed"] == true);
    CHECK_FALSE(c.contains("seconds"));  // timing would break determinism
  }
}

TEST_CASE("verify reruns the dimension-parametric criteria at d 3") {
  RunResult r = run_cli("verify --d 3 --format json");
  REQUIRE(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["settings"]["d"] == 3);
  CHECK(doc["all_passed"] == true);
  bool chain_at_3 = false;
  for (const auto& c : doc["criteria"])
    if (c["id"] == "equivalence-chain" &&
        contains(c["detail"].get<std::string>(), "d=3"))
      chain_at_3 = true;
  CHECK(chain_at_3);
}
