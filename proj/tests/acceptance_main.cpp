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

// Acceptance gate: runs every verification criterion at its stated tolerance
// and prints one line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>

#include <relab/verify.hpp>

int main() {
  const relab::VerifyReport rep = relab::run_verify();

  for (const auto& c : rep.criteria) {
    std::printf("[%s] %-19s %5d cases  max deviation %.3e (tol %.1e)  "
                "%6.3f s / %.1f s budget",
                c.passed ? "PASS" : "FAIL", c.id.c_str(), c.cases,
                c.max_deviation, c.tolerance, c.seconds, c.budget_seconds);
    if (!c.detail.empty()) std::printf("  -- %s", c.detail.c_str());
    std::printf("\n");
  }
  const bool time_ok = rep.total_seconds <= rep.total_budget_seconds;
  std::printf("[%s] %-19s total %.2f s (budget %.0f s, single-threaded)\n",
              time_ok ? "PASS" : "FAIL", "full-run-time", rep.total_seconds,
              rep.total_budget_seconds);
  std::printf("%s\n", rep.all_passed ? "ALL CRITERIA PASSED"
                                     : "CRITERIA FAILED");
  return rep.all_passed ? 0 : 1;
}
