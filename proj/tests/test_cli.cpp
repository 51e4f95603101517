// Copyright 2026 The netbargain Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "netbargain/netbargain.hpp"

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout; stderr is discarded.
CliRun cli(const std::string& args) {
  const std::string cmd = std::string(NETBARGAIN_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string mk(const std::string& name) {
  return std::string(NETBARGAIN_MARKETS_DIR) + "/" + name + ".json";
}

netbargain::Json json_of(const CliRun& r) { return netbargain::Json::parse(r.out); }

}  // namespace

TEST(Cli, SolveFourLine) {
  const CliRun r = cli("--json-only solve " + mk("four_line"));
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["command"], "solve");
  EXPECT_EQ(j["optimal_surplus"], "2");
  EXPECT_EQ(j["compromise"]["payoffs"]["1"], "1/2");
  EXPECT_EQ(j["compromise"]["payoffs"]["4"], "1/2");
}

TEST(Cli, SolveEmptyAndThreeClass) {
  const CliRun e = cli("--json-only solve " + mk("empty"));
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(json_of(e)["optimal_surplus"], "0");
  EXPECT_TRUE(json_of(e)["compromise"]["matching"].empty());
  const CliRun f = cli("--json-only solve " + mk("three_class"));
  ASSERT_EQ(f.code, 0);
  const auto j = json_of(f);
  EXPECT_EQ(j["optimal_surplus"], "6");
  for (const char* k : {"P5", "P6", "P7", "P8"}) EXPECT_EQ(j["compromise"]["payoffs"][k], "1/2");
  for (const auto& w : json_of(cli("--json-only solve " + mk("four_line")))["witnesses"]) {
    EXPECT_EQ(w["delta"], "0");
  }
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(cli("check " + mk("four_line") + " " + mk("four_line_half")).code, 0);
  EXPECT_EQ(cli("check " + mk("four_line") + " " + mk("four_line_third")).code, 1);
  EXPECT_EQ(cli("check --concept balanced " + mk("four_line") + " " + mk("four_line_third")).code, 0);
  EXPECT_EQ(cli("check --concept balanced " + mk("four_line") + " " + mk("four_line_half")).code, 1);
  EXPECT_EQ(cli("check --concept stable " + mk("four_line") + " " + mk("four_line_third")).code, 0);
  EXPECT_EQ(cli("check " + mk("three_line") + " " + mk("three_line_stable")).code, 0);
  EXPECT_EQ(cli("check --concept nonsense " + mk("four_line") + " " + mk("four_line_half")).code, 2);
}

TEST(Cli, CheckFlagsTheUnjustifiedLink) {
  const CliRun r = cli("--json-only check " + mk("four_line") + " " + mk("four_line_third"));
  ASSERT_EQ(r.code, 1);
  const auto link = json_of(r)["report"]["links"][0];
  EXPECT_EQ(link["link"], (netbargain::Json{"1", "2"}));
  EXPECT_FALSE(link["justifiable"].get<bool>());
}

TEST(Cli, InfeasibleOutcomeIsRejected) {
  const CliRun r = cli("--json-only check " + mk("four_line") + " " + mk("four_line_infeasible"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json_of(r)["error"]["code"], "InfeasibleOutcome");
}

TEST(Cli, Decompose) {
  const auto f = json_of(cli("--json-only decompose " + mk("three_class")))["decomposition"];
  EXPECT_EQ(f["essential_links"], netbargain::Json::parse(R"([["P5","P6"],["P7","P8"]])"));
  const auto sq = json_of(cli("--json-only decompose " + mk("square")))["decomposition"];
  EXPECT_EQ(sq["elementary_components"].size(), 1u);
  EXPECT_TRUE(sq["essential_links"].empty());
  const auto line = json_of(cli("--json-only decompose " + mk("four_line")))["decomposition"];
  EXPECT_EQ(line["essential_links"], netbargain::Json::parse(R"([["1","2"],["3","4"]])"));
}

TEST(Cli, DecomposeNeedsUnitSurplus) {
  EXPECT_EQ(cli("decompose " + mk("three_class")).code, 0);
  const CliRun r = cli("--json-only decompose " + mk("weighted_three_line"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json_of(r)["error"]["code"], "NotUnitSurplus");
  EXPECT_EQ(cli("characterize " + mk("square")).code, 0);
}

TEST(Cli, Balanced) {
  const CliRun r = cli("--json-only balanced " + mk("four_line"));
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json_of(r)["result"]["converged"].get<bool>());
  const auto one = json_of(cli("--json-only balanced " + mk("single_link")))["result"];
  EXPECT_EQ(one["iterations"], 1);
  EXPECT_EQ(one["outcome"]["payoffs"]["b"], "1/2");
  const auto t = json_of(cli("--json-only balanced " + mk("three_line")))["result"];
  // Buyers first, then sellers.
  EXPECT_EQ(t["outcome"]["payoffs"], netbargain::Json::parse(R"({"1":"0","3":"0","2":"1"})"));
  EXPECT_EQ(cli("balanced --max-iter 3 " + mk("four_line")).code, 1);
  EXPECT_EQ(cli("balanced --tol 1e-6 " + mk("four_line")).code, 0);
  EXPECT_EQ(cli("balanced --tol banana " + mk("four_line")).code, 2);
  EXPECT_EQ(cli("balanced --tol -1 " + mk("four_line")).code, 2);
}

TEST(Cli, BoundsEssentialWitness) {
  EXPECT_EQ(cli("core-bounds " + mk("three_line")).code, 0);
  EXPECT_EQ(cli("essential " + mk("square")).code, 0);
  const CliRun w = cli("--json-only witness " + mk("square") + " 1 2");
  ASSERT_EQ(w.code, 0);
  EXPECT_EQ(json_of(w)["witness"]["alpha"], "1/2");
  EXPECT_EQ(cli("witness " + mk("four_line") + " 3 2").code, 2);
  EXPECT_EQ(cli("witness " + mk("four_line") + " 9 2").code, 2);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(cli("solve /nonexistent/market.json").code, 2);
  const CliRun r = cli("--json-only check " + mk("four_line") + " " + mk("square"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(cli("--frobnicate solve " + mk("four_line")).code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, Crosscheck) {
  const CliRun r = cli("--json-only oracle-crosscheck --trials 5 --seed 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json_of(r)["summary"]["failures"].empty());
  EXPECT_EQ(cli("oracle-crosscheck --trials 2 --unit-surplus").code, 0);
  EXPECT_EQ(cli("oracle-crosscheck --max-side 9").code, 2);
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::string& args : {"solve " + mk("three_class"), "decompose " + mk("three_class"),
                                 std::string("oracle-crosscheck --trials 4 --seed 99")}) {
    const CliRun a = cli(args), b = cli(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << args;
  }
}
