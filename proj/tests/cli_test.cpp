/*
 *  Copyright (C) 2026  The dlrc Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dlrc/parser.hpp"
#include "nlohmann/json.hpp"

namespace dlrc::cli {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun dlrc(std::vector<std::string> args) {
  args.insert(args.begin(), "dlrc");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(DLRC_TEST_DATA_DIR) + "/" + name;
}

nlohmann::json json(const CliRun& r) { return nlohmann::json::parse(r.out); }

TEST(CliTest, QueryVerdicts) {
  CliRun r = dlrc({"query", data("vip.dkb"),
                "T(VIP and Tall) <= atleast 2 HasMarried . Person ?"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "IN-CLOSURE");

  r = dlrc({"--json", "query", data("actor_comic.dkb"),
            "T(Actor and Comic) <= Charming ?"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json(r)["verdict"], "NOT-IN-CLOSURE");
  EXPECT_GT(json(r)["entailment_calls"].get<int>(), 0);
}

TEST(CliTest, CheckInconsistent) {
  CliRun r = dlrc({"check", data("self_contradiction.dkb")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "INCONSISTENT");
  EXPECT_EQ(dlrc({"check", data("vip.dkb")}).code, 0);
}

TEST(CliTest, RankTable) {
  CliRun r = dlrc({"ranks", data("vip.dkb"), "--json", "--concept",
                "VIP and atmost 1 HasMarried . Person"});
  ASSERT_EQ(r.code, 0);
  const auto j = json(r);
  std::map<std::string, int> ranks;
  for (const auto& row : j["ranks"]) ranks[row["concept"]] = row["rank"];
  EXPECT_EQ(ranks["Person"], 0);
  EXPECT_EQ(ranks["VIP"], 1);
  EXPECT_EQ(ranks["VIP and atmost 1 HasMarried . Person"], 2);
}

TEST(CliTest, ClosureABox) {
  CliRun r = dlrc({"closure-abox", data("vip.dkb"),
                "marco : atmost 1 HasMarried . Person ?", "--json",
                "--show-assignments"});
  EXPECT_EQ(r.code, 0);
  const auto j = json(r);
  EXPECT_EQ(j["verdict"], "IN-CLOSURE-ABOX");
  ASSERT_EQ(j["assignments"].size(), 1u);
  EXPECT_EQ(j["assignments"][0]["demi"], 1);
  EXPECT_EQ(j["assignments"][0]["marco"], 0);

  r = dlrc({"closure-abox", data("inconsistent.dkb"), "a : B ?"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "INCONSISTENT");
}

TEST(CliTest, ParseErrorsCarrySpans) {
  CliRun r = dlrc({"query", data("vip.dkb"), "T(VIP <= Tall ?"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("<query>:1:7: error:"), std::string::npos);

  const std::string bad =
      (std::filesystem::temp_directory_path() / "dlrc_cli_bad.dkb").string();
  {
    std::ofstream f(bad);
    f << "A <= B\nB <= and C\n";
  }
  r = dlrc({"--json", "check", bad});
  EXPECT_EQ(r.code, 2);
  const auto j = json(r);
  EXPECT_EQ(j["verdict"], "ERROR");
  EXPECT_EQ(j["error"]["line"], 2);
  EXPECT_EQ(j["error"]["column"], 6);
  std::filesystem::remove(bad);
}

TEST(CliTest, InputErrors) {
  EXPECT_EQ(dlrc({"check", data("missing.dkb")}).code, 2);
  EXPECT_EQ(dlrc({"frobnicate"}).code, 2);
  EXPECT_EQ(dlrc({}).code, 2);
  EXPECT_EQ(dlrc({"query", data("vip.dkb"), "demi : VIP ?"}).code, 2);
  EXPECT_EQ(dlrc({"closure-abox", data("vip.dkb"), "zed : VIP ?"}).code, 2);
  EXPECT_EQ(dlrc({"oracle", data("vip.dkb"), "--max-domain", "0"}).code, 2);
  EXPECT_EQ(dlrc({"--help"}).code, 0);
}

TEST(CliTest, JsonIsDeterministic) {
  const std::vector<std::vector<std::string>> runs = {
      {"--json", "ranks", data("vip.dkb")},
      {"--json", "closure-abox", data("penguins.dkb"), "tweety : Fly ?",
       "--show-assignments"},
      {"--json", "check", data("penguins.dkb")},
      {"--json", "oracle", data("actor.dkb"), "--max-domain", "8"},
      {"--json", "dump-ei", data("actor_comic.dkb")},
  };
  for (const auto& args : runs) {
    const CliRun a = dlrc(args);
    const CliRun b = dlrc(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(json(a)["exit_code"], a.code);
  }
}

TEST(CliTest, Oracle) {
  CliRun r = dlrc({"--json", "oracle", data("actor.dkb"), "--query",
                "T(Actor and Comic) <= Charming ?", "--max-domain", "8",
                "--max-rank", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json(r)["verdict"], "TRUE");
  EXPECT_EQ(json(r)["max_domain"], 8);

  r = dlrc({"--json", "oracle", data("actor.dkb"), "--query",
            "T(Actor and Comic) <= Charming ?"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json(r)["verdict"], "UNDECIDED");
  EXPECT_EQ(json(r)["max_domain"], 4);

  r = dlrc({"query", data("actor.dkb"), "T(Actor and Comic) <= Charming ?",
            "--cross-check", "--max-domain", "8", "--json"});
  EXPECT_EQ(json(r)["oracle"]["agrees"], true);
}

TEST(CliTest, EncodingParsesBack) {
  CliRun r = dlrc({"--json", "encode", data("vip.dkb")});
  ASSERT_EQ(r.code, 0);
  ParseOptions opts;
  opts.allow_reserved = true;
  const KnowledgeBase enc =
      parseKB(json(r)["encoding"].get<std::string>(), opts);
  EXPECT_GT(enc.tbox().size(), 4u);
  EXPECT_FALSE(enc.hasTypicality());

  r = dlrc({"--json", "encode", data("actor.dkb"), "--query",
            "T(Actor and Comic) <= Charming ?"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NO_THROW(parseKB(json(r)["encoding"].get<std::string>(), opts));

  r = dlrc({"--json", "check", data("vip.dkb"), "--dump-encoding"});
  EXPECT_TRUE(json(r).contains("encoding"));
}

}  // namespace
}  // namespace dlrc::cli
