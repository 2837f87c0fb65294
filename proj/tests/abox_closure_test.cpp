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

#include <algorithm>
#include <cmath>

#include "dlrc/abox_closure.hpp"
#include "dlrc/error.hpp"
#include "support/kb_generator.hpp"

namespace dlrc {
namespace {

KnowledgeBase dataKb(const std::string& name) {
  return parseKB(readFile(std::string(DLRC_TEST_DATA_DIR) + "/" + name));
}

AssertionQuery as(const std::string& text) {
  return std::get<AssertionQuery>(parseQuery(text));
}

bool contains(const MuSet& mu, const std::string& c, const std::string& a) {
  const ConceptAssertion want{parseConcept(c), a};
  return std::find(mu.assertions.begin(), mu.assertions.end(), want) !=
         mu.assertions.end();
}

RankAssignment assign(std::map<std::string, int> m) { return {std::move(m)}; }

TEST(ABoxClosureTest, VipMu) {
  ABoxClosure cl(dataKb("vip.dkb"));
  MuSet mu1 = cl.mu(assign({{"demi", 1}, {"marco", 0}}));
  EXPECT_TRUE(contains(mu1, "not VIP or atleast 2 HasMarried . Person", "demi"));
  EXPECT_TRUE(contains(mu1, "not Person or atmost 1 HasMarried . Person", "marco"));
  EXPECT_FALSE(contains(mu1, "not Person or atmost 1 HasMarried . Person", "demi"));
  MuSet mu0 = cl.mu(assign({{"demi", 0}, {"marco", 0}}));
  EXPECT_TRUE(contains(mu0, "not Person or atmost 1 HasMarried . Person", "demi"));
  EXPECT_TRUE(contains(mu0, "not VIP or atleast 2 HasMarried . Person", "demi"));
}

TEST(ABoxClosureTest, VipAssignments) {
  ABoxClosure cl(dataKb("vip.dkb"));
  EXPECT_FALSE(cl.isConsistent(assign({{"demi", 0}, {"marco", 0}})));
  EXPECT_TRUE(cl.isConsistent(assign({{"demi", 1}, {"marco", 0}})));
  const auto& min = cl.minimalAssignments();
  ASSERT_EQ(min.size(), 1u);
  EXPECT_EQ(min[0], assign({{"demi", 1}, {"marco", 0}}));
}

TEST(ABoxClosureTest, VipClosure) {
  KnowledgeBase kb = dataKb("vip.dkb");
  EXPECT_TRUE(inClosureABox(kb, as("demi : atleast 2 HasMarried . Person ?")));
  EXPECT_TRUE(inClosureABox(kb, as("marco : atmost 1 HasMarried . Person ?")));
  EXPECT_TRUE(inClosureABox(kb, as("marco : top ?")));
  EXPECT_FALSE(inClosureABox(kb, as("marco : VIP ?")));
  EXPECT_FALSE(inClosureABox(kb, as("demi : atmost 1 HasMarried . Person ?")));
}

TEST(ABoxClosureTest, SingleIndividual) {
  ABoxClosure cl(parseKB("T(A) <= B\na : A\n"));
  ASSERT_EQ(cl.minimalAssignments().size(), 1u);
  EXPECT_EQ(cl.minimalAssignments()[0], assign({{"a", 0}}));
  EXPECT_TRUE(cl.entails(as("a : B ?")));
}

TEST(ABoxClosureTest, NoDefaults) {
  ABoxClosure cl(parseKB("a : A\nb : B\n"));
  EXPECT_TRUE(cl.mu(assign({{"a", 0}, {"b", 0}})).assertions.empty());
  ASSERT_EQ(cl.minimalAssignments().size(), 1u);
  EXPECT_EQ(cl.minimalAssignments()[0], assign({{"a", 0}, {"b", 0}}));
}

TEST(ABoxClosureTest, Penguins) {
  KnowledgeBase kb = dataKb("penguins.dkb");
  ABoxClosure cl(kb, {parseConcept("Fly")});
  EXPECT_TRUE(cl.entails(as("polly : Fly ?")));
  EXPECT_TRUE(cl.entails(as("tweety : not Fly ?")));
  EXPECT_FALSE(cl.entails(as("tweety : Fly ?")));
  EXPECT_TRUE(cl.entails(as("tweety : some hasWing . Wing ?")));
}

TEST(ABoxClosureTest, Errors) {
  EXPECT_THROW(inClosureABox(dataKb("inconsistent.dkb"), as("a : B ?")),
               InconsistentKbError);
  EXPECT_THROW(inClosureABox(dataKb("vip.dkb"), as("zed : VIP ?")), KbError);
  try {
    inClosureABox(dataKb("inconsistent.dkb"), as("a : B ?"));
  } catch (const InconsistentKbError& e) {
    EXPECT_STREQ(e.what(), "KB inconsistent");
  }
}

TEST(ABoxClosureTest, MuIsAntitone) {
  test::Rng rng(41);
  test::FamilyParams p;
  p.individuals = 2;
  p.max_assertions = 3;
  for (int i = 0; i < 20; ++i) {
    KnowledgeBase kb = test::familyKb(rng, p);
    ABoxClosure cl(kb);
    const int n = cl.tbox().table().fixpointIndex;
    for (const std::string& a : kb.individuals()) {
      RankAssignment lo;
      for (const std::string& b : kb.individuals()) lo.ranks[b] = 0;
      for (int r = 0; r < n; ++r) {
        RankAssignment hi = lo;
        hi.ranks[a] = r + 1;
        lo.ranks[a] = r;
        MuSet big = cl.mu(lo);
        for (const ConceptAssertion& x : cl.mu(hi).assertions) {
          EXPECT_NE(std::find(big.assertions.begin(), big.assertions.end(), x),
                    big.assertions.end());
        }
      }
    }
  }
}

TEST(ABoxClosureTest, EnumerationBound) {
  test::Rng rng(43);
  test::FamilyParams p;
  p.individuals = 3;
  p.max_assertions = 4;
  p.typical_assertions = true;
  for (int i = 0; i < 15; ++i) {
    KnowledgeBase kb = test::familyKb(rng, p);
    ABoxClosure cl(kb);
    try {
      cl.minimalAssignments();
    } catch (const InconsistentKbError&) {
    }
    const double n = cl.tbox().table().fixpointIndex;
    const double m = static_cast<double>(kb.individuals().size());
    EXPECT_LE(cl.stats().assignments_checked + cl.stats().assignments_skipped,
              std::pow(n + 1, m));
  }
}

}  // namespace
}  // namespace dlrc
