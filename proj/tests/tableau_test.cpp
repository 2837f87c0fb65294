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

#include <sstream>

#include "dlrc/error.hpp"
#include "dlrc/parser.hpp"
#include "dlrc/tableau.hpp"
#include "support/kb_generator.hpp"

namespace dlrc {
namespace {

bool sat(const std::string& text) {
  return isSatisfiable(parseKB(text, ParseOptions{true})).satisfiable;
}

bool sat(const std::string& text, const std::string& c) {
  return isSatisfiableWithRoots(parseKB(text, ParseOptions{true}),
                                {parseConcept(c, ParseOptions{true})})
      .satisfiable;
}

bool entails(const std::string& kb, const std::string& lhs,
             const std::string& rhs) {
  return entailsInclusion(parseKB(kb), parseConcept(lhs), parseConcept(rhs));
}

TEST(TableauTest, PropositionalClash) {
  EXPECT_FALSE(sat("A <= not A\na : A\n"));
  EXPECT_TRUE(sat("A <= not A\na : B\n"));
  EXPECT_TRUE(sat(""));
  EXPECT_FALSE(sat("top <= bot\n"));
  EXPECT_FALSE(sat("", "A and not A"));
  EXPECT_TRUE(sat("", "A or not A"));
}

TEST(TableauTest, NumberRestrictionClash) {
  EXPECT_FALSE(sat("role R\n", "atleast 2 R . A and atmost 1 R . top"));
  EXPECT_TRUE(sat("role R\n", "atleast 2 R . A and atmost 2 R . top"));
  EXPECT_FALSE(sat("role R\n",
                   "atleast 3 R . top and atmost 1 R . A and atmost 1 R . not A"));
  EXPECT_TRUE(sat("role R\n",
                  "atleast 2 R . top and atmost 1 R . A and atmost 1 R . not A"));
}

TEST(TableauTest, MergingRespectsQualifiedRestrictions) {
  // Two A-successors and one B-successor, at most two successors in total:
  // the B-successor has to be one of the A ones.
  EXPECT_TRUE(sat("role R\n",
                  "atleast 2 R . A and some R . B and atmost 2 R . top"));
  EXPECT_FALSE(sat("role R\nA <= not B\n",
                   "atleast 2 R . A and some R . B and atmost 2 R . top"));
}

TEST(TableauTest, InverseFunctionalNoFiniteModel) {
  // Satisfiable, but every model is infinite: blocking must kick in.
  Verdict v = isSatisfiable(parseKB(
      "role R\nA <= some R . A\ntop <= atmost 1 inv(R) . top\n"
      "a : A and not some inv(R) . top\n"));
  EXPECT_TRUE(v.satisfiable);
  EXPECT_FALSE(v.witness.has_value());
}

TEST(TableauTest, InverseRolesPropagateBackwards) {
  EXPECT_TRUE(entails("role R\n", "some R . (only inv(R) . A)", "A"));
  EXPECT_FALSE(entails("role R\n", "some R . A", "A"));
  EXPECT_TRUE(
      entails("role R\n", "A and some R . top", "some R . some inv(R) . A"));
}

TEST(TableauTest, TransitivityPropagatesUniversals) {
  EXPECT_TRUE(entails("trans R\nA <= some R . (some R . B)\n", "A",
                      "some R . B"));
  EXPECT_TRUE(entails("trans R\n", "only R . B and some R . some R . top",
                      "some R . some R . B"));
  EXPECT_FALSE(entails("role R\nA <= some R . (some R . B)\n", "A",
                       "some R . B"));
}

TEST(TableauTest, RoleHierarchy) {
  EXPECT_TRUE(entails("role R <= S\n", "some R . A", "some S . A"));
  EXPECT_FALSE(entails("role R <= S\n", "some S . A", "some R . A"));
  EXPECT_TRUE(entails("role R <= inv(S)\n", "some R . A",
                      "some inv(S) . A"));
  EXPECT_TRUE(entails("trans R\nrole R <= S\n", "only S . A",
                      "only R . only R . A"));
}

TEST(TableauTest, AssertionEntailment) {
  KnowledgeBase kb = parseKB(
      "role R\n(a, b) : R\nb : B\ntop <= atmost 1 R . top\n");
  EXPECT_TRUE(entailsAssertion(kb, "a", parseConcept("only R . B")));
  KnowledgeBase kb2 = parseKB("role R\n(a, b) : R\nb : B\n");
  EXPECT_FALSE(entailsAssertion(kb2, "a", parseConcept("only R . B")));
  EXPECT_TRUE(entailsAssertion(kb2, "a", parseConcept("some R . B")));
  EXPECT_THROW(entailsAssertion(kb, "zed", parseConcept("B")), KbError);
}

TEST(TableauTest, NoUniqueNameAssumption) {
  // a has at most one R-successor, so b and c must be the same element.
  KnowledgeBase kb = parseKB(
      "role R\n(a, b) : R\n(a, c) : R\na : atmost 1 R . top\nb : B\n");
  EXPECT_TRUE(isSatisfiable(kb).satisfiable);
  EXPECT_TRUE(entailsAssertion(kb, "c", parseConcept("B")));
  KnowledgeBase bad = kb;
  bad.addAssertion(ConceptAssertion{parseConcept("not B"), "c"});
  EXPECT_FALSE(isSatisfiable(bad).satisfiable);
}

TEST(TableauTest, UniversalRole) {
  EXPECT_FALSE(sat("a : only _U . A\nb : not A\n"));
  EXPECT_TRUE(sat("a : only _U . A\nb : B\n"));
  EXPECT_FALSE(sat("a : some _U . (A and B)\nA <= not B\n"));
  EXPECT_TRUE(sat("a : some _U . (A and B) and only _U . not C\n"));
  EXPECT_FALSE(sat("a : some _U . C and only _U . not C\n"));
  // The choice of a global disjunct is shared by every element.
  EXPECT_FALSE(sat("top <= only _U . A or only _U . B\n"
                   "a : not A\nb : not B\n"));
  EXPECT_TRUE(sat("top <= only _U . A or only _U . B\n"
                  "a : not A\nb : not A\n"));
}

TEST(TableauTest, WitnessIsAModel) {
  Verdict v = isSatisfiable(parseKB(
      "role R\nA <= some R . B\nB <= only inv(R) . C\na : A\n"));
  ASSERT_TRUE(v.satisfiable);
  ASSERT_TRUE(v.witness.has_value());
  const FiniteModel& m = *v.witness;
  const int a = m.individuals.at("a");
  EXPECT_TRUE(m.atoms.at("A").count(a));
  EXPECT_TRUE(m.atoms.at("C").count(a));
  ASSERT_EQ(m.roles.at("R").size(), 1u);
  const int b = m.roles.at("R").begin()->second;
  EXPECT_TRUE(m.atoms.at("B").count(b));
}

TEST(TableauTest, TraceDump) {
  std::ostringstream os;
  TableauOptions opts;
  opts.trace = &os;
  isSatisfiable(parseKB("role R\na : some R . A\n"), opts);
  EXPECT_NE(os.str().find("edge 0 -> 1 : R"), std::string::npos) << os.str();
}

TEST(TableauTest, RejectsTypicality) {
  EXPECT_THROW(isSatisfiable(parseKB("T(A) <= B\n")), KbError);
}

TEST(TableauTest, StatsAreCounted) {
  Verdict v = isSatisfiable(parseKB("A <= B or C\nB <= not C\na : A\n"));
  EXPECT_TRUE(v.satisfiable);
  EXPECT_GT(v.stats.rule_applications, 0u);
  EXPECT_GE(v.stats.nodes_created, 1u);
}

}  // namespace
}  // namespace dlrc
