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

#include "dlrc/encoding.hpp"
#include "dlrc/error.hpp"
#include "support/kb_generator.hpp"

namespace dlrc {
namespace {

KnowledgeBase dataKb(const std::string& name) {
  return parseKB(readFile(std::string(DLRC_TEST_DATA_DIR) + "/" + name));
}

SubsumptionQuery incl(const std::string& text) {
  return std::get<SubsumptionQuery>(parseQuery(text));
}

bool sat(const KnowledgeBase& kb) { return satisfiableWithTyp(kb).satisfiable; }

TEST(EncodingTest, VipIsConsistent) {
  KnowledgeBase kb = dataKb("vip.dkb");
  EXPECT_TRUE(sat(kb));
  // A typical person who is a VIP would be a typical VIP too.
  kb.addAssertion(ConceptAssertion{parseConcept("T(Person)"), "demi"});
  EXPECT_FALSE(sat(kb));
}

TEST(EncodingTest, NonEmptyConceptHasTypicalMembers) {
  EXPECT_FALSE(sat(dataKb("inconsistent.dkb")));
  KnowledgeBase kb = dataKb("inconsistent.dkb").tboxOnly();
  EXPECT_TRUE(sat(kb));
  EXPECT_TRUE(entailsWithTyp(kb, incl("A <= bot ?")));
}

TEST(EncodingTest, MonotonicEntailmentIsWeak) {
  KnowledgeBase kb = dataKb("vip_tbox.dkb");
  for (Route r : {Route::kPreferential, Route::kRanked}) {
    EXPECT_TRUE(entailsWithTyp(
        kb, incl("T(VIP) <= atleast 2 HasMarried . Person ?"), {}, r));
    EXPECT_FALSE(entailsWithTyp(
        kb, incl("T(VIP and Tall) <= atleast 2 HasMarried . Person ?"), {}, r));
    EXPECT_TRUE(entailsWithTyp(kb, incl("T(Person) <= not VIP ?"), {}, r));
    EXPECT_TRUE(entailsWithTyp(kb, incl("VIP <= Person ?"), {}, r));
    EXPECT_FALSE(entailsWithTyp(kb, incl("Person <= VIP ?"), {}, r));
  }
}

TEST(EncodingTest, LevelsCannotSkipAnExceptionalElement) {
  // a is a typical A, but not a typical D; b is a typical D that is an A.
  // So b sits strictly below a although a is a minimal A.
  KnowledgeBase kb = parseKB(
      "T(D) <= E\n"
      "a : T(A)\n"
      "a : D and not E\n"
      "b : T(D)\n"
      "b : A\n");
  EXPECT_FALSE(sat(kb));
  KnowledgeBase weaker = parseKB(
      "T(D) <= E\n"
      "a : T(A)\n"
      "a : D and not E\n"
      "b : T(D)\n");
  EXPECT_TRUE(sat(weaker));
}

TEST(EncodingTest, AssertionQueries) {
  KnowledgeBase kb = dataKb("vip.dkb");
  EXPECT_TRUE(entailsWithTyp(kb, AssertionQuery{"demi", parseConcept("Person")}));
  EXPECT_FALSE(entailsWithTyp(kb, AssertionQuery{"demi", parseConcept("T(VIP)")}));
  EXPECT_FALSE(entailsWithTyp(
      kb, AssertionQuery{"marco", parseConcept("atmost 1 HasMarried . Person")}));
  kb.addAssertion(ConceptAssertion{parseConcept("T(Person)"), "marco"});
  EXPECT_TRUE(entailsWithTyp(
      kb, AssertionQuery{"marco", parseConcept("atmost 1 HasMarried . Person")}));
  EXPECT_TRUE(entailsWithTyp(kb, AssertionQuery{"marco", parseConcept("T(Person)")}));
  EXPECT_FALSE(entailsWithTyp(kb, AssertionQuery{"marco", parseConcept("VIP")}));
  EXPECT_THROW(entailsWithTyp(kb, AssertionQuery{"zed", parseConcept("A")}),
               KbError);
}

TEST(EncodingTest, PreferentialNeedsEmptyABox) {
  EXPECT_THROW(encodePreferential(dataKb("vip.dkb"), incl("A <= B ?")), KbError);
}

TEST(EncodingTest, DeterministicNames) {
  KnowledgeBase kb = dataKb("vip_tbox.dkb");
  RankedEncoding a = encodeRanked(kb, Concept::Top());
  RankedEncoding b = encodeRanked(kb, Concept::Top());
  EXPECT_EQ(a.kb, b.kb);
  ASSERT_EQ(a.scaffold.boxes.size(), 2u);
  EXPECT_EQ(a.scaffold.boxes[0].name, "_Box_not_Person");
  EXPECT_EQ(a.scaffold.boxes[1].name, "_Box_not_VIP");
  EXPECT_EQ(a.scaffold.h, 2);
  EXPECT_FALSE(a.kb.hasTypicality());
}

TEST(EncodingTest, SizeIsQuadratic) {
  test::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    KnowledgeBase kb = test::randomKb(rng);
    RankedEncoding enc = encodeRanked(kb, Concept::Top());
    const std::size_t n = kb.size() + 1;
    EXPECT_LE(enc.kb.size(), 60 * n * n);
  }
}

TEST(EncodingTest, AgreesWithTableauWithoutTypicality) {
  test::Rng rng(7);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    KnowledgeBase kb = test::randomKb(rng);
    if (kb.hasTypicality()) continue;
    ++checked;
    EXPECT_EQ(sat(kb), isSatisfiable(kb).satisfiable) << printKB(kb);
  }
  EXPECT_GT(checked, 20);
}

TEST(EncodingTest, RoutesAgreeOnTBoxQueries) {
  test::Rng rng(21);
  test::FamilyParams p;
  for (int i = 0; i < 40; ++i) {
    KnowledgeBase kb = test::familyKb(rng, p);
    for (const SubsumptionQuery& q : test::familyQueries(rng, kb, p, 3)) {
      EXPECT_EQ(entailsWithTyp(kb, q, {}, Route::kPreferential),
                entailsWithTyp(kb, q, {}, Route::kRanked))
          << printKB(kb) << printQuery(q);
    }
  }
}

TEST(EncodingTest, LevelBoundsAgree) {
  test::Rng rng(23);
  test::FamilyParams p;
  p.individuals = 2;
  p.max_assertions = 3;
  p.typical_assertions = true;
  p.max_defeasible = 2;
  TypOptions big;
  big.bound = LevelBound::kSubconcepts;
  for (int i = 0; i < 15; ++i) {
    KnowledgeBase kb = test::familyKb(rng, p);
    EXPECT_EQ(satisfiableWithTyp(kb).satisfiable,
              satisfiableWithTyp(kb, big).satisfiable)
        << printKB(kb);
  }
}

TEST(EncodingTest, WitnessDecodesToRanks) {
  KnowledgeBase kb = dataKb("penguins.dkb");
  RankedEncoding enc = encodeRanked(kb, Concept::Top());
  Verdict v = isSatisfiableWithRoots(enc.kb, {enc.goal});
  ASSERT_TRUE(v.satisfiable);
  ASSERT_TRUE(v.witness.has_value());
  std::optional<DecodedModel> m = decodeRankedWitness(*v.witness, enc.scaffold);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->ranks.size(), static_cast<std::size_t>(m->model.domain_size));
  EXPECT_EQ(m->model.roles.count("_R"), 0u);
  for (const auto& [name, ext] : m->model.atoms) EXPECT_NE(name.front(), '_');
  // Some bird is typical, so some element is on level 0.
  EXPECT_NE(std::find(m->ranks.begin(), m->ranks.end(), 0), m->ranks.end());
}

}  // namespace
}  // namespace dlrc
