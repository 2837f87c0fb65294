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

#include <random>

#include "dlrc/concept.hpp"
#include "dlrc/error.hpp"
#include "dlrc/knowledge_base.hpp"
#include "dlrc/parser.hpp"
#include "support/kb_generator.hpp"

namespace dlrc {
namespace {

Concept A() { return Concept::Atom("A"); }
Concept B() { return Concept::Atom("B"); }
const Role R("R");

TEST(RoleTest, InverseIsInvolution) {
  EXPECT_EQ(R.inverse().inverse(), R);
  EXPECT_TRUE(R.inverse().inverted);
  EXPECT_EQ(Role::universal().inverse(), Role::universal());
}

TEST(ConceptTest, AndOrAreFlattenedAndSorted) {
  Concept c = Concept::And(B(), Concept::And(A(), B()));
  EXPECT_EQ(c, Concept::And(A(), B()));
  EXPECT_EQ(c.operands().size(), 2u);
  EXPECT_EQ(Concept::And(A(), Concept::Top()), A());
  EXPECT_EQ(Concept::And(A(), Concept::Bottom()), Concept::Bottom());
  EXPECT_EQ(Concept::Or(A(), Concept::Top()), Concept::Top());
  EXPECT_EQ(Concept::Or({}), Concept::Bottom());
}

TEST(ConceptTest, TypicalityOnlyAtTheTop) {
  EXPECT_NO_THROW(Concept::Typ(A()));
  EXPECT_THROW(Concept::Typ(Concept::Typ(A())), KbError);
  EXPECT_THROW(Concept::And(Concept::Typ(A()), B()), KbError);
  EXPECT_THROW(Concept::Not(Concept::Typ(A())), KbError);
}

TEST(NnfTest, Examples) {
  EXPECT_EQ(nnf(Concept::Not(Concept::Not(A()))), A());
  EXPECT_EQ(nnf(Concept::Not(Concept::AtLeast(2, R, A()))),
            Concept::AtMost(1, R, A()));
  EXPECT_EQ(nnf(Concept::Not(Concept::AtMost(1, R, A()))),
            Concept::AtLeast(2, R, A()));
  EXPECT_EQ(nnf(Concept::Not(Concept::Top())), Concept::Bottom());
  EXPECT_EQ(nnf(Concept::Not(Concept::AtLeast(0, R, A()))), Concept::Bottom());
  // <= 0 R.C is only R . not C; not (<= 0 R.C) is some R . C.
  EXPECT_EQ(nnf(Concept::AtMost(0, R, A())),
            Concept::Forall(R, Concept::Not(A())));
  EXPECT_EQ(nnf(Concept::Not(Concept::AtMost(0, R, A()))),
            Concept::Exists(R, A()));
  EXPECT_EQ(nnf(Concept::Not(Concept::And(A(), B()))),
            Concept::Or(Concept::Not(A()), Concept::Not(B())));
  EXPECT_EQ(nnf(Concept::Not(Concept::Exists(R, A()))),
            Concept::Forall(R, Concept::Not(A())));
  EXPECT_THROW(nnf(Concept::Typ(A())), std::invalid_argument);
}

bool isNnf(const Concept& c) {
  if (c.is(ConceptKind::kTyp)) return false;
  if (c.is(ConceptKind::kNot)) return c.operand().is(ConceptKind::kAtom);
  for (const Concept& d : c.operands()) {
    if (!isNnf(d)) return false;
  }
  return true;
}

TEST(NnfTest, PropertiesOnRandomConcepts) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Concept c = test::randomConcept(rng, 4);
    Concept n = nnf(c);
    EXPECT_TRUE(isNnf(n)) << c;
    EXPECT_EQ(nnf(n), n) << c;
    EXPECT_EQ(complement(complement(n)), n) << c;
  }
}

TEST(KnowledgeBaseTest, SplitSeparatesDefeasibleInclusions) {
  KnowledgeBase kb = parseKB(
      "role R\nVIP <= Person\nT(Person) <= atmost 1 R . Person\n"
      "a : VIP\n(a, b) : R\n");
  KbSplit s = split(kb);
  EXPECT_EQ(s.defeasible.size(), 1u);
  EXPECT_EQ(s.strict.size(), 3u);
}

TEST(KnowledgeBaseTest, InverseRoleAssertionIsNormalised) {
  KnowledgeBase kb;
  kb.addAssertion(RoleAssertion{R.inverse(), "a", "b"});
  const auto& ra = std::get<RoleAssertion>(kb.abox().front());
  EXPECT_EQ(ra.role, R);
  EXPECT_EQ(ra.subject, "b");
  EXPECT_EQ(ra.object, "a");
  EXPECT_EQ(kb.individuals(), (std::vector<std::string>{"b", "a"}));
}

TEST(KnowledgeBaseTest, TypicalityOnRightHandSideRejected) {
  KnowledgeBase kb;
  EXPECT_THROW(kb.addInclusion(A(), Concept::Typ(B())), KbError);
}

TEST(RBoxTest, HierarchyClosureAndSimplicity) {
  RBox rb;
  rb.addInclusion(Role("P"), Role("Q"));
  rb.addInclusion(Role("Q"), Role("S", true));
  rb.declareTransitive("T");
  rb.addInclusion(Role("T"), Role("U2"));
  EXPECT_TRUE(rb.isSubRole(Role("P"), Role("S", true)));
  EXPECT_TRUE(rb.isSubRole(Role("P", true), Role("S")));
  EXPECT_FALSE(rb.isSubRole(Role("S"), Role("P")));
  EXPECT_TRUE(rb.isSimple(Role("P")));
  EXPECT_FALSE(rb.isSimple(Role("T")));
  EXPECT_FALSE(rb.isSimple(Role("U2")));
  EXPECT_FALSE(rb.isSimple(Role("U2", true)));
}

TEST(SubconceptsTest, ClosedUnderComplementAndCounted) {
  KnowledgeBase kb = parseKB(
      "role HasMarried\nVIP <= Person\n"
      "T(Person) <= atmost 1 HasMarried . Person\n"
      "T(VIP) <= atleast 2 HasMarried . Person\n");
  SubconceptSet ls = subconcepts(kb);
  // VIP, Person, <=1 HM.Person, >=2 HM.Person.
  EXPECT_EQ(ls.base_count, 4u);
  EXPECT_EQ(ls.concepts.size(), 6u);
  for (const Concept& c : ls.concepts) {
    EXPECT_TRUE(ls.contains(complement(c))) << c;
  }
  SubconceptSet again = subconcepts(kb);
  EXPECT_EQ(ls.concepts, again.concepts);
}

TEST(SubconceptsTest, ExtraConceptsIncluded) {
  KnowledgeBase kb = parseKB("T(Actor) <= Charming\n");
  SubconceptSet ls =
      subconcepts(kb, {parseConcept("T(Actor and Comic)")});
  EXPECT_TRUE(ls.contains(Concept::Atom("Comic")));
  EXPECT_TRUE(ls.contains(parseConcept("Actor and Comic")));
  EXPECT_TRUE(ls.contains(parseConcept("not Actor or not Comic")));
}

}  // namespace
}  // namespace dlrc
