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

#include "support/kb_generator.hpp"

#include <algorithm>

namespace dlrc::test {

namespace {

int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

const char* const kAtoms[] = {"A", "B", "C", "D"};

Role randomRole(Rng& rng) {
  Role r(coin(rng) ? "R" : "S");
  if (coin(rng, 0.3)) r = r.inverse();
  return r;
}

}  // namespace

Concept randomConcept(Rng& rng, int depth) {
  if (depth <= 0 || coin(rng, 0.25)) {
    const int k = pick(rng, 0, 9);
    if (k == 0) return Concept::Top();
    if (k == 1) return Concept::Bottom();
    return Concept::Atom(kAtoms[pick(rng, 0, 3)]);
  }
  switch (pick(rng, 0, 7)) {
    case 0:
      return Concept::Not(randomConcept(rng, depth - 1));
    case 1:
      return Concept::And(randomConcept(rng, depth - 1),
                          randomConcept(rng, depth - 1));
    case 2:
      return Concept::Or(randomConcept(rng, depth - 1),
                         randomConcept(rng, depth - 1));
    case 3:
      return Concept::Exists(randomRole(rng), randomConcept(rng, depth - 1));
    case 4:
      return Concept::Forall(randomRole(rng), randomConcept(rng, depth - 1));
    case 5:
      return Concept::AtLeast(static_cast<unsigned>(pick(rng, 0, 3)),
                              randomRole(rng), randomConcept(rng, depth - 1));
    case 6:
      return Concept::AtMost(static_cast<unsigned>(pick(rng, 0, 3)),
                             randomRole(rng), randomConcept(rng, depth - 1));
    default:
      return Concept::And({randomConcept(rng, depth - 1),
                           randomConcept(rng, depth - 1),
                           randomConcept(rng, depth - 1)});
  }
}

KnowledgeBase randomKb(Rng& rng) {
  KnowledgeBase kb;
  kb.rbox().declareRole("R");
  if (coin(rng)) kb.rbox().addInclusion(Role("R"), Role("S", coin(rng)));
  if (coin(rng)) kb.rbox().declareTransitive("P");
  const int n_incl = pick(rng, 0, 5);
  for (int i = 0; i < n_incl; ++i) {
    Concept lhs = randomConcept(rng, 2);
    if (coin(rng, 0.4)) lhs = Concept::Typ(lhs);
    kb.addInclusion(lhs, randomConcept(rng, 3));
  }
  const int n_as = pick(rng, 0, 4);
  const char* inds[] = {"a", "b", "c"};
  for (int i = 0; i < n_as; ++i) {
    if (coin(rng, 0.3)) {
      kb.addAssertion(RoleAssertion{randomRole(rng), inds[pick(rng, 0, 2)],
                                    inds[pick(rng, 0, 2)]});
    } else {
      Concept c = randomConcept(rng, 2);
      if (coin(rng, 0.2)) c = Concept::Typ(c);
      kb.addAssertion(ConceptAssertion{c, inds[pick(rng, 0, 2)]});
    }
  }
  return kb;
}

namespace {

Concept familyLiteral(Rng& rng, int atoms) {
  Concept a = Concept::Atom(kAtoms[pick(rng, 0, atoms - 1)]);
  return coin(rng, 0.35) ? Concept::Not(a) : a;
}

Concept familyRoleConcept(Rng& rng, int atoms, unsigned max_n) {
  const Role r("R");
  Concept l = familyLiteral(rng, atoms);
  switch (pick(rng, 0, 3)) {
    case 0:
      return Concept::Exists(r, l);
    case 1:
      return Concept::Forall(r, l);
    case 2:
      return Concept::AtLeast(
          static_cast<unsigned>(pick(rng, 2, std::max<int>(2, max_n))), r, l);
    default:
      return Concept::AtMost(
          static_cast<unsigned>(pick(rng, 1, std::max<int>(1, max_n - 1))), r,
          l);
  }
}

Concept familyRhs(Rng& rng, int atoms, const FamilyParams& p) {
  if (p.use_role && coin(rng, p.role_rate)) {
    return familyRoleConcept(rng, atoms, p.max_number);
  }
  if (coin(rng, 0.15)) {
    return Concept::Or(familyLiteral(rng, atoms), familyLiteral(rng, atoms));
  }
  return familyLiteral(rng, atoms);
}

Concept familyLhs(Rng& rng, int atoms) {
  Concept a = Concept::Atom(kAtoms[pick(rng, 0, atoms - 1)]);
  if (coin(rng, 0.3)) {
    Concept b = familyLiteral(rng, atoms);
    Concept c = Concept::And(a, b);
    if (!c.is(ConceptKind::kBottom)) return c;
  }
  return a;
}

}  // namespace

KnowledgeBase familyKb(Rng& rng, const FamilyParams& p) {
  KnowledgeBase kb;
  int atoms = pick(rng, 2, p.max_atoms);
  if (p.third_atom >= 0 && p.max_atoms >= 3) {
    atoms = coin(rng, p.third_atom) ? 3 : 2;
  }
  const int n_def = pick(rng, 1, p.max_defeasible);
  for (int i = 0; i < n_def; ++i) {
    kb.addInclusion(Concept::Typ(familyLhs(rng, atoms)),
                    familyRhs(rng, atoms, p));
  }
  int n_strict = pick(rng, 0, p.max_strict);
  if (p.taxonomy) {
    // A chain C <= B <= A, as far as the atoms and strict budget allow.
    const int links = std::min(atoms - 1, p.max_strict);
    for (int i = 1; i <= links; ++i) {
      kb.addInclusion(Concept::Atom(kAtoms[i]), Concept::Atom(kAtoms[i - 1]));
    }
    n_strict = std::min(n_strict, p.max_strict - links);
  }
  for (int i = 0; i < n_strict; ++i) {
    kb.addInclusion(Concept::Atom(kAtoms[pick(rng, 0, atoms - 1)]),
                    familyRhs(rng, atoms, p));
  }
  if (p.individuals > 0) {
    const char* inds[] = {"a", "b", "c"};
    const int n_as = pick(rng, 1, std::max(1, p.max_assertions));
    for (int i = 0; i < n_as; ++i) {
      const char* a = inds[pick(rng, 0, p.individuals - 1)];
      if (p.use_role && p.individuals > 1 && coin(rng, 0.2)) {
        kb.addAssertion(RoleAssertion{Role("R"), a,
                                      inds[pick(rng, 0, p.individuals - 1)]});
        continue;
      }
      Concept c = familyLiteral(rng, atoms);
      if (p.typical_assertions && coin(rng, 0.4)) {
        c = Concept::Typ(Concept::Atom(kAtoms[pick(rng, 0, atoms - 1)]));
      }
      kb.addAssertion(ConceptAssertion{c, a});
    }
  }
  return kb;
}

namespace {

// Atoms actually used by kb, so queries stay within its vocabulary.
int atomsUsed(const KnowledgeBase& kb) {
  SubconceptSet ls = subconcepts(kb);
  int n = 1;
  for (int i = 0; i < 4; ++i) {
    if (ls.contains(Concept::Atom(kAtoms[i]))) n = std::max(n, i + 1);
  }
  return n;
}

}  // namespace

std::vector<SubsumptionQuery> familyQueries(Rng& rng, const KnowledgeBase& kb,
                                            const FamilyParams& p, int count) {
  const int atoms = atomsUsed(kb);
  std::vector<SubsumptionQuery> out;
  for (int i = 0; i < count; ++i) {
    Concept lhs = familyLhs(rng, atoms);
    Concept rhs = familyRhs(rng, atoms, p);
    if (coin(rng, p.typ_query_rate)) lhs = Concept::Typ(lhs);
    out.push_back({lhs, rhs});
  }
  return out;
}

std::vector<AssertionQuery> familyAssertionQueries(Rng& rng,
                                                   const KnowledgeBase& kb,
                                                   const FamilyParams& p,
                                                   int count) {
  const int atoms = atomsUsed(kb);
  std::vector<AssertionQuery> out;
  const auto& inds = kb.individuals();
  if (inds.empty()) return out;
  for (int i = 0; i < count; ++i) {
    const std::string& a = inds[pick(rng, 0, static_cast<int>(inds.size()) - 1)];
    out.push_back({a, familyRhs(rng, atoms, p)});
  }
  return out;
}

}  // namespace dlrc::test
