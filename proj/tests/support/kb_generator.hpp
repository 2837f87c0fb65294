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

// Seeded random generators for concepts and small knowledge bases.

#ifndef DLRC_TESTS_SUPPORT_KB_GENERATOR_HPP_
#define DLRC_TESTS_SUPPORT_KB_GENERATOR_HPP_

#include <random>
#include <string>
#include <vector>

#include "dlrc/knowledge_base.hpp"
#include "dlrc/parser.hpp"

namespace dlrc::test {

using Rng = std::mt19937_64;

// Arbitrary Typ-free concept over atoms A..D and roles R, S (with inverses).
Concept randomConcept(Rng& rng, int depth);

// Arbitrary knowledge base exercising every syntactic feature.
KnowledgeBase randomKb(Rng& rng);

struct FamilyParams {
  int max_atoms = 3;
  bool use_role = true;
  int max_defeasible = 3;
  int max_strict = 2;
  unsigned max_number = 2;
  int individuals = 0;  // ABox size control: 0 means no ABox
  int max_assertions = 0;
  bool typical_assertions = false;
  // Chance of a third atom when max_atoms is 3; 2..max_atoms uniformly if < 0.
  double third_atom = -1;
  double role_rate = 0.3;
  // The atoms form a chain of strict subclass links, C <= B <= A.
  bool taxonomy = false;
  double typ_query_rate = 0.85;
};

// KBs of the small family used to compare closures with the model oracle:
// atoms from {A, B, C}, at most one (non-transitive) role R, role
// restrictions only over literals.
KnowledgeBase familyKb(Rng& rng, const FamilyParams& p);

// Defeasible or strict inclusion queries over the vocabulary of kb.
std::vector<SubsumptionQuery> familyQueries(Rng& rng, const KnowledgeBase& kb,
                                            const FamilyParams& p, int count);

// Assertion queries over the individuals of kb.
std::vector<AssertionQuery> familyAssertionQueries(Rng& rng,
                                                   const KnowledgeBase& kb,
                                                   const FamilyParams& p,
                                                   int count);

}  // namespace dlrc::test

#endif  // DLRC_TESTS_SUPPORT_KB_GENERATOR_HPP_
