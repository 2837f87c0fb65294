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

// Compilation of the typicality operator into plain SHIQ (plus the universal
// role) so that the tableau can decide the typicality logic.
//
// Preferential route (empty ABox): T(C) becomes C and Box_C, where Box_C is a
// fresh atom axiomatised over a fresh role so that it behaves like "no
// smaller element is in C".
//
// Ranked route (any ABox): elements are additionally placed on an explicit
// chain of levels 0..h, and every Box_C is forced to agree on each level and
// to mean "no C on any lower level".

#ifndef DLRC_ENCODING_HPP_
#define DLRC_ENCODING_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dlrc/knowledge_base.hpp"
#include "dlrc/parser.hpp"
#include "dlrc/tableau.hpp"

namespace dlrc {

// Fresh atom standing for "no smaller element satisfies source".
struct BoxAtom {
  Concept source;  // NNF, Typ-free
  std::string name;

  Concept atom() const { return Concept::Atom(name); }
  // T(source) after encoding: source and Box.
  Concept typical() const { return Concept::And(source, atom()); }
};

struct PreferentialEncoding {
  KnowledgeBase kb;
  Concept lhs;
  Concept rhs;
  Role chain;
  std::vector<BoxAtom> boxes;

  const BoxAtom* boxFor(const Concept& source) const;
};

// Throws KbError if the ABox is not empty; use encodeRanked instead.
PreferentialEncoding encodePreferential(const KnowledgeBase& kb,
                                        const SubsumptionQuery& query);

// How many levels the ranked encoding provides.
enum class LevelBound {
  // One level per distinct subconcept of the KB and goal.
  kSubconcepts,
  // One level per Box atom, plus level 0. Ranks of a model can always be
  // compressed so that consecutive levels differ in at least one Box atom.
  kBoxAtoms,
};

struct RankedScaffold {
  int h = 0;
  std::string zero;
  std::string w;
  std::vector<std::string> levels;  // S_1 .. S_h
  Role chain;
  std::vector<BoxAtom> boxes;

  // Atom of level i; level 0 is Zero.
  Concept level(int i) const;
  const BoxAtom* boxFor(const Concept& source) const;
};

struct RankedEncoding {
  KnowledgeBase kb;
  Concept goal;  // some U . (W and goal)
  RankedScaffold scaffold;
};

struct RankedOptions {
  LevelBound bound = LevelBound::kBoxAtoms;
  // Sources that need a Box atom even if they do not occur in kb or goal.
  std::vector<Concept> extra_typical;
};

// goal is Typ-free or a single T(C).
RankedEncoding encodeRanked(const KnowledgeBase& kb, const Concept& goal,
                            const RankedOptions& opts = {});

struct TypOptions {
  TableauOptions tableau;
  LevelBound bound = LevelBound::kBoxAtoms;
};

// Satisfiability of a KB with typicality, via the ranked encoding.
Verdict satisfiableWithTyp(const KnowledgeBase& kb,
                           const TypOptions& opts = {});

// Satisfiability of C (possibly T(C')) w.r.t. kb.
Verdict conceptSatisfiableWithTyp(const KnowledgeBase& kb, const Concept& c,
                                  const TypOptions& opts = {});

enum class Route { kAuto, kPreferential, kRanked };

// Monotonic entailment in the typicality logic. kAuto uses the preferential
// encoding for inclusion queries over an empty ABox and the ranked encoding
// otherwise.
bool entailsWithTyp(const KnowledgeBase& kb, const SubsumptionQuery& q,
                    const TypOptions& opts = {}, Route route = Route::kAuto,
                    TableauStats* stats = nullptr);
bool entailsWithTyp(const KnowledgeBase& kb, const AssertionQuery& q,
                    const TypOptions& opts = {},
                    TableauStats* stats = nullptr);

// A ranked model read back from a tableau witness of a ranked encoding:
// scaffold symbols are dropped and each element's rank is its level.
struct DecodedModel {
  FiniteModel model;
  std::vector<int> ranks;
};
std::optional<DecodedModel> decodeRankedWitness(const FiniteModel& witness,
                                                const RankedScaffold& scaffold);

}  // namespace dlrc

#endif  // DLRC_ENCODING_HPP_
