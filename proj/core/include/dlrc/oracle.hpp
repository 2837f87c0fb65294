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

// Finite ranked interpretations and a bounded model enumerator. This is the
// semantic ground truth the closures are tested against, so it shares no code
// with the rank computation. Only canonicity asks the tableau which sets of
// concepts are consistent.
//
// Interpretations are enumerated by type: a type fixes every atom and every
// number restriction of the vocabulary, the domain is a multiset of types,
// role edges are then searched so that each element really has its type, and
// ranks come from the least ranking that satisfies the defeasible part.

#ifndef DLRC_ORACLE_HPP_
#define DLRC_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dlrc/knowledge_base.hpp"
#include "dlrc/parser.hpp"
#include "dlrc/tableau.hpp"

namespace dlrc {

struct RankedInterpretation {
  int size = 0;
  std::map<std::string, std::set<int>> atoms;
  // Extensions of named roles, closed under hierarchy and transitivity.
  std::map<std::string, std::set<std::pair<int, int>>> roles;
  std::vector<int> ranks;  // one per element
  std::map<std::string, int> individuals;

  // ranks default to all 0.
  static RankedInterpretation fromModel(const FiniteModel& m,
                                        std::vector<int> ranks = {});
};

using Extension = std::vector<bool>;

// Standard semantics; T(C) is the set of rank-minimal C elements.
Extension evalConcept(const RankedInterpretation& m, const Concept& c);
// Box C: elements all of whose strictly lower elements are in C.
Extension evalBox(const RankedInterpretation& m, const Concept& c);

bool satisfies(const RankedInterpretation& m, const ConceptInclusion& ax);
bool satisfies(const RankedInterpretation& m, const AssertionQuery& q);
bool satisfiesKB(const RankedInterpretation& m, const KnowledgeBase& kb);

// Least rank of a c element, nullopt when c is empty.
std::optional<int> conceptRank(const RankedInterpretation& m, const Concept& c);

// For each element, the defeasible inclusions T(C) <= D with x in C and not D.
struct FalsifiedSet {
  std::vector<std::vector<ConceptInclusion>> per_element;
};
FalsifiedSet falsifiedSet(const RankedInterpretation& m,
                          const KnowledgeBase& kb);

// Characterisation by falsified sets: rank 0 iff nothing is falsified, and
// otherwise one above the highest rank of a falsified antecedent.
// Throws KbError if m is not a model of kb.
bool isMinimal(const RankedInterpretation& m, const KnowledgeBase& kb);
// The same question by trying every pointwise smaller rank function.
bool isMinimalByDefinition(const RankedInterpretation& m,
                           const KnowledgeBase& kb);
// Least rank function over m's domain and extensions satisfying the
// defeasible inclusions, ignoring m.ranks. nullopt if there is none.
std::optional<std::vector<int>> minimalRanking(const RankedInterpretation& m,
                                               const KnowledgeBase& kb);

// Decides whether a Typ-free concept is consistent with a KB.
using ConsistencyCheck = std::function<bool(const Concept&)>;
// Memoised check through the typicality encoding.
ConsistencyCheck tableauConsistency(const KnowledgeBase& kb);

// Every maximal consistent subset of the subconcepts of kb and extra is
// realised by some element. Throws KbError if m is not a model of kb.
bool isCanonical(const RankedInterpretation& m, const KnowledgeBase& kb,
                 const std::vector<Concept>& extra = {},
                 ConsistencyCheck check = {});

// Maximal consistent sets over the vocabulary of kb and extra, each given as
// one conjunction of literals over atoms and number restrictions.
std::vector<Concept> consistentTypes(const KnowledgeBase& kb,
                                     const std::vector<Concept>& extra,
                                     ConsistencyCheck check = {});
// The same sets by type elimination, without the tableau. Only defined for
// KBs in the fragment of typeLevelFragment; nullopt otherwise.
std::optional<std::vector<Concept>> consistentTypesByElimination(
    const KnowledgeBase& kb, const std::vector<Concept>& extra = {});
// No inverse roles, no role axioms, no typicality in the ABox.
bool typeLevelFragment(const KnowledgeBase& kb);

enum class OracleVerdict { kTrue, kFalse, kUndecided };
std::string toString(OracleVerdict v);

struct OracleBounds {
  int max_domain = 4;
  int max_rank = 3;
};

struct OracleReport {
  OracleVerdict verdict = OracleVerdict::kUndecided;
  std::string reason;
  std::uint64_t interpretations = 0;  // (domain, extensions) realised
  std::uint64_t models = 0;           // of those, with a ranking
  std::uint64_t minimal = 0;          // minimal models within the rank bound
  std::uint64_t canonical = 0;
  // A counterexample for FALSE entailment, a model for TRUE existence.
  std::optional<RankedInterpretation> witness;
};

// Does q hold in every minimal canonical model of the TBox of kb within
// bounds? UNDECIDED when there is none.
OracleReport minimalCanonicalEntails(const KnowledgeBase& kb,
                                     const SubsumptionQuery& q,
                                     const OracleBounds& bounds = {},
                                     ConsistencyCheck check = {});
// Does q hold in every minimal canonical model of kb that is minimal with
// respect to the ABox?
OracleReport minimalCanonicalEntails(const KnowledgeBase& kb,
                                     const AssertionQuery& q,
                                     const OracleBounds& bounds = {},
                                     ConsistencyCheck check = {});

// Models whose individuals' ranks are not pointwise dominated by another's.
std::vector<RankedInterpretation> minimalWrtABox(
    const std::vector<RankedInterpretation>& models,
    const std::vector<std::string>& individuals);

// Model existence. Exact inside typeLevelFragment; elsewhere a bounded search
// that can only answer TRUE or UNDECIDED.
OracleReport findModel(const KnowledgeBase& kb,
                       const OracleBounds& bounds = {});
// The bounded search alone.
OracleReport findModelBounded(const KnowledgeBase& kb,
                              const OracleBounds& bounds = {});

}  // namespace dlrc

#endif  // DLRC_ORACLE_HPP_
