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

// Skeptical rational closure of an ABox. Every individual gets a rank in
// 0..n; an individual of rank k must satisfy each defeasible inclusion of the
// TBox closure whose antecedent has rank k or more. The ABox closure is what
// follows under every minimal consistent assignment.

#ifndef DLRC_ABOX_CLOSURE_HPP_
#define DLRC_ABOX_CLOSURE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlrc/rational_closure.hpp"

namespace dlrc {

struct RankAssignment {
  std::map<std::string, int> ranks;

  // Pointwise <= and different somewhere.
  bool dominates(const RankAssignment& other) const;
  friend bool operator==(const RankAssignment&, const RankAssignment&) = default;
};

struct MuSet {
  std::vector<ConceptAssertion> assertions;
};

// A member T(C) <= D of the TBox closure with C, D from the subconcepts.
struct ClosurePair {
  Concept c;
  Concept d;
  Rank rank;  // rank(C)
};

struct ABoxStats {
  std::uint64_t assignments_checked = 0;
  std::uint64_t assignments_skipped = 0;
  std::uint64_t pair_candidates = 0;
};

class ABoxClosure {
 public:
  // extra: query concepts, which extend the subconcepts used for mu.
  explicit ABoxClosure(const KnowledgeBase& kb,
                       const std::vector<Concept>& extra = {},
                       const TypOptions& opts = {});

  RationalClosure& tbox() { return rc_; }
  const std::vector<ClosurePair>& pairs() const { return pairs_; }
  const ABoxStats& stats() const { return stats_; }

  MuSet mu(const RankAssignment& k) const;
  bool isConsistent(const RankAssignment& k);

  // Throws InconsistentKbError if no assignment is consistent.
  const std::vector<RankAssignment>& minimalAssignments();

  // Throws KbError for an individual not in the ABox.
  bool entails(const AssertionQuery& q);

 private:
  KnowledgeBase kb_;
  TypOptions opts_;
  RationalClosure rc_;
  std::vector<ClosurePair> pairs_;
  std::vector<ConceptInclusion> strict_;
  std::optional<std::vector<RankAssignment>> minimal_;
  ABoxStats stats_;
};

MuSet buildMu(ABoxClosure& closure, const RankAssignment& k);
bool isConsistentAssignment(ABoxClosure& closure, const RankAssignment& k);
std::vector<RankAssignment> minimalConsistentAssignments(ABoxClosure& closure);
bool inClosureABox(const KnowledgeBase& kb, const AssertionQuery& q,
                   const TypOptions& opts = {});

// kb plus the assertions of mu.
KnowledgeBase withMu(const KnowledgeBase& kb, const MuSet& mu);

}  // namespace dlrc

#endif  // DLRC_ABOX_CLOSURE_HPP_
