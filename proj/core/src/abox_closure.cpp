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

#include "dlrc/abox_closure.hpp"

#include <algorithm>
#include <functional>

#include "dlrc/error.hpp"

namespace dlrc {

bool RankAssignment::dominates(const RankAssignment& other) const {
  bool strict = false;
  for (const auto& [a, r] : ranks) {
    const int o = other.ranks.at(a);
    if (r > o) return false;
    if (r < o) strict = true;
  }
  return strict;
}

ABoxClosure::ABoxClosure(const KnowledgeBase& kb,
                         const std::vector<Concept>& extra,
                         const TypOptions& opts)
    : kb_(kb), opts_(opts), rc_(kb.tboxOnly(), {}, opts) {
  opts_.tableau.witness_attempts = 0;
  for (const ConceptInclusion& ax : kb.tbox()) {
    if (!ax.isDefeasible()) strict_.push_back(ax);
  }
  if (kb.tbox().size() == strict_.size()) return;
  const SubconceptSet ls = subconcepts(kb, extra);
  for (const Concept& c : ls.concepts) {
    const Rank rc = rc_.rank(c);
    for (const Concept& d : ls.concepts) {
      ++stats_.pair_candidates;
      if (c == d) continue;
      if (rc.isInfinite() || rc < rc_.rank(Concept::And(c, Concept::Not(d)))) {
        pairs_.push_back({c, d, rc});
      }
    }
  }
}

MuSet ABoxClosure::mu(const RankAssignment& k) const {
  MuSet out;
  for (const auto& [a, r] : k.ranks) {
    for (const ClosurePair& p : pairs_) {
      if (Rank::of(r) <= p.rank) {
        out.assertions.push_back(
            {Concept::Or(Concept::Not(p.c), p.d), a});
      }
    }
    for (const ConceptInclusion& ax : strict_) {
      out.assertions.push_back({Concept::Or(Concept::Not(ax.lhs), ax.rhs), a});
    }
  }
  return out;
}

KnowledgeBase withMu(const KnowledgeBase& kb, const MuSet& mu) {
  KnowledgeBase out = kb;
  for (const ConceptAssertion& a : mu.assertions) out.addAssertion(a);
  return out;
}

bool ABoxClosure::isConsistent(const RankAssignment& k) {
  ++stats_.assignments_checked;
  return satisfiableWithTyp(withMu(kb_, mu(k)), opts_).satisfiable;
}

// Assignments are visited by increasing sum of ranks. Consistency is upward
// closed (mu only shrinks as ranks grow), so anything above a consistent
// assignment is skipped and every consistent one reached is minimal.
const std::vector<RankAssignment>& ABoxClosure::minimalAssignments() {
  if (minimal_) return *minimal_;
  const std::vector<std::string>& inds = kb_.individuals();
  const int m = static_cast<int>(inds.size());
  const int n = rc_.table().fixpointIndex;
  std::vector<RankAssignment> found;
  std::vector<int> cur(m, 0);
  std::function<void(int, int)> visit = [&](int i, int left) {
    if (i == m) {
      if (left != 0) return;
      RankAssignment k;
      for (int j = 0; j < m; ++j) k.ranks[inds[j]] = cur[j];
      for (const RankAssignment& f : found) {
        if (f.dominates(k)) {
          ++stats_.assignments_skipped;
          return;
        }
      }
      if (isConsistent(k)) found.push_back(std::move(k));
      return;
    }
    for (int v = 0; v <= std::min(n, left); ++v) {
      cur[i] = v;
      visit(i + 1, left - v);
    }
  };
  for (int sum = 0; sum <= n * m; ++sum) visit(0, sum);
  if (found.empty()) throw InconsistentKbError();
  minimal_ = std::move(found);
  return *minimal_;
}

bool ABoxClosure::entails(const AssertionQuery& q) {
  if (!kb_.hasIndividual(q.individual)) {
    throw KbError("unknown individual '" + q.individual + "'");
  }
  for (const RankAssignment& k : minimalAssignments()) {
    if (!entailsWithTyp(withMu(kb_, mu(k)), q, opts_)) return false;
  }
  return true;
}

MuSet buildMu(ABoxClosure& closure, const RankAssignment& k) {
  return closure.mu(k);
}

bool isConsistentAssignment(ABoxClosure& closure, const RankAssignment& k) {
  return closure.isConsistent(k);
}

std::vector<RankAssignment> minimalConsistentAssignments(ABoxClosure& closure) {
  return closure.minimalAssignments();
}

bool inClosureABox(const KnowledgeBase& kb, const AssertionQuery& q,
                   const TypOptions& opts) {
  ABoxClosure closure(kb, {q.expr}, opts);
  return closure.entails(q);
}

}  // namespace dlrc
