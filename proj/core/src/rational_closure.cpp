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

#include "dlrc/rational_closure.hpp"

#include <algorithm>

namespace dlrc {

std::string Rank::str() const {
  return isInfinite() ? "inf" : std::to_string(v_);
}

bool isExceptional(const KnowledgeBase& e, const Concept& c,
                   const TypOptions& opts, TableauStats* stats) {
  return entailsWithTyp(e,
                        SubsumptionQuery{Concept::Typ(Concept::Top()),
                                         Concept::Not(c)},
                        opts, Route::kPreferential, stats);
}

namespace {

void addTo(TableauStats& into, const TableauStats& s) {
  into.rule_applications += s.rule_applications;
  into.backtracks += s.backtracks;
  into.nodes_created += s.nodes_created;
  into.branch_points += s.branch_points;
}

}  // namespace

RationalClosure::RationalClosure(const KnowledgeBase& kb,
                                 const std::vector<Concept>& extra,
                                 const TypOptions& opts)
    : kb_(kb), opts_(opts) {
  kb_.validate();
  opts_.tableau.witness_attempts = 0;
  strict_.rbox() = kb.rbox();
  std::vector<ConceptInclusion> defeasible;
  for (const ConceptInclusion& ax : kb.tbox()) {
    if (!ax.isDefeasible()) {
      strict_.addInclusion(ax);
    } else if (std::find(defeasible.begin(), defeasible.end(), ax) ==
               defeasible.end()) {
      defeasible.push_back(ax);
    }
  }

  // E_{i+1} keeps the defeasible inclusions whose lhs is exceptional for E_i.
  table_.sequence.push_back(defeasible);
  for (int i = 0;; ++i) {
    const std::vector<ConceptInclusion>& cur = table_.sequence[i];
    if (cur.empty()) {
      table_.fixpointIndex = i;
      break;
    }
    std::vector<ConceptInclusion> next;
    for (const ConceptInclusion& ax : cur) {
      if (exceptionalAt(ax.lhs.operand(), i)) next.push_back(ax);
    }
    if (next.size() == cur.size()) {
      table_.fixpointIndex = i;
      break;
    }
    table_.sequence.push_back(std::move(next));
  }

  for (const ConceptInclusion& ax : defeasible) rank(ax.lhs.operand());
  for (const Concept& c : extra) {
    rank(c.is(ConceptKind::kTyp) ? c.operand() : c);
  }
}

KnowledgeBase RationalClosure::level(int i) const {
  KnowledgeBase e = strict_;
  const int k = std::min(i, static_cast<int>(table_.sequence.size()) - 1);
  for (const ConceptInclusion& ax : table_.sequence[k]) e.addInclusion(ax);
  return e;
}

bool RationalClosure::exceptionalAt(const Concept& c, int i) {
  const int k = std::min(i, static_cast<int>(table_.sequence.size()) - 1);
  auto key = std::make_pair(k, nnf(c));
  auto it = memo_.find(key);
  if (it != memo_.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  ++stats_.entailment_calls;
  TableauStats ts;
  const bool r = isExceptional(level(k), key.second, opts_, &ts);
  addTo(stats_.tableau, ts);
  memo_.emplace(std::move(key), r);
  return r;
}

Rank RationalClosure::rank(const Concept& c) {
  const Concept key = nnf(c);
  auto it = table_.ranks.find(key);
  if (it != table_.ranks.end()) return it->second;
  Rank r = Rank::infinite();
  for (int i = 0; i <= table_.fixpointIndex; ++i) {
    if (!exceptionalAt(key, i)) {
      r = Rank::of(i);
      break;
    }
  }
  table_.ranks.emplace(key, r);
  return r;
}

bool RationalClosure::inClosure(const SubsumptionQuery& q) {
  if (q.lhs.is(ConceptKind::kTyp)) {
    const Concept& c = q.lhs.operand();
    const Rank rc = rank(c);
    if (rc.isInfinite()) return true;
    return rc < rank(Concept::And(c, Concept::Not(q.rhs)));
  }
  // Strict part plus the Typ-free assertions.
  KnowledgeBase f = strict_;
  for (const Assertion& a : kb_.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      if (!ca->expr.containsTyp()) f.addAssertion(*ca);
    } else {
      f.addAssertion(std::get<RoleAssertion>(a));
    }
  }
  ++stats_.entailment_calls;
  TableauStats ts;
  const bool r = entailsInclusion(f, q.lhs, q.rhs, opts_.tableau, &ts);
  addTo(stats_.tableau, ts);
  return r;
}

RankTable computeRankTable(const KnowledgeBase& kb,
                           const std::vector<Concept>& extra,
                           const TypOptions& opts) {
  return RationalClosure(kb, extra, opts).table();
}

bool inClosureTBox(const KnowledgeBase& kb, const SubsumptionQuery& q,
                   const TypOptions& opts) {
  RationalClosure rc(kb, {}, opts);
  return rc.inClosure(q);
}

}  // namespace dlrc
