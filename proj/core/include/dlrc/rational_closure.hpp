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

// Rational closure of a TBox: exceptionality, the E_i sequence, ranks of
// concepts and closure membership of inclusions.

#ifndef DLRC_RATIONAL_CLOSURE_HPP_
#define DLRC_RATIONAL_CLOSURE_HPP_

#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dlrc/encoding.hpp"
#include "dlrc/knowledge_base.hpp"

namespace dlrc {

// A natural number or infinity; infinity compares above every natural and is
// not below itself.
class Rank {
 public:
  constexpr Rank() = default;
  static constexpr Rank of(int v) { return Rank(v); }
  static constexpr Rank infinite() { return Rank(INT_MAX); }

  bool isInfinite() const { return v_ == INT_MAX; }
  int value() const { return v_; }
  std::string str() const;

  friend constexpr auto operator<=>(Rank, Rank) = default;

 private:
  constexpr explicit Rank(int v) : v_(v) {}
  int v_ = 0;
};

struct RankTable {
  // Defeasible part of E_0 .. E_n. Every E_i also holds all strict
  // inclusions and role axioms of the KB.
  std::vector<std::vector<ConceptInclusion>> sequence;
  int fixpointIndex = 0;
  // Keyed by NNF of the concept.
  std::map<Concept, Rank> ranks;
};

struct ClosureStats {
  std::uint64_t entailment_calls = 0;
  std::uint64_t memo_hits = 0;
  TableauStats tableau;
};

// e |= T(top) <= not c, decided on the preferential encoding of e.
// e must have an empty ABox.
bool isExceptional(const KnowledgeBase& e, const Concept& c,
                   const TypOptions& opts = {}, TableauStats* stats = nullptr);

class RationalClosure {
 public:
  // Builds the E_i sequence and ranks the lhs of every defeasible inclusion
  // and every concept in extra.
  explicit RationalClosure(const KnowledgeBase& kb,
                           const std::vector<Concept>& extra = {},
                           const TypOptions& opts = {});

  const KnowledgeBase& kb() const { return kb_; }
  const RankTable& table() const { return table_; }
  const ClosureStats& stats() const { return stats_; }

  // E_i as a TBox-only knowledge base; i past the fixpoint gives E_n.
  KnowledgeBase level(int i) const;

  // Computed on demand and added to the table.
  Rank rank(const Concept& c);

  // T(C) <= D: rank(C) < rank(C and not D) or rank(C) infinite.
  // C <= D: the strict part of the KB (with its Typ-free ABox) entails it.
  bool inClosure(const SubsumptionQuery& q);

 private:
  bool exceptionalAt(const Concept& c, int i);

  KnowledgeBase kb_;
  KnowledgeBase strict_;
  TypOptions opts_;
  RankTable table_;
  ClosureStats stats_;
  std::map<std::pair<int, Concept>, bool> memo_;
};

RankTable computeRankTable(const KnowledgeBase& kb,
                           const std::vector<Concept>& extra = {},
                           const TypOptions& opts = {});

bool inClosureTBox(const KnowledgeBase& kb, const SubsumptionQuery& q,
                   const TypOptions& opts = {});

}  // namespace dlrc

#endif  // DLRC_RATIONAL_CLOSURE_HPP_
