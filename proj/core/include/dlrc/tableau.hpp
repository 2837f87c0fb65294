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

// Tableau decision procedure for SHIQ knowledge bases with an ABox, extended
// with the universal role. Typicality must have been compiled away.

#ifndef DLRC_TABLEAU_HPP_
#define DLRC_TABLEAU_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dlrc/knowledge_base.hpp"

namespace dlrc {

// A finite interpretation read off a complete completion graph without
// blocked nodes. Elements are 0..domain_size-1.
struct FiniteModel {
  int domain_size = 0;
  std::map<std::string, std::set<int>> atoms;
  // Extensions of named roles, already closed under hierarchy and transitivity.
  std::map<std::string, std::set<std::pair<int, int>>> roles;
  std::map<std::string, int> individuals;
};

struct TableauStats {
  std::uint64_t rule_applications = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t nodes_created = 0;
  std::uint64_t branch_points = 0;
};

struct Verdict {
  bool satisfiable = false;
  std::optional<FiniteModel> witness;
  TableauStats stats;
};

struct TableauOptions {
  // Line-based dump of the final completion graph (and clashes) if set.
  std::ostream* trace = nullptr;
  std::uint64_t max_nodes = 200000;
  std::uint64_t max_rule_applications = 50000000;
  // Complete graphs that fail to fold into a finite model before the search
  // gives up on a witness. 0 skips witness extraction.
  unsigned witness_attempts = 16;
};

// KB consistency. Throws KbError if the KB contains typicality.
Verdict isSatisfiable(const KnowledgeBase& kb, const TableauOptions& opts = {});

// KB consistency with extra fresh anonymous roots carrying the given concepts.
Verdict isSatisfiableWithRoots(const KnowledgeBase& kb,
                               const std::vector<Concept>& fresh_roots,
                               const TableauOptions& opts = {});

// kb |= lhs <= rhs, i.e. lhs and not rhs is unsatisfiable w.r.t. kb.
bool entailsInclusion(const KnowledgeBase& kb, const Concept& lhs,
                      const Concept& rhs, const TableauOptions& opts = {},
                      TableauStats* stats = nullptr);

// kb |= C(a). Throws KbError when a is not an individual of kb.
bool entailsAssertion(const KnowledgeBase& kb, const std::string& individual,
                      const Concept& c, const TableauOptions& opts = {},
                      TableauStats* stats = nullptr);

}  // namespace dlrc

#endif  // DLRC_TABLEAU_HPP_
