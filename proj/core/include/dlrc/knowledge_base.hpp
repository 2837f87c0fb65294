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

#ifndef DLRC_KNOWLEDGE_BASE_HPP_
#define DLRC_KNOWLEDGE_BASE_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "dlrc/concept.hpp"

namespace dlrc {

// C <= D, or T(C) <= D when lhs is a Typ concept.
struct ConceptInclusion {
  Concept lhs;
  Concept rhs;

  bool isDefeasible() const { return lhs.is(ConceptKind::kTyp); }
  friend bool operator==(const ConceptInclusion&,
                         const ConceptInclusion&) = default;
};

struct RoleInclusion {
  Role sub;
  Role sup;
  friend bool operator==(const RoleInclusion&, const RoleInclusion&) = default;
};

struct ConceptAssertion {
  Concept expr;
  std::string individual;
  friend bool operator==(const ConceptAssertion&,
                         const ConceptAssertion&) = default;
};

// R(subject, object). Stored with a non-inverted role.
struct RoleAssertion {
  Role role;
  std::string subject;
  std::string object;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;
using Axiom =
    std::variant<ConceptInclusion, RoleInclusion, ConceptAssertion, RoleAssertion>;

class RBox {
 public:
  void declareRole(const std::string& name);
  void declareTransitive(const std::string& name);
  void addInclusion(const Role& sub, const Role& sup);

  const std::set<std::string>& roles() const { return roles_; }
  const std::set<std::string>& transitiveRoles() const { return transitive_; }
  const std::vector<RoleInclusion>& inclusions() const { return inclusions_; }

  bool isTransitive(const Role& r) const;
  // Reflexive-transitive closure of the inclusions, closed under inverse.
  bool isSubRole(const Role& sub, const Role& sup) const;
  // True iff no transitive role is a sub-role of r.
  bool isSimple(const Role& r) const;
  // All roles (both directions) that are sub-roles of r.
  std::vector<Role> subRolesOf(const Role& r) const;

  friend bool operator==(const RBox& a, const RBox& b) {
    return a.roles_ == b.roles_ && a.transitive_ == b.transitive_ &&
           a.inclusions_ == b.inclusions_;
  }

 private:
  void rebuild() const;

  std::set<std::string> roles_;
  std::set<std::string> transitive_;
  std::vector<RoleInclusion> inclusions_;
  // Lazily computed closure: sub -> set of supers.
  mutable bool dirty_ = true;
  mutable std::map<Role, std::set<Role>> supers_;
};

class KnowledgeBase {
 public:
  // Throws KbError when T occurs on the right-hand side.
  void addInclusion(ConceptInclusion ax);
  void addInclusion(Concept lhs, Concept rhs) {
    addInclusion(ConceptInclusion{std::move(lhs), std::move(rhs)});
  }
  void addAssertion(ConceptAssertion ax);
  // R^-(a, b) is stored as R(b, a).
  void addAssertion(RoleAssertion ax);

  RBox& rbox() { return rbox_; }
  const RBox& rbox() const { return rbox_; }
  const std::vector<ConceptInclusion>& tbox() const { return tbox_; }
  const std::vector<Assertion>& abox() const { return abox_; }
  // Individuals in order of first appearance.
  const std::vector<std::string>& individuals() const { return individuals_; }
  bool hasIndividual(const std::string& name) const;

  // Checks that number restrictions only use simple roles. Throws KbError.
  void validate() const;

  bool hasTypicality() const;

  // Copy with the ABox dropped.
  KnowledgeBase tboxOnly() const;

  // Symbol count of all axioms.
  std::size_t size() const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;

 private:
  void noteIndividual(const std::string& name);
  void noteRoles(const Concept& c);

  std::vector<ConceptInclusion> tbox_;
  RBox rbox_;
  std::vector<Assertion> abox_;
  std::vector<std::string> individuals_;
};

// Calls fn on every number restriction occurring in c.
void forEachNumberRestriction(const Concept& c,
                              const std::function<void(const Concept&)>& fn);

// K_F: strict inclusions, role axioms and the ABox. K_D: defeasible inclusions.
struct KbSplit {
  std::vector<Axiom> strict;
  std::vector<ConceptInclusion> defeasible;
};
KbSplit split(const KnowledgeBase& kb);

// The Typ-free subconcepts of a KB (and extra concepts) in NNF, closed under
// complement, in a deterministic order.
struct SubconceptSet {
  std::vector<Concept> concepts;
  // Number of distinct subconcepts before adding complements.
  std::size_t base_count = 0;

  bool contains(const Concept& c) const;
};
SubconceptSet subconcepts(const KnowledgeBase& kb,
                          const std::vector<Concept>& extra = {});

// Adds the NNF subterms of c (Typ stripped) to out.
void collectSubterms(const Concept& c, std::set<Concept>& out);

}  // namespace dlrc

#endif  // DLRC_KNOWLEDGE_BASE_HPP_
