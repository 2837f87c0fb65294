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

#include "dlrc/knowledge_base.hpp"

#include <algorithm>
#include <deque>

#include "dlrc/error.hpp"

namespace dlrc {

void RBox::declareRole(const std::string& name) {
  if (name == Role::universal().name) return;
  roles_.insert(name);
  dirty_ = true;
}

void RBox::declareTransitive(const std::string& name) {
  declareRole(name);
  transitive_.insert(name);
  dirty_ = true;
}

void RBox::addInclusion(const Role& sub, const Role& sup) {
  declareRole(sub.name);
  declareRole(sup.name);
  RoleInclusion ri{sub, sup};
  if (std::find(inclusions_.begin(), inclusions_.end(), ri) ==
      inclusions_.end()) {
    inclusions_.push_back(ri);
  }
  dirty_ = true;
}

bool RBox::isTransitive(const Role& r) const {
  return transitive_.count(r.name) > 0;
}

void RBox::rebuild() const {
  if (!dirty_) return;
  supers_.clear();
  std::map<Role, std::vector<Role>> direct;
  for (const RoleInclusion& ri : inclusions_) {
    direct[ri.sub].push_back(ri.sup);
    direct[ri.sub.inverse()].push_back(ri.sup.inverse());
  }
  for (const std::string& name : roles_) {
    for (bool inv : {false, true}) {
      Role start(name, inv);
      std::set<Role>& seen = supers_[start];
      std::deque<Role> queue{start};
      seen.insert(start);
      while (!queue.empty()) {
        Role r = queue.front();
        queue.pop_front();
        auto it = direct.find(r);
        if (it == direct.end()) continue;
        for (const Role& s : it->second) {
          if (seen.insert(s).second) queue.push_back(s);
        }
      }
    }
  }
  dirty_ = false;
}

bool RBox::isSubRole(const Role& sub, const Role& sup) const {
  if (sub == sup || sup.isUniversal()) return true;
  rebuild();
  auto it = supers_.find(sub);
  if (it == supers_.end()) return false;
  return it->second.count(sup) > 0;
}

bool RBox::isSimple(const Role& r) const {
  for (const std::string& t : transitive_) {
    if (isSubRole(Role(t), r) || isSubRole(Role(t, true), r)) return false;
  }
  return true;
}

std::vector<Role> RBox::subRolesOf(const Role& r) const {
  std::vector<Role> out;
  for (const std::string& name : roles_) {
    for (bool inv : {false, true}) {
      Role s(name, inv);
      if (isSubRole(s, r)) out.push_back(s);
    }
  }
  return out;
}

void KnowledgeBase::noteRoles(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kExists:
    case ConceptKind::kForall:
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost:
      rbox_.declareRole(c.role().name);
      break;
    default:
      break;
  }
  for (const Concept& d : c.operands()) noteRoles(d);
}

void KnowledgeBase::noteIndividual(const std::string& name) {
  if (!hasIndividual(name)) individuals_.push_back(name);
}

bool KnowledgeBase::hasIndividual(const std::string& name) const {
  return std::find(individuals_.begin(), individuals_.end(), name) !=
         individuals_.end();
}

void KnowledgeBase::addInclusion(ConceptInclusion ax) {
  if (ax.rhs.containsTyp()) throw KbError("T on right-hand side");
  noteRoles(ax.lhs);
  noteRoles(ax.rhs);
  tbox_.push_back(std::move(ax));
}

void KnowledgeBase::addAssertion(ConceptAssertion ax) {
  noteRoles(ax.expr);
  noteIndividual(ax.individual);
  abox_.emplace_back(std::move(ax));
}

void KnowledgeBase::addAssertion(RoleAssertion ax) {
  if (ax.role.isUniversal()) throw KbError("assertion on the universal role");
  if (ax.role.inverted) {
    ax.role = ax.role.inverse();
    std::swap(ax.subject, ax.object);
  }
  rbox_.declareRole(ax.role.name);
  noteIndividual(ax.subject);
  noteIndividual(ax.object);
  abox_.emplace_back(std::move(ax));
}

void forEachNumberRestriction(const Concept& c,
                              const std::function<void(const Concept&)>& fn) {
  if (c.is(ConceptKind::kAtLeast) || c.is(ConceptKind::kAtMost)) fn(c);
  for (const Concept& d : c.operands()) forEachNumberRestriction(d, fn);
}

void KnowledgeBase::validate() const {
  auto check = [this](const Concept& nr) {
    if (!rbox_.isSimple(nr.role())) {
      throw KbError("transitive role in number restriction: " +
                    nr.role().name);
    }
  };
  for (const ConceptInclusion& ax : tbox_) {
    forEachNumberRestriction(ax.lhs, check);
    forEachNumberRestriction(ax.rhs, check);
  }
  for (const Assertion& a : abox_) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      forEachNumberRestriction(ca->expr, check);
    }
  }
}

bool KnowledgeBase::hasTypicality() const {
  for (const ConceptInclusion& ax : tbox_) {
    if (ax.isDefeasible()) return true;
  }
  for (const Assertion& a : abox_) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      if (ca->expr.containsTyp()) return true;
    }
  }
  return false;
}

KnowledgeBase KnowledgeBase::tboxOnly() const {
  KnowledgeBase out;
  out.tbox_ = tbox_;
  out.rbox_ = rbox_;
  return out;
}

std::size_t KnowledgeBase::size() const {
  std::size_t n = 0;
  for (const ConceptInclusion& ax : tbox_) n += ax.lhs.size() + ax.rhs.size();
  n += rbox_.inclusions().size() * 2 + rbox_.transitiveRoles().size();
  for (const Assertion& a : abox_) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      n += ca->expr.size() + 1;
    } else {
      n += 3;
    }
  }
  return n;
}

KbSplit split(const KnowledgeBase& kb) {
  KbSplit out;
  for (const ConceptInclusion& ax : kb.tbox()) {
    if (ax.isDefeasible()) {
      out.defeasible.push_back(ax);
    } else {
      out.strict.emplace_back(ax);
    }
  }
  for (const RoleInclusion& ri : kb.rbox().inclusions()) {
    out.strict.emplace_back(ri);
  }
  for (const Assertion& a : kb.abox()) {
    std::visit([&out](const auto& x) { out.strict.emplace_back(x); }, a);
  }
  return out;
}

namespace {

void collectNnf(const Concept& c, std::set<Concept>& out) {
  if (!out.insert(c).second) return;
  for (const Concept& d : c.operands()) collectNnf(d, out);
}

}  // namespace

void collectSubterms(const Concept& c, std::set<Concept>& out) {
  const Concept& base = c.is(ConceptKind::kTyp) ? c.operand() : c;
  collectNnf(nnf(base), out);
}

bool SubconceptSet::contains(const Concept& c) const {
  return std::binary_search(concepts.begin(), concepts.end(), c);
}

SubconceptSet subconcepts(const KnowledgeBase& kb,
                          const std::vector<Concept>& extra) {
  std::set<Concept> base;
  for (const ConceptInclusion& ax : kb.tbox()) {
    collectSubterms(ax.lhs, base);
    collectSubterms(ax.rhs, base);
  }
  for (const Assertion& a : kb.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      collectSubterms(ca->expr, base);
    }
  }
  for (const Concept& c : extra) collectSubterms(c, base);

  SubconceptSet out;
  out.base_count = base.size();
  std::set<Concept> all = base;
  for (const Concept& c : base) all.insert(complement(c));
  out.concepts.assign(all.begin(), all.end());
  return out;
}

}  // namespace dlrc
