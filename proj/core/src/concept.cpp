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

#include "dlrc/concept.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "dlrc/error.hpp"

namespace dlrc {

namespace {

const char kUniversalName[] = "_U";

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Role Role::universal() { return Role(kUniversalName); }

bool Role::isUniversal() const { return name == kUniversalName; }

Role Role::inverse() const {
  if (isUniversal()) return *this;
  return Role(name, !inverted);
}

struct Concept::Node {
  ConceptKind kind;
  std::string name;
  Role role;
  unsigned n = 0;
  std::vector<Concept> ops;
  bool has_typ = false;
  std::size_t size = 1;
  std::size_t hash = 0;
};

Concept::Concept() : Concept(Top()) {}

Concept::Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Concept Concept::make(ConceptKind kind, std::string name, Role role,
                      unsigned n, std::vector<Concept> ops) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->role = std::move(role);
  node->n = n;
  node->ops = std::move(ops);
  std::size_t h = mix(0, static_cast<std::size_t>(kind));
  h = mix(h, std::hash<std::string>()(node->name));
  h = mix(h, std::hash<std::string>()(node->role.name));
  h = mix(h, node->role.inverted ? 1 : 2);
  h = mix(h, n);
  for (const Concept& c : node->ops) {
    if (c.containsTyp()) {
      throw KbError(kind == ConceptKind::kTyp
                        ? "nested typicality"
                        : "typicality operator below the top level");
    }
    h = mix(h, c.hash());
    node->size += c.size();
  }
  node->has_typ = kind == ConceptKind::kTyp;
  node->hash = h;
  return Concept(std::shared_ptr<const Node>(std::move(node)));
}

Concept Concept::Top() {
  static const Concept top = make(ConceptKind::kTop, "", Role(), 0, {});
  return top;
}

Concept Concept::Bottom() {
  static const Concept bot = make(ConceptKind::kBottom, "", Role(), 0, {});
  return bot;
}

Concept Concept::Atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  return make(ConceptKind::kAtom, std::move(name), Role(), 0, {});
}

Concept Concept::Not(Concept c) {
  return make(ConceptKind::kNot, "", Role(), 0, {std::move(c)});
}

namespace {

// Flatten, sort and deduplicate operands of an n-ary And (is_and) or Or.
std::vector<Concept> normaliseOperands(std::vector<Concept> cs, bool is_and,
                                       bool* absorbed) {
  const ConceptKind self = is_and ? ConceptKind::kAnd : ConceptKind::kOr;
  const ConceptKind unit = is_and ? ConceptKind::kTop : ConceptKind::kBottom;
  const ConceptKind zero = is_and ? ConceptKind::kBottom : ConceptKind::kTop;
  std::vector<Concept> flat;
  flat.reserve(cs.size());
  for (Concept& c : cs) {
    if (c.is(self)) {
      for (const Concept& d : c.operands()) flat.push_back(d);
    } else if (c.is(unit)) {
      continue;
    } else if (c.is(zero)) {
      *absorbed = true;
      return {};
    } else {
      flat.push_back(std::move(c));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  return flat;
}

}  // namespace

Concept Concept::And(std::vector<Concept> cs) {
  bool absorbed = false;
  auto ops = normaliseOperands(std::move(cs), true, &absorbed);
  if (absorbed) return Bottom();
  if (ops.empty()) return Top();
  if (ops.size() == 1) return ops.front();
  return make(ConceptKind::kAnd, "", Role(), 0, std::move(ops));
}

Concept Concept::And(Concept a, Concept b) {
  return And(std::vector<Concept>{std::move(a), std::move(b)});
}

Concept Concept::Or(std::vector<Concept> cs) {
  bool absorbed = false;
  auto ops = normaliseOperands(std::move(cs), false, &absorbed);
  if (absorbed) return Top();
  if (ops.empty()) return Bottom();
  if (ops.size() == 1) return ops.front();
  return make(ConceptKind::kOr, "", Role(), 0, std::move(ops));
}

Concept Concept::Or(Concept a, Concept b) {
  return Or(std::vector<Concept>{std::move(a), std::move(b)});
}

Concept Concept::Exists(Role r, Concept c) {
  return make(ConceptKind::kExists, "", std::move(r), 0, {std::move(c)});
}

Concept Concept::Forall(Role r, Concept c) {
  return make(ConceptKind::kForall, "", std::move(r), 0, {std::move(c)});
}

Concept Concept::AtLeast(unsigned n, Role r, Concept c) {
  if (r.isUniversal()) throw KbError("number restriction on universal role");
  return make(ConceptKind::kAtLeast, "", std::move(r), n, {std::move(c)});
}

Concept Concept::AtMost(unsigned n, Role r, Concept c) {
  if (r.isUniversal()) throw KbError("number restriction on universal role");
  return make(ConceptKind::kAtMost, "", std::move(r), n, {std::move(c)});
}

Concept Concept::Typ(Concept c) {
  return make(ConceptKind::kTyp, "", Role(), 0, {std::move(c)});
}

ConceptKind Concept::kind() const { return node_->kind; }
const std::string& Concept::name() const { return node_->name; }
const Role& Concept::role() const { return node_->role; }
unsigned Concept::cardinality() const { return node_->n; }
std::span<const Concept> Concept::operands() const { return node_->ops; }

const Concept& Concept::operand() const {
  if (node_->ops.empty()) throw std::logic_error("concept has no operand");
  return node_->ops.front();
}

bool Concept::containsTyp() const { return node_->has_typ; }
std::size_t Concept::size() const { return node_->size; }
std::size_t Concept::hash() const { return node_->hash; }

bool operator==(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Concept::Node& x = *a.node_;
  const Concept::Node& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.role <=> y.role; c != 0) return c;
  if (auto c = x.n <=> y.n; c != 0) return c;
  return std::lexicographical_compare_three_way(x.ops.begin(), x.ops.end(),
                                                y.ops.begin(), y.ops.end());
}

namespace {

Concept nnfOf(const Concept& c, bool negated);

std::vector<Concept> nnfAll(std::span<const Concept> cs, bool negated) {
  std::vector<Concept> out;
  out.reserve(cs.size());
  for (const Concept& d : cs) out.push_back(nnfOf(d, negated));
  return out;
}

Concept makeAtLeast(unsigned n, const Role& r, Concept c) {
  if (n == 0) return Concept::Top();
  if (c.is(ConceptKind::kBottom)) return Concept::Bottom();
  if (n == 1) return Concept::Exists(r, std::move(c));
  return Concept::AtLeast(n, r, std::move(c));
}

Concept makeAtMost(unsigned n, const Role& r, Concept c) {
  if (c.is(ConceptKind::kBottom)) return Concept::Top();
  if (n == 0) return Concept::Forall(r, nnfOf(c, true));
  return Concept::AtMost(n, r, std::move(c));
}

Concept makeExists(const Role& r, Concept c) {
  if (c.is(ConceptKind::kBottom)) return Concept::Bottom();
  return Concept::Exists(r, std::move(c));
}

Concept makeForall(const Role& r, Concept c) {
  if (c.is(ConceptKind::kTop)) return Concept::Top();
  return Concept::Forall(r, std::move(c));
}

Concept nnfOf(const Concept& c, bool negated) {
  switch (c.kind()) {
    case ConceptKind::kTop:
      return negated ? Concept::Bottom() : c;
    case ConceptKind::kBottom:
      return negated ? Concept::Top() : c;
    case ConceptKind::kAtom:
      return negated ? Concept::Not(c) : c;
    case ConceptKind::kNot:
      return nnfOf(c.operand(), !negated);
    case ConceptKind::kAnd:
      return negated ? Concept::Or(nnfAll(c.operands(), true))
                     : Concept::And(nnfAll(c.operands(), false));
    case ConceptKind::kOr:
      return negated ? Concept::And(nnfAll(c.operands(), true))
                     : Concept::Or(nnfAll(c.operands(), false));
    case ConceptKind::kExists:
      return negated ? makeForall(c.role(), nnfOf(c.operand(), true))
                     : makeExists(c.role(), nnfOf(c.operand(), false));
    case ConceptKind::kForall:
      return negated ? makeExists(c.role(), nnfOf(c.operand(), true))
                     : makeForall(c.role(), nnfOf(c.operand(), false));
    case ConceptKind::kAtLeast:
      // not (>= 0 R.C) is bottom; otherwise not (>= n R.C) = <= n-1 R.C.
      if (negated) {
        if (c.cardinality() == 0) return Concept::Bottom();
        return makeAtMost(c.cardinality() - 1, c.role(),
                          nnfOf(c.operand(), false));
      }
      return makeAtLeast(c.cardinality(), c.role(), nnfOf(c.operand(), false));
    case ConceptKind::kAtMost:
      if (negated) {
        return makeAtLeast(c.cardinality() + 1, c.role(),
                           nnfOf(c.operand(), false));
      }
      return makeAtMost(c.cardinality(), c.role(), nnfOf(c.operand(), false));
    case ConceptKind::kTyp:
      break;
  }
  throw std::invalid_argument("nnf is undefined on typicality concepts");
}

}  // namespace

Concept nnf(const Concept& c) {
  if (c.containsTyp()) {
    throw std::invalid_argument("nnf is undefined on typicality concepts");
  }
  return nnfOf(c, false);
}

Concept complement(const Concept& c) { return nnf(Concept::Not(c)); }

}  // namespace dlrc
