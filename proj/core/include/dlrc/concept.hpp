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

#ifndef DLRC_CONCEPT_HPP_
#define DLRC_CONCEPT_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dlrc {

// Names starting with this prefix are reserved for symbols introduced by the
// encodings. The parser rejects them in user input unless told otherwise.
inline constexpr char kReservedPrefix = '_';

// Atomic role or its inverse.
struct Role {
  std::string name;
  bool inverted = false;

  Role() = default;
  explicit Role(std::string n, bool inv = false)
      : name(std::move(n)), inverted(inv) {}

  // The universal role U. It is its own inverse.
  static Role universal();
  bool isUniversal() const;

  Role inverse() const;

  friend bool operator==(const Role&, const Role&) = default;
  friend auto operator<=>(const Role&, const Role&) = default;
};

enum class ConceptKind : std::uint8_t {
  kTop,
  kBottom,
  kAtom,
  kNot,
  kAnd,
  kOr,
  kExists,
  kForall,
  kAtLeast,
  kAtMost,
  kTyp,
};

// Immutable, structurally shared concept expression.
//
// And/Or are kept flattened, duplicate free and sorted, so two conjunctions
// over the same operands compare equal. Typ may only be the outermost
// constructor; building a concept with a Typ below the root throws.
class Concept {
 public:
  Concept();  // top

  static Concept Top();
  static Concept Bottom();
  static Concept Atom(std::string name);
  static Concept Not(Concept c);
  static Concept And(std::vector<Concept> cs);
  static Concept And(Concept a, Concept b);
  static Concept Or(std::vector<Concept> cs);
  static Concept Or(Concept a, Concept b);
  static Concept Exists(Role r, Concept c);
  static Concept Forall(Role r, Concept c);
  static Concept AtLeast(unsigned n, Role r, Concept c);
  static Concept AtMost(unsigned n, Role r, Concept c);
  static Concept Typ(Concept c);

  ConceptKind kind() const;
  bool is(ConceptKind k) const { return kind() == k; }

  // Atom name. Empty for other kinds.
  const std::string& name() const;
  // Role of a quantifier or number restriction.
  const Role& role() const;
  unsigned cardinality() const;
  // Operands: one for Not/Typ/quantifiers, several for And/Or.
  std::span<const Concept> operands() const;
  const Concept& operand() const;

  bool containsTyp() const;
  // Number of constructor occurrences, used for size accounting.
  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> node);
  static Concept make(ConceptKind kind, std::string name, Role role,
                      unsigned n, std::vector<Concept> ops);

  std::shared_ptr<const Node> node_;
};

struct ConceptHash {
  std::size_t operator()(const Concept& c) const { return c.hash(); }
};

// Negation normal form. Throws std::invalid_argument on concepts with Typ.
// Number restrictions are normalised so that >=1 R.C becomes some R . C,
// <=0 R.C becomes only R . not C and >=0 R.C becomes top.
Concept nnf(const Concept& c);

// nnf(not c).
Concept complement(const Concept& c);

// Printing in the .dkb surface syntax; defined with the parser.
std::string printConcept(const Concept& c);
std::string printRole(const Role& r);
std::ostream& operator<<(std::ostream& os, const Concept& c);
std::ostream& operator<<(std::ostream& os, const Role& r);

}  // namespace dlrc

#endif  // DLRC_CONCEPT_HPP_
