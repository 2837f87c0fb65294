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

#include <ostream>
#include <sstream>

#include "dlrc/parser.hpp"

namespace dlrc {

namespace {

// Precedence levels: or < and < unary.
enum Prec { kOrPrec = 1, kAndPrec = 2, kUnaryPrec = 3 };

void print(std::ostream& os, const Concept& c, int ctx);

void printJoined(std::ostream& os, const Concept& c, const char* sep,
                 int operand_prec) {
  bool first = true;
  for (const Concept& d : c.operands()) {
    if (!first) os << sep;
    first = false;
    print(os, d, operand_prec);
  }
}

void print(std::ostream& os, const Concept& c, int ctx) {
  switch (c.kind()) {
    case ConceptKind::kTop:
      os << "top";
      return;
    case ConceptKind::kBottom:
      os << "bot";
      return;
    case ConceptKind::kAtom:
      os << c.name();
      return;
    case ConceptKind::kNot:
      os << "not ";
      print(os, c.operand(), kUnaryPrec);
      return;
    case ConceptKind::kAnd:
      if (ctx > kAndPrec) os << '(';
      printJoined(os, c, " and ", kUnaryPrec);
      if (ctx > kAndPrec) os << ')';
      return;
    case ConceptKind::kOr:
      if (ctx > kOrPrec) os << '(';
      printJoined(os, c, " or ", kAndPrec);
      if (ctx > kOrPrec) os << ')';
      return;
    case ConceptKind::kExists:
    case ConceptKind::kForall:
      os << (c.is(ConceptKind::kExists) ? "some " : "only ")
         << printRole(c.role()) << " . ";
      print(os, c.operand(), kUnaryPrec);
      return;
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost:
      os << (c.is(ConceptKind::kAtLeast) ? "atleast " : "atmost ")
         << c.cardinality() << ' ' << printRole(c.role()) << " . ";
      print(os, c.operand(), kUnaryPrec);
      return;
    case ConceptKind::kTyp:
      os << "T(";
      print(os, c.operand(), kOrPrec);
      os << ')';
      return;
  }
}

}  // namespace

std::string printRole(const Role& r) {
  return r.inverted ? "inv(" + r.name + ")" : r.name;
}

std::string printConcept(const Concept& c) {
  std::ostringstream os;
  print(os, c, kOrPrec);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Concept& c) {
  return os << printConcept(c);
}

std::ostream& operator<<(std::ostream& os, const Role& r) {
  return os << printRole(r);
}

std::string printKB(const KnowledgeBase& kb) {
  std::ostringstream os;
  const RBox& rb = kb.rbox();
  for (const std::string& r : rb.roles()) {
    if (rb.transitiveRoles().count(r) == 0) os << "role " << r << '\n';
  }
  for (const std::string& r : rb.transitiveRoles()) os << "trans " << r << '\n';
  for (const RoleInclusion& ri : rb.inclusions()) {
    os << "role " << printRole(ri.sub) << " <= " << printRole(ri.sup) << '\n';
  }
  for (const ConceptInclusion& ax : kb.tbox()) {
    os << printConcept(ax.lhs) << " <= " << printConcept(ax.rhs) << '\n';
  }
  for (const Assertion& a : kb.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      os << ca->individual << " : " << printConcept(ca->expr) << '\n';
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      os << '(' << ra.subject << ", " << ra.object
         << ") : " << printRole(ra.role) << '\n';
    }
  }
  return os.str();
}

std::string printQuery(const Query& q) {
  if (auto* s = std::get_if<SubsumptionQuery>(&q)) {
    return printConcept(s->lhs) + " <= " + printConcept(s->rhs) + " ?";
  }
  if (auto* a = std::get_if<AssertionQuery>(&q)) {
    return a->individual + " : " + printConcept(a->expr) + " ?";
  }
  return "sat " + printConcept(std::get<SatisfiabilityQuery>(q).expr) +
         " ?";
}

}  // namespace dlrc
