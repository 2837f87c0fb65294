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

#include "dlrc/encoding.hpp"

#include <algorithm>
#include <set>

#include "dlrc/error.hpp"

namespace dlrc {

namespace {

const char* const kChainRole = "_R";
const char* const kQueryIndividual = "_q";

Concept typSource(const Concept& c) { return nnf(c.operand()); }

void noteSource(const Concept& c, std::set<Concept>& out) {
  if (c.is(ConceptKind::kTyp)) out.insert(typSource(c));
}

std::set<Concept> typicalSources(const KnowledgeBase& kb) {
  std::set<Concept> out;
  for (const ConceptInclusion& ax : kb.tbox()) noteSource(ax.lhs, out);
  for (const Assertion& a : kb.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) noteSource(ca->expr, out);
  }
  return out;
}

std::vector<BoxAtom> makeBoxes(const std::set<Concept>& sources) {
  std::vector<BoxAtom> out;
  int k = 0;
  for (const Concept& s : sources) {
    ++k;
    std::string name = s.is(ConceptKind::kAtom)
                           ? "_Box_not_" + s.name()
                           : "_Box_not_" + std::to_string(k);
    out.push_back({s, std::move(name)});
  }
  return out;
}

const BoxAtom* findBox(const std::vector<BoxAtom>& boxes, const Concept& c) {
  const Concept key = nnf(c);
  for (const BoxAtom& b : boxes) {
    if (b.source == key) return &b;
  }
  return nullptr;
}

Concept rewrite(const Concept& c, const std::vector<BoxAtom>& boxes) {
  if (!c.is(ConceptKind::kTyp)) return c;
  const BoxAtom* b = findBox(boxes, c.operand());
  if (b == nullptr) throw KbError("missing box atom for " + printConcept(c));
  return b->typical();
}

// Strict part of kb plus the rewritten defeasible inclusions and ABox.
KnowledgeBase rewriteKb(const KnowledgeBase& kb,
                        const std::vector<BoxAtom>& boxes) {
  KnowledgeBase out;
  out.rbox() = kb.rbox();
  for (const ConceptInclusion& ax : kb.tbox()) {
    out.addInclusion(rewrite(ax.lhs, boxes), ax.rhs);
  }
  for (const Assertion& a : kb.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      out.addAssertion(ConceptAssertion{rewrite(ca->expr, boxes),
                                        ca->individual});
    } else {
      out.addAssertion(std::get<RoleAssertion>(a));
    }
  }
  return out;
}

Concept notC(const Concept& c) { return Concept::Not(c); }

Concept onlyU(const Concept& c) {
  return Concept::Forall(Role::universal(), c);
}

void accumulate(TableauStats* out, const TableauStats& s) {
  if (out == nullptr) return;
  out->rule_applications += s.rule_applications;
  out->backtracks += s.backtracks;
  out->nodes_created += s.nodes_created;
  out->branch_points += s.branch_points;
}

}  // namespace

const BoxAtom* PreferentialEncoding::boxFor(const Concept& source) const {
  return findBox(boxes, source);
}

const BoxAtom* RankedScaffold::boxFor(const Concept& source) const {
  return findBox(boxes, source);
}

Concept RankedScaffold::level(int i) const {
  return Concept::Atom(i == 0 ? zero : levels.at(i - 1));
}

PreferentialEncoding encodePreferential(const KnowledgeBase& kb,
                                        const SubsumptionQuery& query) {
  if (!kb.abox().empty()) {
    throw KbError("preferential encoding needs an empty ABox");
  }
  std::set<Concept> sources = typicalSources(kb);
  noteSource(query.lhs, sources);

  PreferentialEncoding enc;
  enc.chain = Role(kChainRole);
  enc.boxes = makeBoxes(sources);
  enc.kb = rewriteKb(kb, enc.boxes);
  enc.kb.rbox().declareRole(kChainRole);
  for (const BoxAtom& b : enc.boxes) {
    const Concept minimal = Concept::And(b.source, b.atom());
    enc.kb.addInclusion(b.atom(),
                        Concept::Forall(enc.chain,
                                        Concept::And(notC(b.source), b.atom())));
    enc.kb.addInclusion(notC(b.atom()), Concept::Exists(enc.chain, minimal));
  }
  enc.lhs = rewrite(query.lhs, enc.boxes);
  enc.rhs = query.rhs;
  return enc;
}

RankedEncoding encodeRanked(const KnowledgeBase& kb, const Concept& goal,
                            const RankedOptions& opts) {
  std::set<Concept> sources = typicalSources(kb);
  noteSource(goal, sources);
  for (const Concept& c : opts.extra_typical) sources.insert(nnf(c));

  RankedEncoding enc;
  RankedScaffold& sc = enc.scaffold;
  sc.boxes = makeBoxes(sources);
  sc.chain = Role(kChainRole);
  sc.zero = "_Zero";
  sc.w = "_W";
  if (opts.bound == LevelBound::kBoxAtoms) {
    sc.h = static_cast<int>(sc.boxes.size());
  } else {
    std::vector<Concept> extra = opts.extra_typical;
    extra.push_back(goal);
    sc.h = static_cast<int>(subconcepts(kb, extra).base_count);
  }
  for (int i = 1; i <= sc.h; ++i) sc.levels.push_back("_S" + std::to_string(i));

  KnowledgeBase& out = enc.kb;
  out = rewriteKb(kb, sc.boxes);
  out.rbox().declareRole(kChainRole);
  const Role r = sc.chain;
  const Role rinv = r.inverse();
  const Concept top = Concept::Top();
  const Concept bot = Concept::Bottom();
  const Concept w = Concept::Atom(sc.w);

  // _R is a partial injection from level i+1 onto level i.
  out.addInclusion(top, Concept::AtMost(1, r, top));
  out.addInclusion(top, Concept::AtMost(1, rinv, top));
  out.addInclusion(sc.level(0), Concept::Forall(r, bot));
  out.addInclusion(sc.level(sc.h), Concept::Forall(rinv, bot));
  for (int i = 0; i < sc.h; ++i) {
    out.addInclusion(sc.level(i), Concept::Forall(rinv, sc.level(i + 1)));
    out.addInclusion(sc.level(i + 1), Concept::Exists(r, sc.level(i)));
  }

  // Every element sits on exactly one level.
  std::vector<Concept> all_levels;
  for (int i = 0; i <= sc.h; ++i) all_levels.push_back(sc.level(i));
  out.addInclusion(top, w);
  out.addInclusion(w, Concept::Or(all_levels));
  for (int i = 0; i <= sc.h; ++i) {
    out.addInclusion(sc.level(i), w);
    for (int j = i + 1; j <= sc.h; ++j) {
      out.addInclusion(sc.level(i), notC(sc.level(j)));
    }
  }

  for (const BoxAtom& b : sc.boxes) {
    const Concept box = b.atom();
    const Concept below = Concept::Forall(r, Concept::And(notC(b.source), box));
    out.addInclusion(box, below);
    out.addInclusion(below, box);
    for (int i = 0; i <= sc.h; ++i) {
      const Concept li = sc.level(i);
      // All elements of a level agree on box.
      out.addInclusion(li, Concept::Or(onlyU(Concept::Or(notC(li), box)),
                                       onlyU(Concept::Or(notC(li), notC(box)))));
      // A box on level i rules out the source anywhere on level i-1; the
      // chain alone only looks at one element per level.
      if (i > 0) {
        const Concept prev = sc.level(i - 1);
        out.addInclusion(
            li, Concept::Or(onlyU(Concept::Or(notC(li), notC(box))),
                            onlyU(Concept::Or(notC(prev), notC(b.source)))));
      }
    }
  }

  for (const std::string& a : kb.individuals()) {
    out.addAssertion(ConceptAssertion{w, a});
  }
  enc.goal = Concept::Exists(Role::universal(),
                             Concept::And(w, rewrite(goal, sc.boxes)));
  return enc;
}

Verdict satisfiableWithTyp(const KnowledgeBase& kb, const TypOptions& opts) {
  return conceptSatisfiableWithTyp(kb, Concept::Top(), opts);
}

Verdict conceptSatisfiableWithTyp(const KnowledgeBase& kb, const Concept& c,
                                  const TypOptions& opts) {
  RankedOptions ro;
  ro.bound = opts.bound;
  RankedEncoding enc = encodeRanked(kb, c, ro);
  return isSatisfiableWithRoots(enc.kb, {enc.goal}, opts.tableau);
}

bool entailsWithTyp(const KnowledgeBase& kb, const SubsumptionQuery& q,
                    const TypOptions& opts, Route route, TableauStats* stats) {
  if (route == Route::kAuto) {
    route = kb.abox().empty() ? Route::kPreferential : Route::kRanked;
  }
  if (route == Route::kPreferential) {
    PreferentialEncoding enc = encodePreferential(kb, q);
    return entailsInclusion(enc.kb, enc.lhs, enc.rhs, opts.tableau, stats);
  }
  // The query holds iff no element can be lhs and not rhs.
  KnowledgeBase probe = kb;
  probe.addAssertion(ConceptAssertion{q.lhs, kQueryIndividual});
  probe.addAssertion(ConceptAssertion{notC(q.rhs), kQueryIndividual});
  TypOptions o = opts;
  o.tableau.witness_attempts = 0;
  Verdict v = satisfiableWithTyp(probe, o);
  accumulate(stats, v.stats);
  return !v.satisfiable;
}

bool entailsWithTyp(const KnowledgeBase& kb, const AssertionQuery& q,
                    const TypOptions& opts, TableauStats* stats) {
  if (!kb.hasIndividual(q.individual)) {
    throw KbError("unknown individual '" + q.individual + "'");
  }
  RankedOptions ro;
  ro.bound = opts.bound;
  const bool typical = q.expr.is(ConceptKind::kTyp);
  if (typical) ro.extra_typical.push_back(q.expr.operand());
  RankedEncoding enc = encodeRanked(kb, Concept::Top(), ro);
  Concept negated = Concept::Top();
  if (typical) {
    const BoxAtom* b = enc.scaffold.boxFor(q.expr.operand());
    negated = Concept::Or(notC(b->source), notC(b->atom()));
  } else {
    negated = notC(q.expr);
  }
  enc.kb.addAssertion(ConceptAssertion{negated, q.individual});
  TableauOptions o = opts.tableau;
  o.witness_attempts = 0;
  Verdict v = isSatisfiableWithRoots(enc.kb, {enc.goal}, o);
  accumulate(stats, v.stats);
  return !v.satisfiable;
}

std::optional<DecodedModel> decodeRankedWitness(
    const FiniteModel& witness, const RankedScaffold& scaffold) {
  DecodedModel out;
  out.model.domain_size = witness.domain_size;
  out.model.individuals = witness.individuals;
  out.ranks.assign(witness.domain_size, -1);
  for (int i = 0; i <= scaffold.h; ++i) {
    auto it = witness.atoms.find(scaffold.level(i).name());
    if (it == witness.atoms.end()) continue;
    for (int x : it->second) {
      if (out.ranks[x] != -1) return std::nullopt;
      out.ranks[x] = i;
    }
  }
  if (std::find(out.ranks.begin(), out.ranks.end(), -1) != out.ranks.end()) {
    return std::nullopt;
  }
  for (const auto& [name, ext] : witness.atoms) {
    if (name.empty() || name.front() != kReservedPrefix) {
      out.model.atoms[name] = ext;
    }
  }
  for (const auto& [name, ext] : witness.roles) {
    if (name.empty() || name.front() != kReservedPrefix) {
      out.model.roles[name] = ext;
    }
  }
  return out;
}

}  // namespace dlrc
