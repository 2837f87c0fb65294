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

#include "dlrc/oracle.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <memory>
#include <stdexcept>

#include "dlrc/encoding.hpp"
#include "dlrc/error.hpp"

namespace dlrc {

RankedInterpretation RankedInterpretation::fromModel(const FiniteModel& m,
                                                     std::vector<int> ranks) {
  RankedInterpretation out;
  out.size = m.domain_size;
  out.atoms = m.atoms;
  out.roles = m.roles;
  out.individuals = m.individuals;
  out.ranks = ranks.empty() ? std::vector<int>(m.domain_size, 0)
                            : std::move(ranks);
  return out;
}

namespace {

using Adjacency = std::vector<std::vector<int>>;

int rankAt(const RankedInterpretation& m, int x) {
  return m.ranks.empty() ? 0 : m.ranks[x];
}

std::set<std::pair<int, int>> roleExtension(const RankedInterpretation& m,
                                            const Role& r) {
  std::set<std::pair<int, int>> out;
  if (r.isUniversal()) {
    for (int x = 0; x < m.size; ++x) {
      for (int y = 0; y < m.size; ++y) out.insert({x, y});
    }
    return out;
  }
  auto it = m.roles.find(r.name);
  if (it == m.roles.end()) return out;
  for (const auto& [a, b] : it->second) {
    out.insert(r.inverted ? std::make_pair(b, a) : std::make_pair(a, b));
  }
  return out;
}

Adjacency successors(const RankedInterpretation& m, const Role& r) {
  Adjacency adj(m.size);
  for (const auto& [a, b] : roleExtension(m, r)) adj[a].push_back(b);
  return adj;
}

Extension eval(const RankedInterpretation& m, const Concept& c) {
  const int n = m.size;
  switch (c.kind()) {
    case ConceptKind::kTop:
      return Extension(n, true);
    case ConceptKind::kBottom:
      return Extension(n, false);
    case ConceptKind::kAtom: {
      Extension e(n, false);
      auto it = m.atoms.find(c.name());
      if (it != m.atoms.end()) {
        for (int x : it->second) {
          if (x >= 0 && x < n) e[x] = true;
        }
      }
      return e;
    }
    case ConceptKind::kNot: {
      Extension e = eval(m, c.operand());
      e.flip();
      return e;
    }
    case ConceptKind::kAnd:
    case ConceptKind::kOr: {
      const bool conj = c.is(ConceptKind::kAnd);
      Extension e(n, conj);
      for (const Concept& d : c.operands()) {
        Extension f = eval(m, d);
        for (int x = 0; x < n; ++x) e[x] = conj ? (e[x] && f[x]) : (e[x] || f[x]);
      }
      return e;
    }
    case ConceptKind::kExists:
    case ConceptKind::kForall:
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost: {
      const Extension inner = eval(m, c.operand());
      const Adjacency adj = successors(m, c.role());
      Extension e(n, false);
      for (int x = 0; x < n; ++x) {
        unsigned k = 0;
        for (int y : adj[x]) k += inner[y];
        switch (c.kind()) {
          case ConceptKind::kExists:
            e[x] = k >= 1;
            break;
          case ConceptKind::kForall:
            e[x] = k == adj[x].size();
            break;
          case ConceptKind::kAtLeast:
            e[x] = k >= c.cardinality();
            break;
          default:
            e[x] = k <= c.cardinality();
            break;
        }
      }
      return e;
    }
    case ConceptKind::kTyp: {
      const Extension inner = eval(m, c.operand());
      int best = INT_MAX;
      for (int x = 0; x < n; ++x) {
        if (inner[x]) best = std::min(best, rankAt(m, x));
      }
      Extension e(n, false);
      for (int x = 0; x < n; ++x) e[x] = inner[x] && rankAt(m, x) == best;
      return e;
    }
  }
  throw std::logic_error("unknown concept kind");
}

bool subset(const Extension& a, const Extension& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

bool hasTypAssertion(const KnowledgeBase& kb) {
  for (const Assertion& a : kb.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      if (ca->expr.containsTyp()) return true;
    }
  }
  return false;
}

std::vector<ConceptInclusion> defeasiblePart(const KnowledgeBase& kb) {
  std::vector<ConceptInclusion> out;
  for (const ConceptInclusion& ax : kb.tbox()) {
    if (ax.isDefeasible()) out.push_back(ax);
  }
  return out;
}

}  // namespace

Extension evalConcept(const RankedInterpretation& m, const Concept& c) {
  return eval(m, c);
}

Extension evalBox(const RankedInterpretation& m, const Concept& c) {
  const Extension inner = eval(m, c);
  int lowest_out = INT_MAX;
  for (int y = 0; y < m.size; ++y) {
    if (!inner[y]) lowest_out = std::min(lowest_out, rankAt(m, y));
  }
  Extension e(m.size, false);
  for (int x = 0; x < m.size; ++x) e[x] = rankAt(m, x) <= lowest_out;
  return e;
}

bool satisfies(const RankedInterpretation& m, const ConceptInclusion& ax) {
  return subset(eval(m, ax.lhs), eval(m, ax.rhs));
}

bool satisfies(const RankedInterpretation& m, const AssertionQuery& q) {
  auto it = m.individuals.find(q.individual);
  if (it == m.individuals.end()) return false;
  return eval(m, q.expr)[it->second];
}

bool satisfiesKB(const RankedInterpretation& m, const KnowledgeBase& kb) {
  if (static_cast<int>(m.ranks.size()) != m.size && !m.ranks.empty()) {
    return false;
  }
  for (const ConceptInclusion& ax : kb.tbox()) {
    if (!satisfies(m, ax)) return false;
  }
  for (const RoleInclusion& ri : kb.rbox().inclusions()) {
    const auto sup = roleExtension(m, ri.sup);
    for (const auto& p : roleExtension(m, ri.sub)) {
      if (!sup.count(p)) return false;
    }
  }
  for (const std::string& r : kb.rbox().transitiveRoles()) {
    const auto ext = roleExtension(m, Role(r));
    for (const auto& [a, b] : ext) {
      for (const auto& [c, d] : ext) {
        if (b == c && !ext.count({a, d})) return false;
      }
    }
  }
  for (const Assertion& a : kb.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      if (!satisfies(m, AssertionQuery{ca->individual, ca->expr})) return false;
      continue;
    }
    const auto& ra = std::get<RoleAssertion>(a);
    auto s = m.individuals.find(ra.subject);
    auto o = m.individuals.find(ra.object);
    if (s == m.individuals.end() || o == m.individuals.end()) return false;
    if (!roleExtension(m, ra.role).count({s->second, o->second})) return false;
  }
  return true;
}

std::optional<int> conceptRank(const RankedInterpretation& m,
                               const Concept& c) {
  const Extension e = eval(m, c);
  std::optional<int> best;
  for (int x = 0; x < m.size; ++x) {
    if (e[x] && (!best || rankAt(m, x) < *best)) best = rankAt(m, x);
  }
  return best;
}

FalsifiedSet falsifiedSet(const RankedInterpretation& m,
                          const KnowledgeBase& kb) {
  FalsifiedSet out;
  out.per_element.resize(m.size);
  for (const ConceptInclusion& ax : defeasiblePart(kb)) {
    const Extension c = eval(m, ax.lhs.operand());
    const Extension d = eval(m, ax.rhs);
    for (int x = 0; x < m.size; ++x) {
      if (c[x] && !d[x]) out.per_element[x].push_back(ax);
    }
  }
  return out;
}

bool isMinimal(const RankedInterpretation& m, const KnowledgeBase& kb) {
  if (!satisfiesKB(m, kb)) throw KbError("interpretation is not a model of the KB");
  const FalsifiedSet s = falsifiedSet(m, kb);
  for (int x = 0; x < m.size; ++x) {
    if (s.per_element[x].empty()) {
      if (rankAt(m, x) != 0) return false;
      continue;
    }
    int want = 0;
    for (const ConceptInclusion& ax : s.per_element[x]) {
      want = std::max(want, 1 + *conceptRank(m, ax.lhs.operand()));
    }
    if (rankAt(m, x) != want) return false;
  }
  return true;
}

bool isMinimalByDefinition(const RankedInterpretation& m,
                           const KnowledgeBase& kb) {
  if (!satisfiesKB(m, kb)) throw KbError("interpretation is not a model of the KB");
  RankedInterpretation other = m;
  other.ranks.assign(m.size, 0);
  bool smaller_model = false;
  auto visit = [&](auto&& self, int x) -> void {
    if (smaller_model) return;
    if (x == m.size) {
      if (other.ranks != m.ranks && satisfiesKB(other, kb)) smaller_model = true;
      return;
    }
    for (int r = 0; r <= rankAt(m, x); ++r) {
      other.ranks[x] = r;
      self(self, x + 1);
    }
  };
  visit(visit, 0);
  return !smaller_model;
}

std::optional<std::vector<int>> minimalRanking(const RankedInterpretation& m,
                                               const KnowledgeBase& kb) {
  const int n = m.size;
  struct Rule {
    Extension c;
    Extension falsified;
  };
  std::vector<Rule> rules;
  for (const ConceptInclusion& ax : defeasiblePart(kb)) {
    Rule r{eval(m, ax.lhs.operand()), {}};
    const Extension d = eval(m, ax.rhs);
    r.falsified.resize(n);
    for (int x = 0; x < n; ++x) r.falsified[x] = r.c[x] && !d[x];
    rules.push_back(std::move(r));
  }
  // Iterate up from all zeros. In a least ranking the used ranks are
  // contiguous, so reaching n means there is none.
  std::vector<int> k(n, 0);
  for (;;) {
    std::vector<int> next(n, 0);
    for (int x = 0; x < n; ++x) {
      for (const Rule& r : rules) {
        if (!r.falsified[x]) continue;
        int low = INT_MAX;
        for (int y = 0; y < n; ++y) {
          if (r.c[y]) low = std::min(low, k[y]);
        }
        next[x] = std::max(next[x], low + 1);
      }
      if (next[x] >= n) return std::nullopt;
    }
    if (next == k) return k;
    k = std::move(next);
  }
}

std::string toString(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::kTrue:
      return "TRUE";
    case OracleVerdict::kFalse:
      return "FALSE";
    case OracleVerdict::kUndecided:
      return "UNDECIDED";
  }
  return "?";
}

ConsistencyCheck tableauConsistency(const KnowledgeBase& kb) {
  auto memo = std::make_shared<std::map<Concept, bool>>();
  TypOptions opts;
  opts.tableau.witness_attempts = 0;
  const bool tbox_only = kb.abox().empty();
  return [kb, memo, opts, tbox_only](const Concept& c) {
    const Concept key = nnf(c);
    auto it = memo->find(key);
    if (it != memo->end()) return it->second;
    const bool r =
        tbox_only ? !entailsWithTyp(kb, SubsumptionQuery{key, Concept::Bottom()},
                                    opts)
                  : conceptSatisfiableWithTyp(kb, key, opts).satisfiable;
    memo->emplace(key, r);
    return r;
  };
}

namespace {

constexpr int kMaxPrimitives = 24;

// Atoms and number restrictions of a vocabulary. Every number restriction is
// written as a positive or negated >= n R.C with C in NNF, so a type (one bit
// per primitive) decides every concept over the vocabulary.
class TypeSpace {
 public:
  TypeSpace(const KnowledgeBase& kb, const std::vector<Concept>& extra) {
    std::set<Concept> prims;
    for (const ConceptInclusion& ax : kb.tbox()) {
      collect(ax.lhs, prims);
      collect(ax.rhs, prims);
      if (!ax.isDefeasible()) strict_.push_back(ax);
    }
    for (const Assertion& a : kb.abox()) {
      if (auto* ca = std::get_if<ConceptAssertion>(&a)) collect(ca->expr, prims);
    }
    for (const Concept& c : extra) collect(c, prims);
    prims_.assign(prims.begin(), prims.end());
    if (prims_.size() > kMaxPrimitives) return;
    for (int i = 0; i < size(); ++i) index_.emplace(prims_[i], i);
    for (int i = 0; i < size(); ++i) {
      for (int j = 0; j < size(); ++j) {
        const Concept& a = prims_[i];
        const Concept& b = prims_[j];
        if (a.is(ConceptKind::kAtLeast) && b.is(ConceptKind::kAtLeast) &&
            a.role() == b.role() && a.operand() == b.operand() &&
            a.cardinality() > b.cardinality()) {
          implied_.push_back({i, j});
        }
      }
    }
  }

  int size() const { return static_cast<int>(prims_.size()); }
  bool tooLarge() const { return size() > kMaxPrimitives; }
  const Concept& prim(int i) const { return prims_[i]; }
  const std::vector<Concept>& prims() const { return prims_; }

  bool eval(const Concept& c, std::uint64_t t) const {
    switch (c.kind()) {
      case ConceptKind::kTop:
        return true;
      case ConceptKind::kBottom:
        return false;
      case ConceptKind::kAtom:
        return bit(t, index_.at(c));
      case ConceptKind::kNot:
        return !eval(c.operand(), t);
      case ConceptKind::kAnd:
        for (const Concept& d : c.operands()) {
          if (!eval(d, t)) return false;
        }
        return true;
      case ConceptKind::kOr:
        for (const Concept& d : c.operands()) {
          if (eval(d, t)) return true;
        }
        return false;
      case ConceptKind::kTyp:
        throw std::logic_error("type evaluation of a typicality concept");
      default: {
        const Norm nm = normalise(c);
        if (nm.prim.is(ConceptKind::kTop)) return nm.positive;
        return bit(t, index_.at(nm.prim)) == nm.positive;
      }
    }
  }

  // Strict inclusions hold and >= m R.C implies >= n R.C for n < m.
  bool admissible(std::uint64_t t) const {
    for (const auto& [i, j] : implied_) {
      if (bit(t, i) && !bit(t, j)) return false;
    }
    for (const ConceptInclusion& ax : strict_) {
      if (eval(ax.lhs, t) && !eval(ax.rhs, t)) return false;
    }
    return true;
  }

  Concept literal(int i, bool value) const {
    return value ? prims_[i] : Concept::Not(prims_[i]);
  }

  Concept describe(std::uint64_t t) const {
    std::vector<Concept> lits;
    for (int i = 0; i < size(); ++i) lits.push_back(literal(i, bit(t, i)));
    return Concept::And(std::move(lits));
  }

  static bool bit(std::uint64_t t, int i) { return (t >> i) & 1u; }

 private:
  struct Norm {
    Concept prim;  // Top for a constant restriction
    bool positive = true;
  };

  static Norm normalise(const Concept& c) {
    const Concept d = nnf(c);
    switch (d.kind()) {
      case ConceptKind::kTop:
        return {Concept::Top(), true};
      case ConceptKind::kBottom:
        return {Concept::Top(), false};
      case ConceptKind::kExists:
        return {Concept::AtLeast(1, d.role(), d.operand()), true};
      case ConceptKind::kAtLeast:
        return {Concept::AtLeast(d.cardinality(), d.role(), d.operand()), true};
      case ConceptKind::kForall:
        return {Concept::AtLeast(1, d.role(), complement(d.operand())), false};
      case ConceptKind::kAtMost:
        return {Concept::AtLeast(d.cardinality() + 1, d.role(), d.operand()),
                false};
      default:
        throw std::logic_error("not a role restriction");
    }
  }

  static void collect(const Concept& c, std::set<Concept>& out) {
    switch (c.kind()) {
      case ConceptKind::kTop:
      case ConceptKind::kBottom:
        return;
      case ConceptKind::kAtom:
        out.insert(c);
        return;
      case ConceptKind::kNot:
      case ConceptKind::kTyp:
        collect(c.operand(), out);
        return;
      case ConceptKind::kAnd:
      case ConceptKind::kOr:
        for (const Concept& d : c.operands()) collect(d, out);
        return;
      default: {
        const Norm nm = normalise(c);
        if (nm.prim.is(ConceptKind::kTop)) return;
        if (out.insert(nm.prim).second) collect(nm.prim.operand(), out);
        return;
      }
    }
  }

  std::vector<Concept> prims_;
  std::map<Concept, int> index_;
  std::vector<std::pair<int, int>> implied_;
  std::vector<ConceptInclusion> strict_;
};

// Stops once more than limit types are found.
std::vector<std::uint64_t> typesByCheck(const TypeSpace& sp,
                                        const ConsistencyCheck& check,
                                        std::size_t limit = SIZE_MAX) {
  std::vector<std::uint64_t> out;
  if (!check(Concept::Top())) return out;
  std::vector<Concept> lits;
  auto dfs = [&](auto&& self, int i, std::uint64_t t) -> void {
    if (out.size() > limit) return;
    if (i == sp.size()) {
      if (sp.admissible(t)) out.push_back(t);
      return;
    }
    for (bool v : {true, false}) {
      lits.push_back(sp.literal(i, v));
      if (check(Concept::And(lits))) {
        self(self, i + 1, v ? (t | (std::uint64_t{1} << i)) : t);
      }
      lits.pop_back();
    }
  };
  dfs(dfs, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> admissibleTypes(const TypeSpace& sp) {
  std::vector<std::uint64_t> out;
  const std::uint64_t end = std::uint64_t{1} << sp.size();
  for (std::uint64_t t = 0; t < end; ++t) {
    if (sp.admissible(t)) out.push_back(t);
  }
  return out;
}

// Role edges over a fixed typed domain such that every element satisfies
// exactly the number restrictions of its type. Variables are edges of named
// roles; each restriction bounds how many of a set of edges are present.
class EdgeSearch {
 public:
  struct Edge {
    std::string role;
    int from;
    int to;
  };

  EdgeSearch(const TypeSpace& sp, const std::vector<std::uint64_t>& types,
             const std::vector<Edge>& forced, std::uint64_t* budget)
      : n_(static_cast<int>(types.size())), budget_(budget) {
    std::set<std::string> names;
    for (const Concept& p : sp.prims()) {
      if (p.is(ConceptKind::kAtLeast) && !p.role().isUniversal()) {
        names.insert(p.role().name);
      }
    }
    for (const Edge& e : forced) names.insert(e.role);
    roles_.assign(names.begin(), names.end());
    vals_.assign(roles_.size() * n_ * n_, -1);
    for (const Edge& e : forced) vals_[var(roleIndex(e.role), e.from, e.to)] = 1;
    for (int i = 0; i < sp.size(); ++i) {
      const Concept& p = sp.prim(i);
      if (!p.is(ConceptKind::kAtLeast)) continue;
      for (int x = 0; x < n_; ++x) {
        const bool has = TypeSpace::bit(types[x], i);
        Bound b;
        b.lb = has ? static_cast<int>(p.cardinality()) : 0;
        b.ub = has ? INT_MAX : static_cast<int>(p.cardinality()) - 1;
        int fixed = 0;
        for (int y = 0; y < n_; ++y) {
          if (!sp.eval(p.operand(), types[y])) continue;
          if (p.role().isUniversal()) {
            ++fixed;
          } else if (p.role().inverted) {
            b.vars.push_back(var(roleIndex(p.role().name), y, x));
          } else {
            b.vars.push_back(var(roleIndex(p.role().name), x, y));
          }
        }
        b.lb -= fixed;
        if (b.ub != INT_MAX) b.ub -= fixed;
        if (b.ub < 0) feasible_ = false;
        bounds_.push_back(std::move(b));
      }
    }
  }

  bool exhausted() const { return exhausted_; }

  // Calls accept on solutions until it returns true.
  bool solve(const std::function<bool(const std::vector<Edge>&)>& accept) {
    if (!feasible_) return false;
    return dfs(vals_, accept);
  }

 private:
  struct Bound {
    std::vector<int> vars;
    int lb = 0;
    int ub = INT_MAX;
  };

  int roleIndex(const std::string& r) const {
    return static_cast<int>(
        std::lower_bound(roles_.begin(), roles_.end(), r) - roles_.begin());
  }
  int var(int r, int x, int y) const { return (r * n_ + x) * n_ + y; }

  bool propagate(std::vector<signed char>& v) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const Bound& b : bounds_) {
        int ones = 0;
        int unknown = 0;
        for (int i : b.vars) {
          ones += v[i] == 1;
          unknown += v[i] == -1;
        }
        if (ones > b.ub || ones + unknown < b.lb) return false;
        if (unknown == 0) continue;
        signed char force = -1;
        if (ones == b.ub) force = 0;
        if (ones + unknown == b.lb) force = 1;
        if (force < 0) continue;
        for (int i : b.vars) {
          if (v[i] == -1) v[i] = force;
        }
        changed = true;
      }
    }
    return true;
  }

  bool dfs(std::vector<signed char> v,
           const std::function<bool(const std::vector<Edge>&)>& accept) {
    if (*budget_ == 0) {
      exhausted_ = true;
      return false;
    }
    --*budget_;
    if (!propagate(v)) return false;
    for (const Bound& b : bounds_) {
      int ones = 0;
      int pick = -1;
      for (int i : b.vars) {
        ones += v[i] == 1;
        if (v[i] == -1 && pick < 0) pick = i;
      }
      if (ones >= b.lb || pick < 0) continue;
      for (signed char value : {1, 0}) {
        std::vector<signed char> w = v;
        w[pick] = value;
        if (dfs(std::move(w), accept)) return true;
      }
      return false;
    }
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < roles_.size(); ++r) {
      for (int x = 0; x < n_; ++x) {
        for (int y = 0; y < n_; ++y) {
          if (v[var(static_cast<int>(r), x, y)] == 1) {
            edges.push_back({roles_[r], x, y});
          }
        }
      }
    }
    return accept(edges);
  }

  int n_;
  std::vector<std::string> roles_;
  std::vector<signed char> vals_;
  std::vector<Bound> bounds_;
  bool feasible_ = true;
  bool exhausted_ = false;
  std::uint64_t* budget_;
};

void closeRoles(RankedInterpretation& m, const RBox& rbox) {
  if (rbox.inclusions().empty() && rbox.transitiveRoles().empty()) return;
  for (bool changed = true; changed;) {
    changed = false;
    for (const std::string& s : rbox.roles()) {
      auto& ext = m.roles[s];
      const std::size_t before = ext.size();
      for (const Role& sub : rbox.subRolesOf(Role(s))) {
        for (const auto& p : roleExtension(m, sub)) ext.insert(p);
      }
      if (rbox.isTransitive(Role(s))) {
        for (bool grew = true; grew;) {
          grew = false;
          std::vector<std::pair<int, int>> add;
          for (const auto& [a, b] : ext) {
            for (auto it = ext.lower_bound({b, INT_MIN});
                 it != ext.end() && it->first == b; ++it) {
              if (!ext.count({a, it->second})) add.push_back({a, it->second});
            }
          }
          for (const auto& p : add) grew |= ext.insert(p).second;
        }
      }
      changed |= ext.size() != before;
    }
  }
}

RankedInterpretation buildInterpretation(
    const TypeSpace& sp, const std::vector<std::uint64_t>& types,
    const std::vector<EdgeSearch::Edge>& edges, const RBox& rbox,
    const std::map<std::string, int>& individuals) {
  RankedInterpretation m;
  m.size = static_cast<int>(types.size());
  for (int i = 0; i < sp.size(); ++i) {
    if (!sp.prim(i).is(ConceptKind::kAtom)) continue;
    auto& ext = m.atoms[sp.prim(i).name()];
    for (int x = 0; x < m.size; ++x) {
      if (TypeSpace::bit(types[x], i)) ext.insert(x);
    }
  }
  for (const EdgeSearch::Edge& e : edges) m.roles[e.role].insert({e.from, e.to});
  closeRoles(m, rbox);
  m.ranks.assign(m.size, 0);
  m.individuals = individuals;
  return m;
}

// Every element really has its intended type.
bool realisesTypes(const TypeSpace& sp, const RankedInterpretation& m,
                   const std::vector<std::uint64_t>& types) {
  for (int i = 0; i < sp.size(); ++i) {
    const Extension e = eval(m, sp.prim(i));
    for (int x = 0; x < m.size; ++x) {
      if (e[x] != TypeSpace::bit(types[x], i)) return false;
    }
  }
  return true;
}

// Rankings of a fixed (domain, extensions) that make it a minimal model.
// Without typicality in the ABox this is the least ranking; otherwise every
// rank function up to max_rank is tried.
std::vector<std::vector<int>> minimalModelRankings(RankedInterpretation m,
                                                   const KnowledgeBase& kb,
                                                   int max_rank,
                                                   bool* over_rank) {
  if (!hasTypAssertion(kb)) {
    auto k = minimalRanking(m, kb);
    if (!k) return {};
    if (!k->empty() && *std::max_element(k->begin(), k->end()) > max_rank) {
      *over_rank = true;
      return {};
    }
    m.ranks = *k;
    if (!satisfiesKB(m, kb)) return {};
    return {*k};
  }
  std::vector<std::vector<int>> models;
  m.ranks.assign(m.size, 0);
  auto visit = [&](auto&& self, int x) -> void {
    if (x == m.size) {
      if (satisfiesKB(m, kb)) models.push_back(m.ranks);
      return;
    }
    for (int r = 0; r <= max_rank; ++r) {
      m.ranks[x] = r;
      self(self, x + 1);
    }
  };
  visit(visit, 0);
  std::vector<std::vector<int>> out;
  for (const auto& k : models) {
    bool dominated = false;
    for (const auto& o : models) {
      if (o == k) continue;
      bool le = true;
      for (int x = 0; x < m.size && le; ++x) le = o[x] <= k[x];
      if (le) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(k);
  }
  return out;
}

struct EnumStats {
  std::uint64_t interpretations = 0;
  std::uint64_t models = 0;
  std::uint64_t minimal = 0;
  bool over_rank = false;
  bool exhausted = false;
};

constexpr std::uint64_t kSearchBudget = 4000000;

// Minimal models whose elements carry types from `types`. With
// all_types, each type occurs at least once (canonical models); otherwise any
// non-empty multiset is tried, smallest first. visit returns false to stop.
void enumerateModels(
    const KnowledgeBase& kb, const TypeSpace& sp,
    const std::vector<std::uint64_t>& types, bool all_types,
    const OracleBounds& bounds, EnumStats& stats,
    const std::function<bool(const RankedInterpretation&)>& visit) {
  const int t = static_cast<int>(types.size());
  const std::vector<std::string>& inds = kb.individuals();
  std::uint64_t budget = kSearchBudget;
  bool stop = false;

  auto tryDomain = [&](const std::vector<std::uint64_t>& dom) {
    const int n = static_cast<int>(dom.size());
    // Elements each individual may denote.
    std::vector<std::vector<int>> allowed(inds.size());
    for (std::size_t i = 0; i < inds.size(); ++i) {
      for (int x = 0; x < n; ++x) {
        bool ok = true;
        for (const Assertion& a : kb.abox()) {
          auto* ca = std::get_if<ConceptAssertion>(&a);
          if (!ca || ca->individual != inds[i]) continue;
          const Concept& c =
              ca->expr.is(ConceptKind::kTyp) ? ca->expr.operand() : ca->expr;
          ok = ok && sp.eval(c, dom[x]);
        }
        if (ok) allowed[i].push_back(x);
      }
      if (allowed[i].empty()) return;
    }
    std::map<std::string, int> map;
    auto assign = [&](auto&& self, std::size_t i) -> void {
      if (stop) return;
      if (i < inds.size()) {
        for (int x : allowed[i]) {
          map[inds[i]] = x;
          self(self, i + 1);
          if (stop) return;
        }
        return;
      }
      std::vector<EdgeSearch::Edge> forced;
      for (const Assertion& a : kb.abox()) {
        if (auto* ra = std::get_if<RoleAssertion>(&a)) {
          forced.push_back({ra->role.name, map.at(ra->subject), map.at(ra->object)});
        }
      }
      EdgeSearch search(sp, dom, forced, &budget);
      search.solve([&](const std::vector<EdgeSearch::Edge>& edges) {
        RankedInterpretation m =
            buildInterpretation(sp, dom, edges, kb.rbox(), map);
        if (!realisesTypes(sp, m, dom)) return false;
        ++stats.interpretations;
        bool over = false;
        const auto rankings =
            minimalModelRankings(m, kb, bounds.max_rank, &over);
        stats.over_rank |= over;
        if (!rankings.empty() || over) ++stats.models;
        for (const auto& k : rankings) {
          ++stats.minimal;
          m.ranks = k;
          if (!visit(m)) {
            stop = true;
            break;
          }
        }
        return true;
      });
      stats.exhausted |= search.exhausted();
      if (search.exhausted()) stop = true;
    };
    assign(assign, 0);
  };

  // Multisets as non-decreasing index sequences.
  const int min_size = all_types ? t : 1;
  for (int size = min_size; size <= bounds.max_domain && !stop; ++size) {
    const int free = all_types ? size - t : size;
    std::vector<int> pick(free, 0);
    for (;;) {
      std::vector<std::uint64_t> dom;
      if (all_types) dom = types;
      for (int i : pick) dom.push_back(types[i]);
      tryDomain(dom);
      if (stop) break;
      int j = free - 1;
      while (j >= 0 && pick[j] == t - 1) --j;
      if (j < 0) break;
      ++pick[j];
      for (int k = j + 1; k < free; ++k) pick[k] = pick[j];
    }
  }
}

std::string undecidedReason(const EnumStats& s, int max_domain) {
  if (s.exhausted) return "search budget exhausted";
  if (s.over_rank) return "minimal models exceed the rank bound";
  return "no canonical model with at most " + std::to_string(max_domain) +
         " elements";
}

void fillCounts(OracleReport& r, const EnumStats& s) {
  r.interpretations = s.interpretations;
  r.models = s.models;
  r.minimal = s.minimal;
}

bool hasInverse(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kExists:
    case ConceptKind::kForall:
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost:
      if (c.role().inverted || c.role().isUniversal()) return true;
      return hasInverse(c.operand());
    default:
      for (const Concept& d : c.operands()) {
        if (hasInverse(d)) return true;
      }
      return false;
  }
}

// ---- Type elimination for the fragment without inverses or role axioms.

struct RoleRequirement {
  int prim;
  int n;
  Concept inner;
};

class Elimination {
 public:
  Elimination(const KnowledgeBase& kb, const TypeSpace& sp) : kb_(kb), sp_(sp) {
    for (int i = 0; i < sp.size(); ++i) {
      const Concept& p = sp.prim(i);
      if (!p.is(ConceptKind::kAtLeast)) continue;
      reqs_[p.role().name].push_back(
          {i, static_cast<int>(p.cardinality()), p.operand()});
      max_n_ = std::max(max_n_, static_cast<int>(p.cardinality()));
    }
    defeasible_ = defeasiblePart(kb);
  }

  // Greatest set of admissible types that are locally realisable and have a
  // finite least rank.
  std::vector<std::uint64_t> run() {
    std::vector<std::uint64_t> s = admissibleTypes(sp_);
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<std::uint64_t> keep;
      for (std::uint64_t t : s) {
        bool ok = true;
        for (const auto& [role, rq] : reqs_) {
          ok = ok && realise(t, rq, s, {}, nullptr);
        }
        if (ok) keep.push_back(t);
      }
      changed |= keep.size() != s.size();
      s = std::move(keep);
      const std::vector<int> r = typeRanks(s);
      keep.clear();
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (r[i] < static_cast<int>(s.size())) keep.push_back(s[i]);
      }
      changed |= keep.size() != s.size();
      s = std::move(keep);
    }
    return s;
  }

  // Least ranks of the types in s; values >= |s| mean no finite rank.
  std::vector<int> typeRanks(const std::vector<std::uint64_t>& s) const {
    const int n = static_cast<int>(s.size());
    std::vector<std::vector<bool>> in_c(defeasible_.size(),
                                        std::vector<bool>(n));
    std::vector<std::vector<bool>> falsified(defeasible_.size(),
                                             std::vector<bool>(n));
    for (std::size_t a = 0; a < defeasible_.size(); ++a) {
      for (int i = 0; i < n; ++i) {
        in_c[a][i] = sp_.eval(defeasible_[a].lhs.operand(), s[i]);
        falsified[a][i] = in_c[a][i] && !sp_.eval(defeasible_[a].rhs, s[i]);
      }
    }
    std::vector<int> k(n, 0);
    for (;;) {
      std::vector<int> next(n, 0);
      for (int i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < defeasible_.size(); ++a) {
          if (!falsified[a][i]) continue;
          int low = INT_MAX;
          for (int j = 0; j < n; ++j) {
            if (in_c[a][j]) low = std::min(low, k[j]);
          }
          next[i] = std::max(next[i], std::min(n, low + 1));
        }
      }
      if (next == k) return k;
      k = std::move(next);
    }
  }

  // Successor counts for an element of type t over the available types, on
  // top of the forced successors. plan receives (type, count) pairs.
  bool realise(std::uint64_t t, const std::vector<RoleRequirement>& rq,
               const std::vector<std::uint64_t>& avail,
               const std::vector<std::uint64_t>& forced,
               std::vector<std::pair<std::uint64_t, int>>* plan) const {
    const std::size_t k = rq.size();
    auto sig = [&](std::uint64_t s) {
      std::uint32_t v = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (sp_.eval(rq[j].inner, s)) v |= 1u << j;
      }
      return v;
    };
    std::map<std::uint32_t, std::uint64_t> by_sig;
    for (std::uint64_t s : avail) by_sig.emplace(sig(s), s);
    std::vector<std::pair<std::uint32_t, std::uint64_t>> sigs(by_sig.begin(),
                                                             by_sig.end());
    std::vector<int> lo(k), hi(k), cur(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
      const bool has = TypeSpace::bit(t, rq[j].prim);
      lo[j] = has ? rq[j].n : 0;
      hi[j] = has ? INT_MAX : rq[j].n - 1;
    }
    for (std::uint64_t f : forced) {
      const std::uint32_t s = sig(f);
      for (std::size_t j = 0; j < k; ++j) cur[j] += (s >> j) & 1u;
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (cur[j] > hi[j]) return false;
    }
    const std::size_t m = sigs.size();
    std::vector<std::vector<int>> cap(m + 1, std::vector<int>(k, 0));
    for (std::size_t i = m; i-- > 0;) {
      for (std::size_t j = 0; j < k; ++j) {
        cap[i][j] = cap[i + 1][j] + (((sigs[i].first >> j) & 1u) ? max_n_ : 0);
      }
    }
    std::vector<int> counts(m, 0);
    auto dfs = [&](auto&& self, std::size_t i) -> bool {
      for (std::size_t j = 0; j < k; ++j) {
        if (cur[j] + cap[i][j] < lo[j]) return false;
      }
      if (i == m) return true;
      for (int c = 0; c <= max_n_; ++c) {
        bool ok = true;
        for (std::size_t j = 0; j < k; ++j) {
          if ((sigs[i].first >> j) & 1u) {
            cur[j] += c;
            ok = ok && cur[j] <= hi[j];
          }
        }
        counts[i] = c;
        if (ok && self(self, i + 1)) return true;
        for (std::size_t j = 0; j < k; ++j) {
          if ((sigs[i].first >> j) & 1u) cur[j] -= c;
        }
      }
      counts[i] = 0;
      return false;
    };
    if (!dfs(dfs, 0)) return false;
    if (plan) {
      for (std::size_t i = 0; i < m; ++i) {
        if (counts[i] > 0) plan->push_back({sigs[i].second, counts[i]});
      }
    }
    return true;
  }

  // Places the individuals on types from s. Returns a model or nullopt.
  std::optional<RankedInterpretation> model(
      const std::vector<std::uint64_t>& s) const {
    if (s.empty()) return std::nullopt;
    const std::vector<std::string>& inds = kb_.individuals();
    const int m = static_cast<int>(inds.size());
    std::vector<int> block(m, 0);
    std::optional<RankedInterpretation> found;
    // Individuals may share an element, so try every partition.
    auto partitions = [&](auto&& self, int i, int blocks) -> void {
      if (found) return;
      if (i == m) {
        found = placeBlocks(s, block, blocks);
        return;
      }
      for (int b = 0; b <= blocks; ++b) {
        block[i] = b;
        self(self, i + 1, std::max(blocks, b + 1));
        if (found) return;
      }
    };
    partitions(partitions, 0, 0);
    return found;
  }

 private:
  std::optional<RankedInterpretation> placeBlocks(
      const std::vector<std::uint64_t>& s, const std::vector<int>& block,
      int blocks) const {
    const std::vector<std::string>& inds = kb_.individuals();
    std::vector<std::vector<std::uint64_t>> options(blocks);
    for (int b = 0; b < blocks; ++b) {
      for (std::uint64_t t : s) {
        bool ok = true;
        for (const Assertion& a : kb_.abox()) {
          auto* ca = std::get_if<ConceptAssertion>(&a);
          if (!ca) continue;
          const auto pos = std::find(inds.begin(), inds.end(), ca->individual);
          if (block[pos - inds.begin()] == b) ok = ok && sp_.eval(ca->expr, t);
        }
        if (ok) options[b].push_back(t);
      }
      if (options[b].empty()) return std::nullopt;
    }
    // Named successors per block and role.
    std::map<std::pair<int, std::string>, std::set<int>> named;
    for (const Assertion& a : kb_.abox()) {
      if (auto* ra = std::get_if<RoleAssertion>(&a)) {
        const auto s_it = std::find(inds.begin(), inds.end(), ra->subject);
        const auto o_it = std::find(inds.begin(), inds.end(), ra->object);
        named[{block[s_it - inds.begin()], ra->role.name}].insert(
            block[o_it - inds.begin()]);
      }
    }
    std::vector<std::uint64_t> chosen(blocks);
    auto forcedOf = [&](int b, const std::string& role) {
      std::vector<std::uint64_t> f;
      auto it = named.find({b, role});
      if (it != named.end()) {
        for (int o : it->second) f.push_back(chosen[o]);
      }
      return f;
    };
    auto dfs = [&](auto&& self, int b) -> bool {
      if (b == blocks) {
        for (int i = 0; i < blocks; ++i) {
          for (const auto& [role, rq] : reqs_) {
            if (!realise(chosen[i], rq, s, forcedOf(i, role), nullptr)) {
              return false;
            }
          }
        }
        return true;
      }
      for (std::uint64_t t : options[b]) {
        chosen[b] = t;
        if (self(self, b + 1)) return true;
      }
      return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;

    // Copies of every type, then one element per block.
    const int copies = std::max(1, max_n_);
    const int base = static_cast<int>(s.size()) * copies;
    std::vector<std::uint64_t> types;
    for (std::uint64_t t : s) {
      for (int c = 0; c < copies; ++c) types.push_back(t);
    }
    for (int b = 0; b < blocks; ++b) types.push_back(chosen[b]);
    std::vector<EdgeSearch::Edge> edges;
    for (std::size_t x = 0; x < types.size(); ++x) {
      const int b = static_cast<int>(x) - base;
      for (const auto& [role, rq] : reqs_) {
        std::vector<std::pair<std::uint64_t, int>> plan;
        const auto forced = b >= 0 ? forcedOf(b, role)
                                   : std::vector<std::uint64_t>{};
        if (!realise(types[x], rq, s, forced, &plan)) {
          throw std::logic_error("type elimination lost a realisation");
        }
        for (const auto& [t, count] : plan) {
          const int first = static_cast<int>(
              std::find(s.begin(), s.end(), t) - s.begin()) * copies;
          for (int c = 0; c < count; ++c) {
            edges.push_back({role, static_cast<int>(x), first + c});
          }
        }
      }
    }
    for (const auto& [key, targets] : named) {
      for (int o : targets) {
        edges.push_back({key.second, base + key.first, base + o});
      }
    }
    std::map<std::string, int> ind_map;
    for (std::size_t i = 0; i < inds.size(); ++i) {
      ind_map[inds[i]] = base + block[i];
    }
    RankedInterpretation m =
        buildInterpretation(sp_, types, edges, kb_.rbox(), ind_map);
    auto k = minimalRanking(m, kb_);
    if (!k) throw std::logic_error("type elimination kept an unrankable type");
    m.ranks = *k;
    if (!satisfiesKB(m, kb_)) {
      throw std::logic_error("type elimination built a non-model");
    }
    return m;
  }

  const KnowledgeBase& kb_;
  const TypeSpace& sp_;
  std::map<std::string, std::vector<RoleRequirement>> reqs_;
  std::vector<ConceptInclusion> defeasible_;
  int max_n_ = 0;
};

std::vector<Concept> describeAll(const TypeSpace& sp,
                                 const std::vector<std::uint64_t>& types) {
  std::vector<Concept> out;
  for (std::uint64_t t : types) out.push_back(sp.describe(t));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Concept> queryConcepts(const SubsumptionQuery& q) {
  return {q.lhs, q.rhs};
}

}  // namespace

bool typeLevelFragment(const KnowledgeBase& kb) {
  if (!kb.rbox().inclusions().empty() || !kb.rbox().transitiveRoles().empty()) {
    return false;
  }
  for (const ConceptInclusion& ax : kb.tbox()) {
    if (hasInverse(ax.lhs) || hasInverse(ax.rhs)) return false;
  }
  for (const Assertion& a : kb.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&a)) {
      if (ca->expr.containsTyp() || hasInverse(ca->expr)) return false;
    }
  }
  return true;
}

std::vector<Concept> consistentTypes(const KnowledgeBase& kb,
                                     const std::vector<Concept>& extra,
                                     ConsistencyCheck check) {
  const TypeSpace sp(kb, extra);
  if (sp.tooLarge()) throw KbError("vocabulary too large for the oracle");
  if (!check) check = tableauConsistency(kb);
  return describeAll(sp, typesByCheck(sp, check));
}

std::optional<std::vector<Concept>> consistentTypesByElimination(
    const KnowledgeBase& kb, const std::vector<Concept>& extra) {
  if (!typeLevelFragment(kb)) return std::nullopt;
  for (const Concept& c : extra) {
    if (hasInverse(c)) return std::nullopt;
  }
  const TypeSpace sp(kb, extra);
  if (sp.tooLarge()) return std::nullopt;
  Elimination el(kb, sp);
  std::vector<std::uint64_t> s = el.run();
  if (!el.model(s)) s.clear();
  return describeAll(sp, s);
}

bool isCanonical(const RankedInterpretation& m, const KnowledgeBase& kb,
                 const std::vector<Concept>& extra, ConsistencyCheck check) {
  if (!satisfiesKB(m, kb)) throw KbError("interpretation is not a model of the KB");
  const TypeSpace sp(kb, extra);
  if (sp.tooLarge()) throw KbError("vocabulary too large for the oracle");
  if (!check) check = tableauConsistency(kb);
  std::vector<std::uint64_t> realised(m.size, 0);
  for (int i = 0; i < sp.size(); ++i) {
    const Extension e = eval(m, sp.prim(i));
    for (int x = 0; x < m.size; ++x) {
      if (e[x]) realised[x] |= std::uint64_t{1} << i;
    }
  }
  for (std::uint64_t t : typesByCheck(sp, check)) {
    if (std::find(realised.begin(), realised.end(), t) == realised.end()) {
      return false;
    }
  }
  return true;
}

OracleReport minimalCanonicalEntails(const KnowledgeBase& kb,
                                     const SubsumptionQuery& q,
                                     const OracleBounds& bounds,
                                     ConsistencyCheck check) {
  OracleReport report;
  const KnowledgeBase tbox = kb.tboxOnly();
  const TypeSpace sp(tbox, queryConcepts(q));
  if (sp.tooLarge()) {
    report.reason = "vocabulary too large";
    return report;
  }
  if (!check) check = tableauConsistency(tbox);
  const std::vector<std::uint64_t> types =
      typesByCheck(sp, check, static_cast<std::size_t>(bounds.max_domain));
  if (types.empty()) {
    report.reason = "KB has no model";
    return report;
  }
  if (static_cast<int>(types.size()) > bounds.max_domain) {
    report.reason = "more maximal consistent sets than the domain bound";
    return report;
  }
  const ConceptInclusion goal{q.lhs, q.rhs};
  EnumStats stats;
  enumerateModels(tbox, sp, types, true, bounds, stats,
                  [&](const RankedInterpretation& m) {
                    ++report.canonical;
                    if (satisfies(m, goal)) return true;
                    report.verdict = OracleVerdict::kFalse;
                    report.witness = m;
                    return false;
                  });
  fillCounts(report, stats);
  if (report.verdict == OracleVerdict::kFalse) return report;
  if (stats.minimal == 0 || stats.exhausted) {
    report.reason = undecidedReason(stats, bounds.max_domain);
    return report;
  }
  report.verdict = OracleVerdict::kTrue;
  return report;
}

std::vector<RankedInterpretation> minimalWrtABox(
    const std::vector<RankedInterpretation>& models,
    const std::vector<std::string>& individuals) {
  auto rankOf = [](const RankedInterpretation& m, const std::string& a) {
    return rankAt(m, m.individuals.at(a));
  };
  std::vector<RankedInterpretation> out;
  for (const RankedInterpretation& m : models) {
    bool dominated = false;
    for (const RankedInterpretation& o : models) {
      bool le = true;
      bool lt = false;
      for (const std::string& a : individuals) {
        le = le && rankOf(o, a) <= rankOf(m, a);
        lt = lt || rankOf(o, a) < rankOf(m, a);
      }
      if (le && lt) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(m);
  }
  return out;
}

OracleReport minimalCanonicalEntails(const KnowledgeBase& kb,
                                     const AssertionQuery& q,
                                     const OracleBounds& bounds,
                                     ConsistencyCheck check) {
  if (!kb.hasIndividual(q.individual)) {
    throw KbError("unknown individual '" + q.individual + "'");
  }
  OracleReport report;
  const TypeSpace sp(kb, {q.expr});
  if (sp.tooLarge()) {
    report.reason = "vocabulary too large";
    return report;
  }
  if (!check) check = tableauConsistency(kb);
  const std::vector<std::uint64_t> types =
      typesByCheck(sp, check, static_cast<std::size_t>(bounds.max_domain));
  if (types.empty()) {
    report.reason = "KB has no model";
    return report;
  }
  if (static_cast<int>(types.size()) > bounds.max_domain) {
    report.reason = "more maximal consistent sets than the domain bound";
    return report;
  }
  // One representative per (individual ranks, query outcome).
  std::map<std::pair<std::vector<int>, bool>, RankedInterpretation> seen;
  EnumStats stats;
  enumerateModels(kb, sp, types, true, bounds, stats,
                  [&](const RankedInterpretation& m) {
                    ++report.canonical;
                    std::vector<int> key;
                    for (const std::string& a : kb.individuals()) {
                      key.push_back(rankAt(m, m.individuals.at(a)));
                    }
                    seen.emplace(std::make_pair(key, satisfies(m, q)), m);
                    return true;
                  });
  fillCounts(report, stats);
  if (seen.empty() || stats.exhausted) {
    report.reason = undecidedReason(stats, bounds.max_domain);
    return report;
  }
  std::vector<RankedInterpretation> models;
  for (const auto& [key, m] : seen) models.push_back(m);
  report.verdict = OracleVerdict::kTrue;
  for (const RankedInterpretation& m : minimalWrtABox(models, kb.individuals())) {
    if (!satisfies(m, q)) {
      report.verdict = OracleVerdict::kFalse;
      report.witness = m;
      break;
    }
  }
  return report;
}

OracleReport findModelBounded(const KnowledgeBase& kb,
                              const OracleBounds& bounds) {
  OracleReport report;
  const TypeSpace sp(kb, {});
  if (sp.tooLarge()) {
    report.reason = "vocabulary too large";
    return report;
  }
  const std::vector<std::uint64_t> types = admissibleTypes(sp);
  if (types.empty()) {
    report.verdict = OracleVerdict::kFalse;
    report.reason = "no type satisfies the strict inclusions";
    return report;
  }
  EnumStats stats;
  enumerateModels(kb, sp, types, false, bounds, stats,
                  [&](const RankedInterpretation& m) {
                    report.verdict = OracleVerdict::kTrue;
                    report.witness = m;
                    return false;
                  });
  fillCounts(report, stats);
  if (report.verdict != OracleVerdict::kTrue) {
    report.reason = stats.exhausted
                        ? "search budget exhausted"
                        : "no model with at most " +
                              std::to_string(bounds.max_domain) + " elements";
  }
  return report;
}

OracleReport findModel(const KnowledgeBase& kb, const OracleBounds& bounds) {
  if (!typeLevelFragment(kb)) return findModelBounded(kb, bounds);
  const TypeSpace sp(kb, {});
  if (sp.tooLarge()) return findModelBounded(kb, bounds);
  Elimination el(kb, sp);
  OracleReport report;
  report.witness = el.model(el.run());
  if (report.witness) {
    report.verdict = OracleVerdict::kTrue;
    report.models = 1;
  } else {
    report.verdict = OracleVerdict::kFalse;
    report.reason = "type elimination leaves no model";
  }
  return report;
}

}  // namespace dlrc
