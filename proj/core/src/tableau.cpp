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

#include "dlrc/tableau.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "dlrc/error.hpp"

namespace dlrc {

namespace {

// ---------------------------------------------------------------------------
// Dependency sets: branch levels a fact depends on. Immutable and shared, so
// copying a completion graph only bumps reference counts.

class DepSet {
 public:
  DepSet() = default;

  static DepSet single(int level) {
    DepSet d;
    auto words = std::make_shared<std::vector<std::uint64_t>>(level / 64 + 1);
    (*words)[level / 64] |= std::uint64_t{1} << (level % 64);
    d.words_ = std::move(words);
    return d;
  }

  bool empty() const { return words_ == nullptr; }

  bool has(int level) const {
    if (!words_) return false;
    const std::size_t w = static_cast<std::size_t>(level) / 64;
    return w < words_->size() && ((*words_)[w] >> (level % 64)) & 1U;
  }

  DepSet operator|(const DepSet& o) const {
    if (!o.words_ || words_ == o.words_) return *this;
    if (!words_) return o;
    const auto& a = *words_;
    const auto& b = *o.words_;
    // Fast path: o is a subset of this.
    bool subset = b.size() <= a.size();
    for (std::size_t i = 0; subset && i < b.size(); ++i) {
      subset = (a[i] | b[i]) == a[i];
    }
    if (subset) return *this;
    auto words = std::make_shared<std::vector<std::uint64_t>>(
        std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < words->size(); ++i) {
      (*words)[i] = (i < a.size() ? a[i] : 0) | (i < b.size() ? b[i] : 0);
    }
    DepSet d;
    d.words_ = std::move(words);
    return d;
  }

  DepSet& operator|=(const DepSet& o) { return *this = *this | o; }

  DepSet without(int level) const {
    if (!has(level)) return *this;
    auto words = std::make_shared<std::vector<std::uint64_t>>(*words_);
    (*words)[level / 64] &= ~(std::uint64_t{1} << (level % 64));
    while (!words->empty() && words->back() == 0) words->pop_back();
    DepSet d;
    if (!words->empty()) d.words_ = std::move(words);
    return d;
  }

 private:
  std::shared_ptr<const std::vector<std::uint64_t>> words_;
};

struct ClashSignal {
  DepSet dep;
};

// ---------------------------------------------------------------------------
// Concept pool: NNF concepts interned to dense ids for this run.

using Id = int;
constexpr int kUniversalRole = -1;

struct CInfo {
  ConceptKind kind = ConceptKind::kTop;
  int atom = -1;  // atom index for kAtom, and for kNot of an atom
  int role = 0;   // 2 * role index + inverted, or kUniversalRole
  unsigned n = 0;
  std::vector<Id> ops;
  Id compl_id = -1;
};

class Pool {
 public:
  Id intern(const Concept& c) {
    auto it = ids_.find(c);
    if (it != ids_.end()) return it->second;
    CInfo info;
    info.kind = c.kind();
    info.n = c.cardinality();
    if (c.is(ConceptKind::kAtom)) info.atom = atomIndex(c.name());
    if (c.is(ConceptKind::kNot)) {
      if (!c.operand().is(ConceptKind::kAtom)) {
        throw std::logic_error("tableau input is not in NNF");
      }
      info.atom = atomIndex(c.operand().name());
    }
    switch (c.kind()) {
      case ConceptKind::kExists:
      case ConceptKind::kForall:
      case ConceptKind::kAtLeast:
      case ConceptKind::kAtMost:
        info.role = roleId(c.role());
        break;
      case ConceptKind::kTyp:
        throw KbError("typicality reached the tableau");
      default:
        break;
    }
    for (const Concept& d : c.operands()) info.ops.push_back(intern(d));
    const Id id = static_cast<Id>(concepts_.size());
    concepts_.push_back(c);
    info_.push_back(std::move(info));
    ids_.emplace(c, id);
    return id;
  }

  Id complementOf(Id id) {
    if (info_[id].compl_id < 0) {
      const Id c = intern(complement(concepts_[id]));
      info_[id].compl_id = c;
      info_[c].compl_id = id;
    }
    return info_[id].compl_id;
  }

  const CInfo& info(Id id) const { return info_[id]; }
  const Concept& expr(Id id) const { return concepts_[id]; }
  std::size_t size() const { return concepts_.size(); }

  int roleId(const Role& r) {
    if (r.isUniversal()) return kUniversalRole;
    auto it = role_index_.find(r.name);
    int idx;
    if (it == role_index_.end()) {
      idx = static_cast<int>(role_names_.size());
      role_names_.push_back(r.name);
      role_index_.emplace(r.name, idx);
    } else {
      idx = it->second;
    }
    return 2 * idx + (r.inverted ? 1 : 0);
  }

  Role role(int id) const {
    return Role(role_names_[id / 2], (id & 1) != 0);
  }
  int roleCount() const { return static_cast<int>(role_names_.size()) * 2; }

  int atomIndex(const std::string& name) {
    auto it = atom_index_.find(name);
    if (it != atom_index_.end()) return it->second;
    const int idx = static_cast<int>(atom_names_.size());
    atom_names_.push_back(name);
    atom_index_.emplace(name, idx);
    return idx;
  }
  const std::string& atomName(int idx) const { return atom_names_[idx]; }
  Id atomConcept(int idx) { return intern(Concept::Atom(atom_names_[idx])); }

  Id top() { return intern(Concept::Top()); }
  Id bottom() { return intern(Concept::Bottom()); }

 private:
  // Deques keep references stable while rules intern new concepts.
  std::unordered_map<Concept, Id, ConceptHash> ids_;
  std::deque<Concept> concepts_;
  std::deque<CInfo> info_;
  std::unordered_map<std::string, int> role_index_;
  std::vector<std::string> role_names_;
  std::unordered_map<std::string, int> atom_index_;
  std::vector<std::string> atom_names_;
};

inline int inverseRole(int r) { return r ^ 1; }

// ---------------------------------------------------------------------------
// Completion graph.

struct LabelEntry {
  Id id;
  DepSet dep;
};

struct RoleEntry {
  int role;
  DepSet dep;
};

struct Edge {
  int to;
  std::vector<RoleEntry> roles;  // sorted by role
};

struct Node {
  bool alive = true;
  bool root = false;
  int parent = -1;
  std::vector<std::string> names;   // individuals represented by this node
  std::vector<LabelEntry> label;    // sorted by id
  std::vector<Edge> out;
  std::vector<int> in;              // sources of edges into this node

  const LabelEntry* find(Id id) const {
    auto it = std::lower_bound(
        label.begin(), label.end(), id,
        [](const LabelEntry& e, Id v) { return e.id < v; });
    return it != label.end() && it->id == id ? &*it : nullptr;
  }
};

struct Inequality {
  int a;
  int b;
  DepSet dep;
};

struct Graph {
  std::vector<Node> nodes;
  std::vector<Inequality> ineqs;
  std::vector<LabelEntry> global;  // concepts every node must contain
};

struct Neighbour {
  int node;
  DepSet dep;  // dependency of the connecting edge
};

// Lhs-conjunction of atoms absorbed into a lazy unfolding rule.
struct Absorbed {
  std::vector<int> atoms;  // atom indices, sorted
  Id rhs;
};

// ---------------------------------------------------------------------------

class Reasoner {
 public:
  Reasoner(const KnowledgeBase& kb, const TableauOptions& opts)
      : kb_(kb), opts_(opts) {}

  Verdict run(const std::vector<Concept>& fresh_roots);

 private:
  using Result = std::optional<DepSet>;  // nullopt: satisfiable

  void prepare(const std::vector<Concept>& fresh_roots, Graph& g);
  void buildRoleTables();
  Result solve(Graph g, int level);

  // Deterministic expansion via the work list. Throws ClashSignal.
  void saturate(Graph& g);
  void process(Graph& g, int x, Id id);

  bool addLabel(Graph& g, int x, Id id, const DepSet& dep);
  void addGlobal(Graph& g, Id id, const DepSet& dep);
  int newNode(Graph& g, bool root, int parent);
  void addEdgeRole(Graph& g, int from, int to, int role, const DepSet& dep);
  Edge* findEdge(Graph& g, int from, int to);
  void removeEdge(Graph& g, int from, int to);
  void touchNeighbourhood(Graph& g, int x);

  std::vector<Neighbour> neighbours(Graph& g, int x, int role);
  const DepSet* unequal(const Graph& g, int a, int b) const;
  void merge(Graph& g, int from, int into, const DepSet& dep);
  void prune(Graph& g, int x);

  std::vector<int> blockingStatus(const Graph& g) const;
  bool sameLabel(const Node& a, const Node& b) const;
  std::vector<int> edgeRoles(const Graph& g, int from, int to) const;

  // Branch alternatives. Each alternative mutates a copy of the graph.
  struct Alternative {
    enum Kind { kAddConcept, kMerge } kind;
    int node = -1;
    Id id = -1;
    int from = -1;  // merge source
    int into = -1;  // merge target
    DepSet dep;
  };
  bool findBranch(Graph& g, const std::vector<int>& blocked,
                  std::vector<Alternative>& alts, DepSet& clash_dep,
                  bool& clash);
  bool generate(Graph& g, const std::vector<int>& blocked);
  bool hasConcept(const Node& n, Id id) const;
  std::optional<DepSet> distinctClique(const Graph& g,
                                       const std::vector<Neighbour>& cands,
                                       unsigned n) const;

  void countRule() {
    if (++stats_.rule_applications > opts_.max_rule_applications) {
      throw ResourceLimitError("tableau rule budget exhausted");
    }
  }

  void trace(const Graph& g, const char* what) const;
  std::optional<FiniteModel> extractModel(const Graph& g) const;
  FiniteModel foldedModel(const Graph& g, const std::vector<int>& state,
                          const std::vector<int>& target,
                          std::vector<int>& index) const;
  bool labelHolds(const Graph& g, const FiniteModel& m, int x, int at,
                  bool at_most_only) const;

  const KnowledgeBase& kb_;
  const TableauOptions& opts_;
  Pool pool_;
  TableauStats stats_;
  Id top_ = -1;
  Id bottom_ = -1;

  std::vector<std::vector<char>> sub_;     // sub_[r][s]: r is a sub-role of s
  std::vector<char> transitive_;           // per role id
  std::vector<std::vector<Id>> unfold_;    // per atom: absorbed A <= D
  std::vector<std::vector<int>> conj_of_;  // per atom: indexes into conj_
  std::vector<Absorbed> conj_;
  std::vector<Id> gcis_;                   // internalised general inclusions

  std::vector<std::pair<int, Id>> work_;
  std::optional<FiniteModel> witness_;
  bool sat_seen_ = false;
  unsigned fold_failures_ = 0;
};

// ---------------------------------------------------------------------------
// Setup.

void Reasoner::prepare(const std::vector<Concept>& fresh_roots, Graph& g) {
  top_ = pool_.top();
  bottom_ = pool_.bottom();
  for (const std::string& r : kb_.rbox().roles()) pool_.roleId(Role(r));

  std::vector<std::pair<std::vector<int>, Id>> absorbed;
  for (const ConceptInclusion& ax : kb_.tbox()) {
    if (ax.lhs.containsTyp() || ax.rhs.containsTyp()) {
      throw KbError("tableau input contains typicality");
    }
    const Concept lhs = nnf(ax.lhs);
    const Concept rhs = nnf(ax.rhs);
    if (rhs.is(ConceptKind::kTop)) continue;
    std::vector<int> atoms;
    bool atomic = false;
    if (lhs.is(ConceptKind::kAtom)) {
      atomic = true;
      atoms.push_back(pool_.atomIndex(lhs.name()));
    } else if (lhs.is(ConceptKind::kAnd)) {
      atomic = std::all_of(lhs.operands().begin(), lhs.operands().end(),
                           [](const Concept& c) { return c.is(ConceptKind::kAtom); });
      if (atomic) {
        for (const Concept& c : lhs.operands()) {
          atoms.push_back(pool_.atomIndex(c.name()));
        }
      }
    }
    if (atomic) {
      std::sort(atoms.begin(), atoms.end());
      absorbed.emplace_back(std::move(atoms), pool_.intern(rhs));
    } else if (lhs.is(ConceptKind::kTop)) {
      gcis_.push_back(pool_.intern(rhs));
    } else {
      gcis_.push_back(pool_.intern(Concept::Or(complement(lhs), rhs)));
    }
  }

  // Roots: named individuals, then fresh anonymous roots.
  std::unordered_map<std::string, int> node_of;
  for (const std::string& a : kb_.individuals()) {
    const int x = newNode(g, true, -1);
    g.nodes[x].names.push_back(a);
    node_of[a] = x;
  }
  std::vector<std::pair<int, Id>> initial;
  for (const Assertion& as : kb_.abox()) {
    if (auto* ca = std::get_if<ConceptAssertion>(&as)) {
      if (ca->expr.containsTyp()) {
        throw KbError("tableau input contains typicality");
      }
      initial.emplace_back(node_of.at(ca->individual),
                           pool_.intern(nnf(ca->expr)));
    }
  }
  for (const Concept& c : fresh_roots) {
    const int x = newNode(g, true, -1);
    initial.emplace_back(x, pool_.intern(nnf(c)));
  }
  if (g.nodes.empty()) newNode(g, true, -1);

  // Roles may have been introduced by concepts; size the tables now.
  buildRoleTables();
  unfold_.assign(1024, {});
  conj_of_.assign(1024, {});
  for (auto& [atoms, rhs] : absorbed) {
    for (int a : atoms) {
      if (static_cast<std::size_t>(a) >= unfold_.size()) {
        unfold_.resize(a + 1);
        conj_of_.resize(a + 1);
      }
    }
    if (atoms.size() == 1) {
      unfold_[atoms.front()].push_back(rhs);
    } else {
      const int idx = static_cast<int>(conj_.size());
      for (int a : atoms) conj_of_[a].push_back(idx);
      conj_.push_back({atoms, rhs});
    }
  }

  for (Id id : gcis_) addGlobal(g, id, DepSet());
  for (const Assertion& as : kb_.abox()) {
    if (auto* ra = std::get_if<RoleAssertion>(&as)) {
      addEdgeRole(g, node_of.at(ra->subject), node_of.at(ra->object),
                  pool_.roleId(ra->role), DepSet());
    }
  }
  for (auto [x, id] : initial) addLabel(g, x, id, DepSet());
}

void Reasoner::buildRoleTables() {
  const int n = pool_.roleCount();
  sub_.assign(n, std::vector<char>(n, 0));
  transitive_.assign(n, 0);
  for (int r = 0; r < n; ++r) {
    const Role rr = pool_.role(r);
    transitive_[r] = kb_.rbox().isTransitive(rr) ? 1 : 0;
    for (int s = 0; s < n; ++s) {
      sub_[r][s] = kb_.rbox().isSubRole(rr, pool_.role(s)) ? 1 : 0;
    }
  }
}

// ---------------------------------------------------------------------------
// Graph primitives.

int Reasoner::newNode(Graph& g, bool root, int parent) {
  if (++stats_.nodes_created > opts_.max_nodes) {
    throw ResourceLimitError("tableau node budget exhausted");
  }
  const int x = static_cast<int>(g.nodes.size());
  g.nodes.emplace_back();
  g.nodes[x].root = root;
  g.nodes[x].parent = parent;
  for (const LabelEntry& e : std::vector<LabelEntry>(g.global)) {
    addLabel(g, x, e.id, e.dep);
  }
  return x;
}

bool Reasoner::hasConcept(const Node& n, Id id) const {
  return id == top_ || n.find(id) != nullptr;
}

bool Reasoner::addLabel(Graph& g, int x, Id id, const DepSet& dep) {
  if (id == top_) return false;
  Node& n = g.nodes[x];
  auto it = std::lower_bound(
      n.label.begin(), n.label.end(), id,
      [](const LabelEntry& e, Id v) { return e.id < v; });
  if (it != n.label.end() && it->id == id) return false;
  countRule();
  if (id == bottom_) throw ClashSignal{dep};
  const Id c = pool_.complementOf(id);
  if (const LabelEntry* e = n.find(c)) throw ClashSignal{dep | e->dep};
  n.label.insert(it, LabelEntry{id, dep});
  work_.emplace_back(x, id);
  return true;
}

void Reasoner::addGlobal(Graph& g, Id id, const DepSet& dep) {
  for (const LabelEntry& e : g.global) {
    if (e.id == id) return;
  }
  g.global.push_back({id, dep});
  for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x) {
    if (g.nodes[x].alive) addLabel(g, x, id, dep);
  }
}

Edge* Reasoner::findEdge(Graph& g, int from, int to) {
  for (Edge& e : g.nodes[from].out) {
    if (e.to == to) return &e;
  }
  return nullptr;
}

void Reasoner::addEdgeRole(Graph& g, int from, int to, int role,
                           const DepSet& dep) {
  Edge* e = findEdge(g, from, to);
  if (e == nullptr) {
    g.nodes[from].out.push_back(Edge{to, {}});
    e = &g.nodes[from].out.back();
    if (from != to) g.nodes[to].in.push_back(from);
  }
  auto it = std::lower_bound(
      e->roles.begin(), e->roles.end(), role,
      [](const RoleEntry& r, int v) { return r.role < v; });
  if (it != e->roles.end() && it->role == role) return;
  countRule();
  e->roles.insert(it, RoleEntry{role, dep});
  touchNeighbourhood(g, from);
  if (from != to) touchNeighbourhood(g, to);
}

void Reasoner::removeEdge(Graph& g, int from, int to) {
  auto& out = g.nodes[from].out;
  out.erase(std::remove_if(out.begin(), out.end(),
                           [to](const Edge& e) { return e.to == to; }),
            out.end());
  auto& in = g.nodes[to].in;
  in.erase(std::remove(in.begin(), in.end(), from), in.end());
}

// Re-queues the universal restrictions of x after its neighbourhood changed.
void Reasoner::touchNeighbourhood(Graph& g, int x) {
  for (const LabelEntry& e : g.nodes[x].label) {
    if (pool_.info(e.id).kind == ConceptKind::kForall) {
      work_.emplace_back(x, e.id);
    }
  }
}

std::vector<Neighbour> Reasoner::neighbours(Graph& g, int x, int role) {
  std::vector<Neighbour> out;
  auto push = [&out](int y, const DepSet& d) {
    for (const Neighbour& n : out) {
      if (n.node == y) return;
    }
    out.push_back({y, d});
  };
  const Node& n = g.nodes[x];
  for (const Edge& e : n.out) {
    if (!g.nodes[e.to].alive) continue;
    for (const RoleEntry& r : e.roles) {
      if (sub_[r.role][role]) {
        push(e.to, r.dep);
        break;
      }
    }
    if (e.to == x) {
      for (const RoleEntry& r : e.roles) {
        if (sub_[inverseRole(r.role)][role]) {
          push(x, r.dep);
          break;
        }
      }
    }
  }
  for (int z : n.in) {
    if (!g.nodes[z].alive) continue;
    for (const Edge& e : g.nodes[z].out) {
      if (e.to != x) continue;
      for (const RoleEntry& r : e.roles) {
        if (sub_[inverseRole(r.role)][role]) {
          push(z, r.dep);
          break;
        }
      }
    }
  }
  return out;
}

const DepSet* Reasoner::unequal(const Graph& g, int a, int b) const {
  for (const Inequality& q : g.ineqs) {
    if ((q.a == a && q.b == b) || (q.a == b && q.b == a)) return &q.dep;
  }
  return nullptr;
}

void Reasoner::prune(Graph& g, int x) {
  Node& n = g.nodes[x];
  if (!n.alive) return;
  n.alive = false;
  std::vector<Edge> out = std::move(n.out);
  n.out.clear();
  for (const Edge& e : out) {
    if (e.to == x) continue;
    auto& in = g.nodes[e.to].in;
    in.erase(std::remove(in.begin(), in.end(), x), in.end());
    if (!g.nodes[e.to].root && g.nodes[e.to].parent == x) prune(g, e.to);
  }
  for (int z : std::vector<int>(n.in)) removeEdge(g, z, x);
  n.label.clear();
}

// Merges node `from` into `into`; the caller picks the direction so that
// blockable nodes are merged into roots or into their ancestors.
void Reasoner::merge(Graph& g, int from, int into, const DepSet& dep) {
  countRule();
  Node& y = g.nodes[from];
  std::vector<LabelEntry> label = y.label;
  std::vector<int> in = y.in;
  std::vector<Edge> out = y.out;
  std::vector<std::string> names = y.names;

  for (const LabelEntry& e : label) addLabel(g, into, e.id, e.dep | dep);

  auto inverted = [](std::vector<RoleEntry> rs) {
    for (RoleEntry& r : rs) r.role = inverseRole(r.role);
    return rs;
  };
  auto add_all = [&](int a, int b, const std::vector<RoleEntry>& rs) {
    for (const RoleEntry& r : rs) addEdgeRole(g, a, b, r.role, r.dep | dep);
  };

  for (int z : in) {
    if (!g.nodes[z].alive || z == from) continue;
    Edge* e = findEdge(g, z, from);
    if (e == nullptr) continue;
    std::vector<RoleEntry> roles = e->roles;
    removeEdge(g, z, from);
    if (z == into) {
      add_all(into, into, roles);
    } else if (findEdge(g, z, into) != nullptr) {
      add_all(z, into, roles);
    } else if (findEdge(g, into, z) != nullptr) {
      add_all(into, z, inverted(roles));
    } else if (g.nodes[into].root || !g.nodes[z].root) {
      add_all(z, into, roles);
    } else {
      add_all(into, z, inverted(roles));
    }
  }
  for (const Edge& e : out) {
    if (e.to == from) {
      add_all(into, into, e.roles);
    } else if (g.nodes[e.to].alive && g.nodes[e.to].root) {
      if (e.to == into) {
        add_all(into, into, e.roles);
      } else {
        add_all(into, e.to, e.roles);
      }
    }
  }

  std::vector<Inequality> moved;
  for (const Inequality& q : g.ineqs) {
    int other = q.a == from ? q.b : (q.b == from ? q.a : -1);
    if (other < 0) continue;
    if (other == into) throw ClashSignal{q.dep | dep};
    moved.push_back({into, other, q.dep | dep});
  }
  for (const Inequality& q : moved) {
    if (unequal(g, q.a, q.b) == nullptr) g.ineqs.push_back(q);
  }

  for (const std::string& a : names) g.nodes[into].names.push_back(a);
  g.nodes[from].names.clear();
  prune(g, from);
  for (const LabelEntry& e : g.nodes[into].label) work_.emplace_back(into, e.id);
}

// ---------------------------------------------------------------------------
// Deterministic rules.

void Reasoner::saturate(Graph& g) {
  while (!work_.empty()) {
    auto [x, id] = work_.back();
    work_.pop_back();
    if (!g.nodes[x].alive || g.nodes[x].find(id) == nullptr) continue;
    process(g, x, id);
  }
}

void Reasoner::process(Graph& g, int x, Id id) {
  const CInfo& info = pool_.info(id);
  const DepSet dep = g.nodes[x].find(id)->dep;
  switch (info.kind) {
    case ConceptKind::kAnd:
      for (Id op : std::vector<Id>(info.ops)) addLabel(g, x, op, dep);
      break;
    case ConceptKind::kAtom: {
      const int a = info.atom;
      if (static_cast<std::size_t>(a) < unfold_.size()) {
        for (Id rhs : unfold_[a]) addLabel(g, x, rhs, dep);
        for (int ci : conj_of_[a]) {
          const Absorbed& ab = conj_[ci];
          DepSet d = dep;
          bool all = true;
          for (int b : ab.atoms) {
            const LabelEntry* e = g.nodes[x].find(pool_.atomConcept(b));
            if (e == nullptr) {
              all = false;
              break;
            }
            d |= e->dep;
          }
          if (all) addLabel(g, x, ab.rhs, d);
        }
      }
      break;
    }
    case ConceptKind::kForall: {
      const Id body = info.ops.front();
      if (info.role == kUniversalRole) {
        addGlobal(g, body, dep);
        break;
      }
      for (const Neighbour& nb : neighbours(g, x, info.role)) {
        addLabel(g, nb.node, body, dep | nb.dep);
      }
      // Transitive sub-roles propagate the restriction itself.
      for (int r = 0; r < pool_.roleCount(); ++r) {
        if (!transitive_[r] || !sub_[r][info.role]) continue;
        const Id fr = pool_.intern(
            Concept::Forall(pool_.role(r), pool_.expr(body)));
        for (const Neighbour& nb : neighbours(g, x, r)) {
          addLabel(g, nb.node, fr, dep | nb.dep);
        }
      }
      break;
    }
    default:
      break;
  }
}

// ---------------------------------------------------------------------------
// Blocking.

bool Reasoner::sameLabel(const Node& a, const Node& b) const {
  if (a.label.size() != b.label.size()) return false;
  for (std::size_t i = 0; i < a.label.size(); ++i) {
    if (a.label[i].id != b.label[i].id) return false;
  }
  return true;
}

std::vector<int> Reasoner::edgeRoles(const Graph& g, int from, int to) const {
  std::vector<int> out;
  for (const Edge& e : g.nodes[from].out) {
    if (e.to != to) continue;
    for (const RoleEntry& r : e.roles) out.push_back(r.role);
  }
  return out;
}

// 0: not blocked, 1: directly blocked, 2: indirectly blocked.
std::vector<int> Reasoner::blockingStatus(const Graph& g) const {
  std::vector<int> status(g.nodes.size(), 0);
  for (std::size_t xi = 0; xi < g.nodes.size(); ++xi) {
    const Node& x = g.nodes[xi];
    if (!x.alive || x.root) continue;
    const int xp = x.parent;
    if (status[xp] != 0) {
      status[xi] = 2;
      continue;
    }
    const std::vector<int> x_edge = edgeRoles(g, xp, static_cast<int>(xi));
    for (int y = xp; y >= 0 && !g.nodes[y].root; y = g.nodes[y].parent) {
      const int yp = g.nodes[y].parent;
      if (sameLabel(x, g.nodes[y]) && sameLabel(g.nodes[xp], g.nodes[yp]) &&
          x_edge == edgeRoles(g, yp, y)) {
        status[xi] = 1;
        break;
      }
    }
  }
  return status;
}

// ---------------------------------------------------------------------------
// Non-deterministic rules.

std::optional<DepSet> Reasoner::distinctClique(
    const Graph& g, const std::vector<Neighbour>& cands, unsigned n) const {
  if (n == 0) return DepSet();
  if (cands.size() < n) return std::nullopt;
  if (n == 1) return cands.front().dep;
  // Depth-first search for n pairwise distinct candidates.
  std::vector<int> pick;
  std::optional<DepSet> found;
  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (found) return;
    if (pick.size() == n) {
      DepSet d;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        d |= cands[pick[i]].dep;
        for (std::size_t j = i + 1; j < pick.size(); ++j) {
          d |= *unequal(g, cands[pick[i]].node, cands[pick[j]].node);
        }
      }
      found = d;
      return;
    }
    for (std::size_t k = start; k < cands.size(); ++k) {
      bool ok = true;
      for (int p : pick) {
        if (unequal(g, cands[p].node, cands[k].node) == nullptr) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      pick.push_back(static_cast<int>(k));
      dfs(k + 1);
      pick.pop_back();
    }
  };
  dfs(0);
  return found;
}

bool Reasoner::findBranch(Graph& g, const std::vector<int>& blocked,
                          std::vector<Alternative>& alts, DepSet& clash_dep,
                          bool& clash) {
  for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x) {
    if (!g.nodes[x].alive || blocked[x] == 2) continue;
    const std::vector<LabelEntry> label = g.nodes[x].label;
    for (const LabelEntry& e : label) {
      const CInfo& info = pool_.info(e.id);
      if (info.kind == ConceptKind::kOr) {
        bool done = false;
        for (Id op : info.ops) {
          if (g.nodes[x].find(op) != nullptr) {
            done = true;
            break;
          }
        }
        if (done) continue;
        for (Id op : info.ops) {
          alts.push_back({Alternative::kAddConcept, x, op, -1, -1, e.dep});
        }
        return true;
      }
    }
    for (const LabelEntry& e : label) {
      const CInfo& info = pool_.info(e.id);
      if (info.kind != ConceptKind::kAtMost) continue;
      const Id c = info.ops.front();
      std::vector<Neighbour> nbs = neighbours(g, x, info.role);
      // choose rule
      if (c != top_) {
        const Id nc = pool_.complementOf(c);
        for (const Neighbour& nb : nbs) {
          const Node& y = g.nodes[nb.node];
          if (y.find(c) == nullptr && y.find(nc) == nullptr) {
            alts.push_back({Alternative::kAddConcept, nb.node, c, -1, -1,
                            e.dep | nb.dep});
            alts.push_back({Alternative::kAddConcept, nb.node, nc, -1, -1,
                            e.dep | nb.dep});
            return true;
          }
        }
      }
      // <= rule
      std::vector<Neighbour> with_c;
      for (const Neighbour& nb : nbs) {
        if (c == top_) {
          with_c.push_back(nb);
        } else if (const LabelEntry* ce = g.nodes[nb.node].find(c)) {
          with_c.push_back({nb.node, nb.dep | ce->dep});
        }
      }
      if (with_c.size() <= info.n) continue;
      DepSet all = e.dep;
      for (const Neighbour& nb : with_c) all |= nb.dep;
      for (std::size_t i = 0; i < with_c.size(); ++i) {
        for (std::size_t j = i + 1; j < with_c.size(); ++j) {
          int a = with_c[i].node;
          int b = with_c[j].node;
          if (const DepSet* d = unequal(g, a, b)) {
            all |= *d;
            continue;
          }
          // Merge into a root if there is one, else into the ancestor.
          const Node& na = g.nodes[a];
          const Node& nbn = g.nodes[b];
          int from = b;
          int into = a;
          if (na.root && nbn.root) {
            if (a > b) std::swap(from, into);
          } else if (na.root) {
            from = b;
            into = a;
          } else if (nbn.root) {
            from = a;
            into = b;
          } else if (g.nodes[x].parent == a) {
            from = b;
            into = a;
          } else if (g.nodes[x].parent == b) {
            from = a;
            into = b;
          } else if (a > b) {
            std::swap(from, into);
          }
          alts.push_back({Alternative::kMerge, -1, -1, from, into,
                          e.dep | with_c[i].dep | with_c[j].dep});
        }
      }
      if (alts.empty()) {
        clash = true;
        clash_dep = all;
        return true;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Generating rules.

bool Reasoner::generate(Graph& g, const std::vector<int>& blocked) {
  // Universal existentials first: they create new roots.
  for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x) {
    if (!g.nodes[x].alive || blocked[x] == 2) continue;
    for (const LabelEntry& e : std::vector<LabelEntry>(g.nodes[x].label)) {
      const CInfo& info = pool_.info(e.id);
      if (info.kind != ConceptKind::kExists || info.role != kUniversalRole) {
        continue;
      }
      const Id body = info.ops.front();
      bool found = false;
      for (const Node& n : g.nodes) {
        if (n.alive && hasConcept(n, body)) {
          found = true;
          break;
        }
      }
      if (found) continue;
      const int y = newNode(g, true, -1);
      addLabel(g, y, body, e.dep);
      return true;
    }
  }
  for (int x = 0; x < static_cast<int>(g.nodes.size()); ++x) {
    if (!g.nodes[x].alive || blocked[x] != 0) continue;
    for (const LabelEntry& e : std::vector<LabelEntry>(g.nodes[x].label)) {
      const CInfo& info = pool_.info(e.id);
      if (info.role == kUniversalRole) continue;
      if (info.kind == ConceptKind::kExists) {
        const Id body = info.ops.front();
        bool found = false;
        for (const Neighbour& nb : neighbours(g, x, info.role)) {
          if (hasConcept(g.nodes[nb.node], body)) {
            found = true;
            break;
          }
        }
        if (found) continue;
        const int y = newNode(g, false, x);
        addEdgeRole(g, x, y, info.role, e.dep);
        addLabel(g, y, body, e.dep);
        return true;
      }
      if (info.kind == ConceptKind::kAtLeast) {
        const Id body = info.ops.front();
        std::vector<Neighbour> cands;
        for (const Neighbour& nb : neighbours(g, x, info.role)) {
          if (hasConcept(g.nodes[nb.node], body)) cands.push_back(nb);
        }
        if (distinctClique(g, cands, info.n)) continue;
        std::vector<int> made;
        for (unsigned i = 0; i < info.n; ++i) {
          const int y = newNode(g, false, x);
          addEdgeRole(g, x, y, info.role, e.dep);
          addLabel(g, y, body, e.dep);
          for (int z : made) g.ineqs.push_back({z, y, e.dep});
          made.push_back(y);
        }
        return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Search.

Reasoner::Result Reasoner::solve(Graph g, int level) {
  try {
    for (;;) {
      saturate(g);
      std::vector<int> blocked = blockingStatus(g);
      std::vector<Alternative> alts;
      DepSet clash_dep;
      bool clash = false;
      if (findBranch(g, blocked, alts, clash_dep, clash)) {
        if (clash) return clash_dep;
        const int b = level + 1;
        ++stats_.branch_points;
        DepSet acc;
        for (std::size_t i = 0; i < alts.size(); ++i) {
          const Alternative& alt = alts[i];
          Graph h = g;
          work_.clear();
          Result r;
          try {
            const DepSet dep = alt.dep | DepSet::single(b);
            if (alt.kind == Alternative::kAddConcept) {
              addLabel(h, alt.node, alt.id, dep);
            } else {
              merge(h, alt.from, alt.into, dep);
            }
            r = solve(std::move(h), b);
          } catch (const ClashSignal& c) {
            r = c.dep;
          }
          if (!r) return std::nullopt;
          if (!r->has(b)) {
            work_.clear();
            return r;
          }
          ++stats_.backtracks;
          acc |= r->without(b);
        }
        work_.clear();
        return acc;
      }
      if (generate(g, blocked)) continue;
      // Complete and clash free.
      if (opts_.trace != nullptr) trace(g, "complete");
      if (opts_.witness_attempts == 0) return std::nullopt;
      witness_ = extractModel(g);
      if (witness_) return std::nullopt;
      // Satisfiable, but this graph does not fold into a finite model. Keep
      // searching other branches for one that does, within the budget.
      sat_seen_ = true;
      if (++fold_failures_ >= opts_.witness_attempts) return std::nullopt;
      DepSet all;
      for (int b = 1; b <= level; ++b) all |= DepSet::single(b);
      return all;
    }
  } catch (const ClashSignal& c) {
    work_.clear();
    if (opts_.trace != nullptr) trace(g, "clash");
    return c.dep;
  }
}

void Reasoner::trace(const Graph& g, const char* what) const {
  std::ostream& os = *opts_.trace;
  os << "# " << what << '\n';
  for (std::size_t x = 0; x < g.nodes.size(); ++x) {
    const Node& n = g.nodes[x];
    if (!n.alive) continue;
    os << "node " << x << (n.root ? " root" : " parent=" + std::to_string(n.parent));
    for (const std::string& a : n.names) os << " =" << a;
    os << " :";
    for (const LabelEntry& e : n.label) {
      os << " {" << printConcept(pool_.expr(e.id)) << '}';
    }
    os << '\n';
    for (const Edge& e : n.out) {
      os << "edge " << x << " -> " << e.to << " :";
      for (const RoleEntry& r : e.roles) os << ' ' << printRole(pool_.role(r.role));
      os << '\n';
    }
  }
  for (const Inequality& q : g.ineqs) {
    if (g.nodes[q.a].alive && g.nodes[q.b].alive) {
      os << "distinct " << q.a << ' ' << q.b << '\n';
    }
  }
}

// Truth of c at x, used to validate a folded completion graph.
bool holds(const FiniteModel& m, const Concept& c, int x) {
  auto successors = [&m, x](const Role& r) {
    std::vector<int> out;
    if (r.isUniversal()) {
      for (int y = 0; y < m.domain_size; ++y) out.push_back(y);
      return out;
    }
    auto it = m.roles.find(r.name);
    if (it == m.roles.end()) return out;
    for (auto [a, b] : it->second) {
      if (!r.inverted && a == x) out.push_back(b);
      if (r.inverted && b == x) out.push_back(a);
    }
    return out;
  };
  auto count = [&](const Concept& d) {
    unsigned n = 0;
    for (int y : successors(d.role())) n += holds(m, d.operand(), y) ? 1 : 0;
    return n;
  };
  switch (c.kind()) {
    case ConceptKind::kTop:
      return true;
    case ConceptKind::kBottom:
      return false;
    case ConceptKind::kAtom: {
      auto it = m.atoms.find(c.name());
      return it != m.atoms.end() && it->second.count(x) > 0;
    }
    case ConceptKind::kNot:
      return !holds(m, c.operand(), x);
    case ConceptKind::kAnd:
      for (const Concept& d : c.operands()) {
        if (!holds(m, d, x)) return false;
      }
      return true;
    case ConceptKind::kOr:
      for (const Concept& d : c.operands()) {
        if (holds(m, d, x)) return true;
      }
      return false;
    case ConceptKind::kExists:
      return count(c) >= 1;
    case ConceptKind::kForall:
      return count(c) == successors(c.role()).size();
    case ConceptKind::kAtLeast:
      return count(c) >= c.cardinality();
    case ConceptKind::kAtMost:
      return count(c) <= c.cardinality();
    case ConceptKind::kTyp:
      break;
  }
  throw std::logic_error("typicality in tableau model check");
}

// Finite interpretation of a complete graph in which some non-root nodes are
// replaced by an earlier node with the same label. state: 0 kept, 1 replaced
// by target[x], 2 dropped (below a replaced node).
FiniteModel Reasoner::foldedModel(const Graph& g, const std::vector<int>& state,
                                  const std::vector<int>& target,
                                  std::vector<int>& index) const {
  FiniteModel m;
  index.assign(g.nodes.size(), -1);
  for (std::size_t x = 0; x < g.nodes.size(); ++x) {
    if (state[x] == 0) index[x] = m.domain_size++;
  }
  auto resolve = [&](int x) {
    if (state[x] == 1) return index[target[x]];
    return index[x];
  };
  std::map<int, std::set<std::pair<int, int>>> by_role;
  for (std::size_t x = 0; x < g.nodes.size(); ++x) {
    const Node& n = g.nodes[x];
    if (state[x] == 2) continue;
    if (state[x] == 0) {
      for (const std::string& a : n.names) m.individuals[a] = index[x];
      for (const LabelEntry& e : n.label) {
        const CInfo& info = pool_.info(e.id);
        if (info.kind == ConceptKind::kAtom) {
          m.atoms[pool_.atomName(info.atom)].insert(index[x]);
        }
      }
    }
    for (const Edge& e : n.out) {
      const int v = e.to;
      if (state[v] == 2) continue;
      // A replaced node keeps only the edge towards its parent; its
      // successors are provided by the replacement.
      if (state[x] == 1 && v != n.parent) continue;
      const int from = resolve(static_cast<int>(x));
      const int to = resolve(v);
      for (const RoleEntry& r : e.roles) {
        const int base = r.role & ~1;
        if (r.role & 1) {
          by_role[base].insert({to, from});
        } else {
          by_role[base].insert({from, to});
        }
      }
    }
  }
  // Close under the hierarchy and transitivity.
  const int nroles = pool_.roleCount();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < nroles; r += 2) {
      for (int s = 0; s < nroles; s += 2) {
        if (r == s) continue;
        auto& dst = by_role[s];
        if (sub_[r][s]) {
          for (auto p : by_role[r]) changed |= dst.insert(p).second;
        }
        if (sub_[r + 1][s]) {
          for (auto [a, b] : by_role[r]) changed |= dst.insert({b, a}).second;
        }
      }
      if (transitive_[r]) {
        auto& ext = by_role[r];
        std::vector<std::pair<int, int>> add;
        for (auto [a, b] : ext) {
          for (auto it = ext.lower_bound({b, -1}); it != ext.end() && it->first == b; ++it) {
            if (!ext.count({a, it->second})) add.push_back({a, it->second});
          }
        }
        for (auto p : add) changed |= ext.insert(p).second;
      }
    }
  }
  for (int r = 0; r < nroles; r += 2) {
    m.roles[pool_.role(r).name] = by_role[r];
  }
  return m;
}

bool Reasoner::labelHolds(const Graph& g, const FiniteModel& m, int x, int at,
                          bool at_most_only) const {
  for (const LabelEntry& e : g.nodes[x].label) {
    if (at_most_only && pool_.info(e.id).kind != ConceptKind::kAtMost) continue;
    if (!holds(m, pool_.expr(e.id), at)) return false;
  }
  return true;
}

// Builds a finite model from a complete graph. Going through the nodes in
// creation order, each non-root node is replaced by an earlier node with the
// same label when that keeps the at-most restrictions of both ends; blocked
// nodes must be replaced. The result is only returned if every label concept
// holds in it, which can fail when the KB forces an infinite model.
std::optional<FiniteModel> Reasoner::extractModel(const Graph& g) const {
  constexpr std::size_t kMaxFoldNodes = 2000;
  const std::size_t n = g.nodes.size();
  const std::vector<int> blocked = blockingStatus(g);
  std::vector<int> state(n, 0);
  std::vector<int> target(n, -1);
  std::vector<int> index;
  for (std::size_t xi = 0; xi < n; ++xi) {
    const Node& x = g.nodes[xi];
    if (!x.alive) {
      state[xi] = 2;
      continue;
    }
    if (x.root) continue;
    if (state[x.parent] != 0) {
      state[xi] = 2;
      continue;
    }
    if (n <= kMaxFoldNodes) {
      for (std::size_t z = 0; z < xi; ++z) {
        if (state[z] != 0 || !sameLabel(x, g.nodes[z])) continue;
        state[xi] = 1;
        target[xi] = static_cast<int>(z);
        FiniteModel m = foldedModel(g, state, target, index);
        if (labelHolds(g, m, x.parent, index[x.parent], true) &&
            labelHolds(g, m, static_cast<int>(z), index[z], true)) {
          break;
        }
        state[xi] = 0;
        target[xi] = -1;
      }
    }
    if (state[xi] == 0 && blocked[xi] != 0) return std::nullopt;
  }
  FiniteModel m = foldedModel(g, state, target, index);
  for (std::size_t x = 0; x < n; ++x) {
    if (state[x] != 0) continue;
    if (!labelHolds(g, m, static_cast<int>(x), index[x], false)) {
      return std::nullopt;
    }
  }
  return m;
}

Verdict Reasoner::run(const std::vector<Concept>& fresh_roots) {
  Verdict v;
  Graph g;
  Result r;
  try {
    prepare(fresh_roots, g);
    r = solve(std::move(g), 0);
  } catch (const ClashSignal& c) {
    r = c.dep;
  } catch (const ResourceLimitError&) {
    if (!sat_seen_) throw;
  }
  v.satisfiable = !r.has_value() || sat_seen_;
  if (v.satisfiable) v.witness = std::move(witness_);
  v.stats = stats_;
  return v;
}

}  // namespace

Verdict isSatisfiableWithRoots(const KnowledgeBase& kb,
                               const std::vector<Concept>& fresh_roots,
                               const TableauOptions& opts) {
  Reasoner reasoner(kb, opts);
  return reasoner.run(fresh_roots);
}

Verdict isSatisfiable(const KnowledgeBase& kb, const TableauOptions& opts) {
  return isSatisfiableWithRoots(kb, {}, opts);
}

bool entailsInclusion(const KnowledgeBase& kb, const Concept& lhs,
                      const Concept& rhs, const TableauOptions& opts,
                      TableauStats* stats) {
  TableauOptions o = opts;
  o.witness_attempts = 0;
  Verdict v = isSatisfiableWithRoots(
      kb, {Concept::And(lhs, Concept::Not(rhs))}, o);
  if (stats != nullptr) *stats = v.stats;
  return !v.satisfiable;
}

bool entailsAssertion(const KnowledgeBase& kb, const std::string& individual,
                      const Concept& c, const TableauOptions& opts,
                      TableauStats* stats) {
  if (!kb.hasIndividual(individual)) {
    throw KbError("unknown individual '" + individual + "'");
  }
  KnowledgeBase k = kb;
  k.addAssertion(ConceptAssertion{Concept::Not(c), individual});
  TableauOptions o = opts;
  o.witness_attempts = 0;
  Verdict v = isSatisfiable(k, o);
  if (stats != nullptr) *stats = v.stats;
  return !v.satisfiable;
}

}  // namespace dlrc
