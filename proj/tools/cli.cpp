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

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dlrc/abox_closure.hpp"
#include "dlrc/error.hpp"
#include "dlrc/oracle.hpp"
#include "dlrc/rational_closure.hpp"
#include "nlohmann/json.hpp"

namespace dlrc::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Settings {
  bool json = false;
  bool trace = false;
  bool timing = false;
  bool dump_encoding = false;
  bool show_assignments = false;
  bool cross_check = false;
  int max_domain = 4;
  int max_rank = 3;
  std::string kb_path;
  std::string query_text;
  std::string output_path;
  std::string route = "auto";
  std::vector<std::string> concepts;
};

// Bad input. span and line are set for parse errors.
struct InputError {
  std::string message;
  std::string source;
  std::optional<SourceSpan> span;
  std::string line;
};

struct Report {
  std::string verdict;
  int exit_code = kPositive;
  Json fields = Json::object();
  std::ostringstream text;
};

std::string lineOf(const std::string& text, int line) {
  std::istringstream in(text);
  std::string s;
  for (int i = 0; i < line && std::getline(in, s); ++i) {
  }
  return s;
}

KnowledgeBase loadKb(const std::string& path) {
  std::string text;
  try {
    text = readFile(path);
  } catch (const std::runtime_error& e) {
    throw InputError{e.what(), path, std::nullopt, ""};
  }
  try {
    return parseKB(text);
  } catch (const ParseError& e) {
    throw InputError{e.message(), path, e.span(), lineOf(text, e.span().line)};
  } catch (const KbError& e) {
    throw InputError{e.what(), path, std::nullopt, ""};
  }
}

Query loadQuery(const std::string& text) {
  try {
    return parseQuery(text);
  } catch (const ParseError& e) {
    throw InputError{e.message(), "<query>", e.span(), text};
  } catch (const KbError& e) {
    throw InputError{e.what(), "<query>", std::nullopt, ""};
  }
}

Concept loadConcept(const std::string& text) {
  try {
    return parseConcept(text);
  } catch (const ParseError& e) {
    throw InputError{e.message(), "<concept>", e.span(), text};
  } catch (const KbError& e) {
    throw InputError{e.what(), "<concept>", std::nullopt, ""};
  }
}

Json rankJson(Rank r) {
  if (r.isInfinite()) return "inf";
  return r.value();
}

std::string inclusionText(const ConceptInclusion& ax) {
  return printConcept(ax.lhs) + " <= " + printConcept(ax.rhs);
}

TypOptions typOptions(const Settings& s, std::ostream& err) {
  TypOptions opts;
  if (s.trace) opts.tableau.trace = &err;
  return opts;
}

OracleBounds bounds(const Settings& s) {
  return OracleBounds{s.max_domain, s.max_rank};
}

Json oracleJson(const OracleReport& o, const OracleBounds& b) {
  Json j;
  j["verdict"] = toString(o.verdict);
  if (!o.reason.empty()) j["reason"] = o.reason;
  j["max_domain"] = b.max_domain;
  j["max_rank"] = b.max_rank;
  j["interpretations"] = o.interpretations;
  j["models"] = o.models;
  j["minimal"] = o.minimal;
  j["canonical"] = o.canonical;
  return j;
}

void printOracle(std::ostream& os, const OracleReport& o) {
  os << "oracle: " << toString(o.verdict);
  if (!o.reason.empty()) os << " (" << o.reason << ")";
  os << "\n  interpretations " << o.interpretations << ", models " << o.models
     << ", minimal " << o.minimal << ", canonical " << o.canonical << '\n';
}

// Adds the oracle's answer next to the reasoner's.
void crossCheck(Report& r, bool answer, const OracleReport& o,
                const OracleBounds& b) {
  Json j = oracleJson(o, b);
  if (o.verdict == OracleVerdict::kUndecided) {
    j["agrees"] = nullptr;
  } else {
    j["agrees"] = answer == (o.verdict == OracleVerdict::kTrue);
  }
  r.fields["oracle"] = j;
  printOracle(r.text, o);
  if (o.verdict != OracleVerdict::kUndecided) {
    r.text << "  " << (j["agrees"].get<bool>() ? "agrees" : "DISAGREES")
           << " with the closure\n";
  }
}

void setEncoding(Report& r, const std::string& text) {
  r.fields["encoding"] = text;
  r.text << "encoding:\n" << text;
}

void cmdCheck(const Settings& s, Report& r, std::ostream& err) {
  const KnowledgeBase kb = loadKb(s.kb_path);
  if (s.dump_encoding) {
    const RankedEncoding enc = encodeRanked(kb, Concept::Top());
    setEncoding(r, printKB(enc.kb));
  }
  const Verdict v = satisfiableWithTyp(kb, typOptions(s, err));
  r.verdict = v.satisfiable ? "CONSISTENT" : "INCONSISTENT";
  r.exit_code = v.satisfiable ? kPositive : kNegative;
  r.fields["tableau"] = {{"nodes_created", v.stats.nodes_created},
                         {"rule_applications", v.stats.rule_applications},
                         {"backtracks", v.stats.backtracks}};
}

void cmdRanks(const Settings& s, Report& r, std::ostream& err) {
  const KnowledgeBase kb = loadKb(s.kb_path);
  std::vector<Concept> shown;
  for (const ConceptInclusion& ax : kb.tbox()) {
    if (ax.isDefeasible()) shown.push_back(ax.lhs.operand());
  }
  std::vector<Concept> extra;
  for (const std::string& t : s.concepts) {
    Concept c = loadConcept(t);
    if (c.containsTyp()) {
      throw InputError{"ranks are defined for concepts without T", "<concept>",
                       std::nullopt, ""};
    }
    extra.push_back(c);
    shown.push_back(c);
  }
  RationalClosure rc(kb, extra, typOptions(s, err));
  r.verdict = "RANKED";
  r.fields["levels"] = rc.table().fixpointIndex + 1;
  r.fields["entailment_calls"] = rc.stats().entailment_calls;
  Json table = Json::array();
  std::set<Concept> seen;
  for (const Concept& c : shown) {
    if (!seen.insert(nnf(c)).second) continue;
    const Rank k = rc.rank(c);
    table.push_back({{"concept", printConcept(c)}, {"rank", rankJson(k)}});
    r.text << "rank(" << printConcept(c) << ") = " << k.str() << '\n';
  }
  r.fields["ranks"] = table;
  r.text << "levels: " << rc.table().fixpointIndex + 1 << "\nentailment calls: "
         << rc.stats().entailment_calls << '\n';
}

void cmdQuery(const Settings& s, Report& r, std::ostream& err) {
  const KnowledgeBase kb = loadKb(s.kb_path);
  const Query parsed = loadQuery(s.query_text);
  const auto* q = std::get_if<SubsumptionQuery>(&parsed);
  if (!q) {
    throw InputError{"query expects an inclusion; use closure-abox for "
                     "assertions",
                     "<query>", std::nullopt, ""};
  }
  if (s.dump_encoding) {
    setEncoding(r, printKB(encodePreferential(kb.tboxOnly(), *q).kb));
  }
  RationalClosure rc(kb, {}, typOptions(s, err));
  const bool in = rc.inClosure(*q);
  r.verdict = in ? "IN-CLOSURE" : "NOT-IN-CLOSURE";
  r.exit_code = in ? kPositive : kNegative;
  r.fields["entailment_calls"] = rc.stats().entailment_calls;
  r.text << "entailment calls: " << rc.stats().entailment_calls << '\n';
  if (q->lhs.is(ConceptKind::kTyp)) {
    const Concept& c = q->lhs.operand();
    Json table = Json::array();
    for (const Concept& x : {c, Concept::And(c, Concept::Not(q->rhs))}) {
      auto it = rc.table().ranks.find(nnf(x));
      if (it == rc.table().ranks.end()) continue;
      table.push_back(
          {{"concept", printConcept(x)}, {"rank", rankJson(it->second)}});
      r.text << "rank(" << printConcept(x) << ") = " << it->second.str()
             << '\n';
    }
    r.fields["ranks"] = table;
  }
  if (s.cross_check) {
    crossCheck(r, in, minimalCanonicalEntails(kb, *q, bounds(s)), bounds(s));
  }
}

void cmdClosureABox(const Settings& s, Report& r, std::ostream& err) {
  const KnowledgeBase kb = loadKb(s.kb_path);
  const Query parsed = loadQuery(s.query_text);
  const auto* q = std::get_if<AssertionQuery>(&parsed);
  if (!q) {
    throw InputError{"closure-abox expects an assertion 'a : C ?'", "<query>",
                     std::nullopt, ""};
  }
  if (!kb.hasIndividual(q->individual)) {
    throw InputError{"unknown individual '" + q->individual + "'", "<query>",
                     std::nullopt, ""};
  }
  ABoxClosure cl(kb, {q->expr}, typOptions(s, err));
  bool in = false;
  try {
    in = cl.entails(*q);
  } catch (const InconsistentKbError&) {
    r.verdict = "INCONSISTENT";
    r.exit_code = kNegative;
    return;
  }
  r.verdict = in ? "IN-CLOSURE-ABOX" : "NOT-IN-CLOSURE-ABOX";
  r.exit_code = in ? kPositive : kNegative;
  r.fields["entailment_calls"] = cl.tbox().stats().entailment_calls;
  r.fields["assignments_checked"] = cl.stats().assignments_checked;
  r.text << "entailment calls: " << cl.tbox().stats().entailment_calls
         << "\nassignments checked: " << cl.stats().assignments_checked
         << '\n';
  const auto& minimal = cl.minimalAssignments();
  if (s.show_assignments) {
    Json list = Json::array();
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      Json k = Json::object();
      r.text << "k_" << i + 1 << ":";
      for (const auto& [a, v] : minimal[i].ranks) {
        k[a] = v;
        r.text << ' ' << a << '=' << v;
      }
      r.text << '\n';
      list.push_back(k);
    }
    r.fields["assignments"] = list;
  }
  if (s.dump_encoding) {
    std::string text;
    for (const RankAssignment& k : minimal) {
      text += printKB(encodeRanked(withMu(kb, cl.mu(k)), Concept::Top()).kb);
    }
    setEncoding(r, text);
  }
  if (s.cross_check) {
    crossCheck(r, in, minimalCanonicalEntails(kb, *q, bounds(s)), bounds(s));
  }
}

void cmdOracle(const Settings& s, Report& r) {
  const KnowledgeBase kb = loadKb(s.kb_path);
  OracleReport o;
  if (s.query_text.empty()) {
    o = findModel(kb, bounds(s));
  } else {
    const Query parsed = loadQuery(s.query_text);
    if (const auto* q = std::get_if<SubsumptionQuery>(&parsed)) {
      o = minimalCanonicalEntails(kb, *q, bounds(s));
    } else if (const auto* a = std::get_if<AssertionQuery>(&parsed)) {
      if (!kb.hasIndividual(a->individual)) {
        throw InputError{"unknown individual '" + a->individual + "'",
                         "<query>", std::nullopt, ""};
      }
      o = minimalCanonicalEntails(kb, *a, bounds(s));
    } else {
      throw InputError{"the oracle answers inclusions and assertions only",
                       "<query>", std::nullopt, ""};
    }
  }
  r.verdict = toString(o.verdict);
  r.exit_code = o.verdict == OracleVerdict::kTrue ? kPositive : kNegative;
  const Json j = oracleJson(o, bounds(s));
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "verdict") r.fields[it.key()] = it.value();
  }
  printOracle(r.text, o);
}

void cmdDumpEi(const Settings& s, Report& r, std::ostream& err) {
  const KnowledgeBase kb = loadKb(s.kb_path);
  RationalClosure rc(kb, {}, typOptions(s, err));
  r.verdict = "OK";
  Json levels = Json::array();
  const auto& seq = rc.table().sequence;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Json level = Json::array();
    r.text << "E_" << i << ":\n";
    for (const ConceptInclusion& ax : seq[i]) {
      level.push_back(inclusionText(ax));
      r.text << "  " << inclusionText(ax) << '\n';
    }
    levels.push_back(level);
  }
  r.fields["levels"] = levels;
  r.fields["entailment_calls"] = rc.stats().entailment_calls;
}

void cmdEncode(const Settings& s, Report& r) {
  const KnowledgeBase kb = loadKb(s.kb_path);
  std::string text;
  if (!s.query_text.empty()) {
    const Query parsed = loadQuery(s.query_text);
    const auto* q = std::get_if<SubsumptionQuery>(&parsed);
    if (!q || s.route == "ranked" || !kb.abox().empty()) {
      throw InputError{
          "queries are encoded on the preferential route, which needs an "
          "inclusion and an empty ABox",
          "<query>", std::nullopt, ""};
    }
    const PreferentialEncoding enc = encodePreferential(kb, *q);
    text = printKB(enc.kb) + "# query: " +
           printQuery(SubsumptionQuery{enc.lhs, enc.rhs}) + '\n';
  } else if (s.route == "preferential") {
    if (!kb.abox().empty()) {
      throw InputError{"the preferential route needs an empty ABox",
                       s.kb_path, std::nullopt, ""};
    }
    const SubsumptionQuery trivial{Concept::Top(), Concept::Top()};
    text = printKB(encodePreferential(kb, trivial).kb);
  } else {
    const RankedEncoding enc = encodeRanked(kb, Concept::Top());
    text = printKB(enc.kb) + "# goal: " + printConcept(enc.goal) + '\n';
  }
  r.verdict = "OK";
  if (!s.output_path.empty()) {
    std::ofstream f(s.output_path);
    if (!f || !(f << text)) {
      throw InputError{"cannot write '" + s.output_path + "'", s.output_path,
                       std::nullopt, ""};
    }
    r.fields["output"] = s.output_path;
    return;
  }
  r.fields["encoding"] = text;
  r.text << text;
}

void emitError(const Settings& s, const InputError& e, std::ostream& out,
               std::ostream& err) {
  if (s.json) {
    Json j;
    j["verdict"] = "ERROR";
    j["exit_code"] = static_cast<int>(kInputError);
    j["error"] = {{"message", e.message}, {"source", e.source}};
    if (e.span) {
      j["error"]["line"] = e.span->line;
      j["error"]["column"] = e.span->column;
      j["error"]["length"] = e.span->length;
    }
    out << j.dump(2) << '\n';
    return;
  }
  err << e.source;
  if (e.span) err << ':' << e.span->line << ':' << e.span->column;
  err << ": error: " << e.message << '\n';
  if (e.span && !e.line.empty()) {
    err << "  " << e.line << "\n  "
        << std::string(std::max(0, e.span->column - 1), ' ')
        << std::string(std::max(1, e.span->length), '^') << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Settings s;
  CLI::App app{"Rational closure for SHIQ with typicality", "dlrc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", s.json, "Machine-readable report on stdout");
  app.add_flag("--trace", s.trace, "Tableau trace on stderr");
  app.add_flag("--timing", s.timing, "Include wall time in --json output");
  app.add_flag("--dump-encoding", s.dump_encoding,
               "Print the SHIQ encoding used");
  app.add_flag("--show-assignments", s.show_assignments,
               "List minimal rank assignments (closure-abox)");
  app.add_option("--max-domain", s.max_domain, "Oracle domain bound")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-rank", s.max_rank, "Oracle rank bound")
      ->check(CLI::NonNegativeNumber);

  auto kbArg = [&](CLI::App* c) {
    c->add_option("kb", s.kb_path, "Knowledge base (.dkb)")->required();
  };
  CLI::App* check = app.add_subcommand("check", "KB consistency");
  kbArg(check);
  CLI::App* ranks = app.add_subcommand("ranks", "Rank table of the TBox");
  kbArg(ranks);
  ranks->add_option("--concept", s.concepts, "Also rank this concept");
  CLI::App* query = app.add_subcommand("query", "TBox rational closure");
  kbArg(query);
  query->add_option("query", s.query_text, "\"C <= D ?\"")->required();
  query->add_flag("--cross-check", s.cross_check,
                  "Compare with the model oracle");
  CLI::App* abox = app.add_subcommand("closure-abox", "ABox rational closure");
  kbArg(abox);
  abox->add_option("query", s.query_text, "\"a : C ?\"")->required();
  abox->add_flag("--cross-check", s.cross_check,
                 "Compare with the model oracle");
  CLI::App* oracle =
      app.add_subcommand("oracle", "Bounded minimal canonical model search");
  kbArg(oracle);
  oracle->add_option("--query", s.query_text, "Inclusion or assertion");
  CLI::App* dump = app.add_subcommand("dump-ei", "Print E_0 .. E_n");
  kbArg(dump);
  CLI::App* encode = app.add_subcommand("encode", "Write the SHIQ encoding");
  kbArg(encode);
  encode->add_option("--query", s.query_text, "Inclusion to encode");
  encode->add_option("-o,--output", s.output_path, "Output file");
  encode->add_option("--route", s.route, "auto, preferential or ranked")
      ->check(CLI::IsMember({"auto", "preferential", "ranked"}));

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPositive : kInputError;
  }

  Report r;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*check) cmdCheck(s, r, err);
    if (*ranks) cmdRanks(s, r, err);
    if (*query) cmdQuery(s, r, err);
    if (*abox) cmdClosureABox(s, r, err);
    if (*oracle) cmdOracle(s, r);
    if (*dump) cmdDumpEi(s, r, err);
    if (*encode) cmdEncode(s, r);
  } catch (const InputError& e) {
    emitError(s, e, out, err);
    return kInputError;
  } catch (const KbError& e) {
    emitError(s, InputError{e.what(), s.kb_path, std::nullopt, ""}, out, err);
    return kInputError;
  } catch (const ResourceLimitError& e) {
    emitError(s, InputError{e.what(), s.kb_path, std::nullopt, ""}, out, err);
    return kInputError;
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();

  if (s.json) {
    Json j;
    j["verdict"] = r.verdict;
    j["exit_code"] = r.exit_code;
    for (auto it = r.fields.begin(); it != r.fields.end(); ++it) {
      j[it.key()] = it.value();
    }
    if (s.timing) j["wall_time_ms"] = ms;
    out << j.dump(2) << '\n';
  } else {
    out << r.verdict << '\n'
        << r.text.str() << "time: " << std::fixed << std::setprecision(1) << ms
        << " ms\n";
  }
  return r.exit_code;
}

}  // namespace dlrc::cli
