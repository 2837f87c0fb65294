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

#include "dlrc/parser.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "dlrc/error.hpp"

namespace dlrc {

ParseError::ParseError(const std::string& message, SourceSpan span)
    : std::runtime_error(std::to_string(span.line) + ":" +
                         std::to_string(span.column) + ": " + message),
      message_(message),
      span_(span) {}

namespace {

enum class Tok { kIdent, kNumber, kSym, kEnd };

struct Token {
  Tok type = Tok::kEnd;
  std::string text;
  SourceSpan span;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "role", "trans", "top",    "bot",    "not", "and", "or",
      "some", "only",  "atleast", "atmost", "inv", "sat", "T"};
  return kw;
}

std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto span = [line_no](std::size_t start, std::size_t len) {
    return SourceSpan{line_no, static_cast<int>(start) + 1,
                      static_cast<int>(len)};
  };
  while (i < line.size()) {
    const unsigned char ch = static_cast<unsigned char>(line[i]);
    if (ch == '#') break;
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(ch) || ch == '_') {
      while (i < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[i])) ||
              line[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::kIdent, std::string(line.substr(start, i - start)),
                     span(start, i - start)});
    } else if (std::isdigit(ch)) {
      while (i < line.size() &&
             std::isdigit(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      out.push_back({Tok::kNumber, std::string(line.substr(start, i - start)),
                     span(start, i - start)});
    } else if (ch == '<' && i + 1 < line.size() && line[i + 1] == '=') {
      i += 2;
      out.push_back({Tok::kSym, "<=", span(start, 2)});
    } else if (std::string_view("(),:.?").find(static_cast<char>(ch)) !=
               std::string_view::npos) {
      ++i;
      out.push_back({Tok::kSym, std::string(1, static_cast<char>(ch)),
                     span(start, 1)});
    } else {
      throw ParseError(std::string("unexpected character '") +
                           static_cast<char>(ch) + "'",
                       span(start, 1));
    }
  }
  const std::size_t end = line.size();
  out.push_back({Tok::kEnd, "", span(end, 0)});
  return out;
}

struct NumberRestrictionUse {
  Role role;
  SourceSpan span;
};

class LineParser {
 public:
  LineParser(std::vector<Token> toks, const ParseOptions& opts,
             std::vector<NumberRestrictionUse>* nr_uses)
      : toks_(std::move(toks)), opts_(opts), nr_uses_(nr_uses) {}

  bool atEnd() const { return peek().type == Tok::kEnd; }
  const Token& peek(std::size_t k = 0) const {
    std::size_t idx = pos_ + k;
    if (idx >= toks_.size()) idx = toks_.size() - 1;
    return toks_[idx];
  }

  bool isSym(const char* s, std::size_t k = 0) const {
    return peek(k).type == Tok::kSym && peek(k).text == s;
  }
  bool isKeyword(const char* s, std::size_t k = 0) const {
    return peek(k).type == Tok::kIdent && peek(k).text == s;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.span);
  }

  [[noreturn]] void unexpected() const {
    const Token& t = peek();
    if (t.type == Tok::kEnd) fail("unexpected end of line", t);
    fail("unexpected '" + t.text + "'", t);
  }

  void expectSym(const char* s) {
    if (!isSym(s)) {
      const Token& t = peek();
      fail(std::string("expected '") + s + "'" +
               (t.type == Tok::kEnd ? " at end of line"
                                    : " before '" + t.text + "'"),
           t);
    }
    ++pos_;
  }

  std::string name() {
    const Token& t = peek();
    if (t.type != Tok::kIdent) {
      if (t.type == Tok::kEnd) fail("expected a name at end of line", t);
      fail("expected a name, found '" + t.text + "'", t);
    }
    if (keywords().count(t.text) > 0) {
      fail("keyword '" + t.text + "' used as a name", t);
    }
    if (t.text.front() == kReservedPrefix && !opts_.allow_reserved) {
      fail("reserved name '" + t.text + "'", t);
    }
    ++pos_;
    return t.text;
  }

  Role role() {
    if (isKeyword("inv") && isSym("(", 1)) {
      pos_ += 2;
      Role r(name(), true);
      expectSym(")");
      if (r.isUniversal()) r.inverted = false;
      return r;
    }
    return Role(name());
  }

  // Concept that may be T(C) at the top level only.
  Concept lhsConcept(const char* typ_error_elsewhere) {
    if (isKeyword("T") && isSym("(", 1)) {
      pos_ += 2;
      typ_error_ = "nested typicality";
      Concept inner = conceptExpr();
      expectSym(")");
      typ_error_ = typ_error_elsewhere;
      return Concept::Typ(inner);
    }
    typ_error_ = typ_error_elsewhere;
    return conceptExpr();
  }

  Concept conceptExpr(const char* typ_error) {
    typ_error_ = typ_error;
    return conceptExpr();
  }

  Concept conceptExpr() {
    std::vector<Concept> ds{conjunction()};
    while (isKeyword("or")) {
      ++pos_;
      ds.push_back(conjunction());
    }
    return ds.size() == 1 ? ds.front() : Concept::Or(std::move(ds));
  }

  Concept conjunction() {
    std::vector<Concept> cs{unary()};
    while (isKeyword("and")) {
      ++pos_;
      cs.push_back(unary());
    }
    return cs.size() == 1 ? cs.front() : Concept::And(std::move(cs));
  }

  Concept unary() {
    const Token& t = peek();
    if (isSym("(")) {
      ++pos_;
      Concept c = conceptExpr();
      expectSym(")");
      return c;
    }
    if (t.type != Tok::kIdent) unexpected();
    if (t.text == "T" && isSym("(", 1)) fail(typ_error_, t);
    if (t.text == "top") {
      ++pos_;
      return Concept::Top();
    }
    if (t.text == "bot") {
      ++pos_;
      return Concept::Bottom();
    }
    if (t.text == "not") {
      ++pos_;
      return Concept::Not(unary());
    }
    if (t.text == "some" || t.text == "only") {
      ++pos_;
      Role r = role();
      expectSym(".");
      Concept body = unary();
      return t.text == "some" ? Concept::Exists(r, body)
                              : Concept::Forall(r, body);
    }
    if (t.text == "atleast" || t.text == "atmost") {
      const Token kw = t;
      ++pos_;
      const Token& num = peek();
      if (num.type != Tok::kNumber) fail("expected a number", num);
      unsigned long n = 0;
      try {
        n = std::stoul(num.text);
      } catch (const std::exception&) {
        fail("number out of range", num);
      }
      ++pos_;
      const Token role_tok = peek();
      Role r = role();
      if (r.isUniversal()) fail("number restriction on universal role", role_tok);
      expectSym(".");
      Concept body = unary();
      SourceSpan sp = kw.span;
      sp.length = role_tok.span.column + role_tok.span.length - kw.span.column;
      if (nr_uses_ != nullptr) nr_uses_->push_back({r, sp});
      return kw.text == "atleast"
                 ? Concept::AtLeast(static_cast<unsigned>(n), r, body)
                 : Concept::AtMost(static_cast<unsigned>(n), r, body);
    }
    return Concept::Atom(name());
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t k = 1) { pos_ += k; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  std::vector<NumberRestrictionUse>* nr_uses_;
  const char* typ_error_ = "T may only occur as the whole left-hand side";
};

constexpr const char* kTypNotTop =
    "T may only occur as the whole left-hand side";

void parseStatement(LineParser& p, KnowledgeBase& kb) {
  if (p.isKeyword("role")) {
    p.advance();
    const Token at = p.peek();
    Role r = p.role();
    if (p.isSym("<=")) {
      p.advance();
      Role s = p.role();
      kb.rbox().addInclusion(r, s);
    } else {
      if (r.inverted) p.fail("role declaration of an inverse role", at);
      kb.rbox().declareRole(r.name);
    }
  } else if (p.isKeyword("trans")) {
    p.advance();
    kb.rbox().declareTransitive(p.name());
  } else if (p.isSym("(") && p.peek(1).type == Tok::kIdent && p.isSym(",", 2)) {
    p.advance();
    std::string a = p.name();
    p.expectSym(",");
    std::string b = p.name();
    p.expectSym(")");
    p.expectSym(":");
    Role r = p.role();
    kb.addAssertion(RoleAssertion{r, a, b});
  } else if (p.peek().type == Tok::kIdent && p.isSym(":", 1)) {
    std::string a = p.name();
    p.expectSym(":");
    Concept c = p.lhsConcept(kTypNotTop);
    kb.addAssertion(ConceptAssertion{c, a});
  } else {
    Concept lhs = p.lhsConcept(kTypNotTop);
    p.expectSym("<=");
    Concept rhs = p.conceptExpr("T on right-hand side");
    kb.addInclusion(ConceptInclusion{lhs, rhs});
  }
  if (!p.atEnd()) p.unexpected();
}

void checkSimpleRoles(const KnowledgeBase& kb,
                      const std::vector<NumberRestrictionUse>& uses) {
  for (const NumberRestrictionUse& u : uses) {
    if (!kb.rbox().isSimple(u.role)) {
      throw ParseError("transitive role in number restriction", u.span);
    }
  }
}

std::vector<std::string_view> splitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

// Strips a UTF-8 byte order mark.
std::string_view stripBom(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
  }
  return text;
}

}  // namespace

KnowledgeBase parseKB(std::string_view text, const ParseOptions& opts) {
  KnowledgeBase kb;
  std::vector<NumberRestrictionUse> uses;
  int line_no = 0;
  for (std::string_view line : splitLines(stripBom(text))) {
    ++line_no;
    LineParser p(tokenize(line, line_no), opts, &uses);
    if (p.atEnd()) continue;
    try {
      parseStatement(p, kb);
    } catch (const KbError& e) {
      throw ParseError(e.what(), SourceSpan{line_no, 1,
                                            static_cast<int>(line.size())});
    }
  }
  checkSimpleRoles(kb, uses);
  return kb;
}

Query parseQuery(std::string_view text, const ParseOptions& opts) {
  std::vector<Token> toks;
  int line_no = 0;
  for (std::string_view line : splitLines(stripBom(text))) {
    ++line_no;
    auto t = tokenize(line, line_no);
    if (t.size() == 1) continue;
    if (!toks.empty()) {
      throw ParseError("a query must be a single statement", t.front().span);
    }
    toks = std::move(t);
  }
  if (toks.empty()) throw ParseError("empty query", SourceSpan{1, 1, 0});
  LineParser p(std::move(toks), opts, nullptr);
  Query q;
  if (p.isKeyword("sat")) {
    p.advance();
    q = SatisfiabilityQuery{p.conceptExpr("T inside a satisfiability query")};
  } else if (p.peek().type == Tok::kIdent && p.isSym(":", 1)) {
    std::string a = p.name();
    p.expectSym(":");
    q = AssertionQuery{a, p.lhsConcept(kTypNotTop)};
  } else {
    Concept lhs = p.lhsConcept(kTypNotTop);
    p.expectSym("<=");
    q = SubsumptionQuery{lhs, p.conceptExpr("T on right-hand side")};
  }
  p.expectSym("?");
  if (!p.atEnd()) p.unexpected();
  return q;
}

Concept parseConcept(std::string_view text, const ParseOptions& opts) {
  auto lines = splitLines(stripBom(text));
  std::vector<Token> toks;
  int line_no = 0;
  for (std::string_view line : lines) {
    ++line_no;
    auto t = tokenize(line, line_no);
    if (t.size() == 1) continue;
    if (!toks.empty()) {
      throw ParseError("a concept must fit on one line", t.front().span);
    }
    toks = std::move(t);
  }
  if (toks.empty()) throw ParseError("empty concept", SourceSpan{1, 1, 0});
  LineParser p(std::move(toks), opts, nullptr);
  Concept c = p.lhsConcept(kTypNotTop);
  if (!p.atEnd()) p.unexpected();
  return c;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dlrc
