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

// Reader and writer for the line-oriented .dkb format.
//
//   role R | trans R | role R <= S
//   C <= D | T(C) <= D
//   a : C  | a : T(C) | (a, b) : R
//
// Concepts: top, bot, NAME, not C, C and D, C or D, some R . C, only R . C,
// atleast N R . C, atmost N R . C, with inv(R) for inverse roles. Precedence
// is not > and > or; quantifier bodies bind like not. '#' starts a comment.
// Queries are single statements ending in '?': "C <= D ?", "a : C ?" or
// "sat C ?".

#ifndef DLRC_PARSER_HPP_
#define DLRC_PARSER_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "dlrc/knowledge_base.hpp"

namespace dlrc {

struct SourceSpan {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  int length = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span);
  const std::string& message() const { return message_; }
  const SourceSpan& span() const { return span_; }

 private:
  std::string message_;
  SourceSpan span_;
};

struct SubsumptionQuery {
  Concept lhs;  // may be T(C)
  Concept rhs;
  friend bool operator==(const SubsumptionQuery&,
                         const SubsumptionQuery&) = default;
};

struct AssertionQuery {
  std::string individual;
  Concept expr;  // may be T(C)
  friend bool operator==(const AssertionQuery&,
                         const AssertionQuery&) = default;
};

struct SatisfiabilityQuery {
  Concept expr;
  friend bool operator==(const SatisfiabilityQuery&,
                         const SatisfiabilityQuery&) = default;
};

using Query = std::variant<SubsumptionQuery, AssertionQuery, SatisfiabilityQuery>;

struct ParseOptions {
  // Accept names with the reserved prefix (needed to read encoder dumps).
  bool allow_reserved = false;
};

KnowledgeBase parseKB(std::string_view text, const ParseOptions& opts = {});
Query parseQuery(std::string_view text, const ParseOptions& opts = {});
// A single concept (no trailing '?'); T(C) is accepted at the top.
Concept parseConcept(std::string_view text, const ParseOptions& opts = {});

std::string printKB(const KnowledgeBase& kb);
std::string printQuery(const Query& q);

// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string readFile(const std::string& path);

}  // namespace dlrc

#endif  // DLRC_PARSER_HPP_
