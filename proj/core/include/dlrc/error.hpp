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

#ifndef DLRC_ERROR_HPP_
#define DLRC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dlrc {

// Malformed knowledge base or query (bad placement of T, non-simple role in
// a number restriction, unknown individual, ...).
class KbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The knowledge base has no model, so a closure is undefined.
class InconsistentKbError : public std::runtime_error {
 public:
  InconsistentKbError() : std::runtime_error("KB inconsistent") {}
};

// A reasoner exceeded its configured node or step budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dlrc

#endif  // DLRC_ERROR_HPP_
