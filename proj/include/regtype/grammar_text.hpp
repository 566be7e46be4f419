// Copyright 2026 The regtype Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Textual grammar notation:
//
//   T -> [] | .(num,T)
//   .(any,T1); T1 -> [] | .(num,T1)
//
// A text is either a list of definitions (the first one is the root) or a
// type expression followed by definitions. Definitions are separated by
// `;` or newlines. `any`, `num` and `$bot` are reserved; nonterminals are
// capitalized identifiers; anything else in functor position is an atom
// (`[]`, `.`, `f`, `'quoted atom'`).

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "regtype/grammar.hpp"

namespace regtype {

class GrammarSyntaxError : public Error {
 public:
  GrammarSyntaxError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses and normalizes. Raw (non-deterministic) definitions are accepted.
TypeGrammar parse_type(std::string_view text);

/// Self-contained rendering of one grammar; parse_type(format_type(g)) is
/// equivalent to g.
std::string format_type(const TypeGrammar& g);

/// Atom rendering with quotes where the bare form would not re-parse.
std::string format_atom(const std::string& name);

/// Prints several grammars with one shared nonterminal namespace
/// (T1, T2, ... in first-use order). Nodes with a single non-recursive
/// alternative are inlined.
class TypePrinter {
 public:
  explicit TypePrinter(std::string prefix = "T") : prefix_(std::move(prefix)) {}

  /// Expression for the root of `g`; registers definitions as needed.
  std::string expression(const TypeGrammar& g);

  struct Definition {
    std::string name;
    std::vector<std::string> alternatives;
    TypeGrammar type;  // the grammar rooted at the named node
  };
  const std::vector<Definition>& definitions() const { return defs_; }

  /// "T1 -> a | b" lines in registration order.
  std::vector<std::string> definition_lines() const;

 private:
  std::string node_expr(const TypeGrammar& g, NtRef r, std::map<NtRef, std::string>& names,
                        const std::vector<bool>& inline_ok);
  std::string name_for(const TypeGrammar& g, NtRef r, std::map<NtRef, std::string>& names,
                       const std::vector<bool>& inline_ok);

  std::string prefix_;
  int counter_ = 0;
  std::vector<Definition> defs_;
};

}  // namespace regtype
