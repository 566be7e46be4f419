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

// Pure logic programs: facts and rules with conjunctive bodies.
//
// The reader accepts a small Prolog subset: atoms, numbers, variables, `_`,
// list notation, `%` and `/* */` comments, the comparison operators at
// priority 700 and arithmetic `+ - * / // mod` inside terms.

#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "regtype/term.hpp"

namespace regtype {

struct PredicateKey {
  std::string name;
  std::size_t arity = 0;

  auto operator<=>(const PredicateKey&) const = default;
};

std::string to_string(const PredicateKey& k);
PredicateKey key_of(const Term& goal);

enum class BuiltinSupport { none, supported, unsupported };

/// number/1, =</2, =/2 and true/0 have transfer functions; other common
/// builtins are recognized so they are not mistaken for user predicates.
BuiltinSupport builtin_support(const PredicateKey& k);

struct Literal {
  Term goal;
  int line = 0;
};

struct Clause {
  Term head;
  std::vector<Literal> body;
  std::map<VarId, std::string> var_names;  // every variable of the clause
  int line = 0;

  std::vector<VarId> variables() const;
};

struct Program {
  std::map<PredicateKey, std::vector<Clause>> predicates;
  std::vector<PredicateKey> order;  // first definition order
  std::vector<std::string> warnings;

  const std::vector<Clause>* find(const PredicateKey& k) const;
  std::size_t clause_count() const;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

Program parse_program(std::string_view text);
/// Throws IoError when the file cannot be read.
Program load_program(const std::string& path);

/// Source rendering with list sugar and infix comparisons; parses back to
/// the same program.
std::string format_term(const Term& t, const std::map<VarId, std::string>& names);
std::string format_program(const Program& p);

}  // namespace regtype
