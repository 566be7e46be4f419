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

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace regtype {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ranked function symbol. `f/2` and `f/3` are distinct functors.
struct Functor {
  std::string name;
  std::size_t arity = 0;

  friend auto operator<=>(const Functor&, const Functor&) = default;
  friend bool operator==(const Functor&, const Functor&) = default;
};

std::string to_string(const Functor& f);

/// Functors used by list notation: `[]/0` and `./2`.
Functor nil_functor();
Functor cons_functor();

using VarId = int;

struct Term;

struct Variable {
  VarId id = 0;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Number {
  double value = 0.0;
  friend bool operator==(const Number&, const Number&) = default;
};

struct Compound {
  Functor functor;
  std::vector<Term> args;
};

/// A finite first-order term: variable, number, or compound (atoms are
/// 0-ary compounds).
struct Term {
  std::variant<Variable, Number, Compound> node;

  Term() : node(Variable{}) {}
  Term(Variable v) : node(v) {}  // NOLINT(google-explicit-constructor)
  Term(Number n) : node(n) {}    // NOLINT(google-explicit-constructor)
  Term(Compound c);              // NOLINT(google-explicit-constructor)

  static Term var(VarId id) { return Term(Variable{id}); }
  static Term number(double v) { return Term(Number{v}); }
  static Term atom(std::string name);
  static Term make(std::string name, std::vector<Term> args);
  static Term list(std::vector<Term> items, std::optional<Term> tail = std::nullopt);

  bool is_var() const { return std::holds_alternative<Variable>(node); }
  bool is_number() const { return std::holds_alternative<Number>(node); }
  bool is_compound() const { return std::holds_alternative<Compound>(node); }

  VarId var_id() const { return std::get<Variable>(node).id; }
  const Compound& compound() const { return std::get<Compound>(node); }
  const Functor& functor() const { return compound().functor; }
  const std::vector<Term>& args() const { return compound().args; }

  friend bool operator==(const Term& a, const Term& b);
};

bool operator==(const Compound& a, const Compound& b);

/// Depth of a term; variables, numbers, and atoms have depth 1.
std::size_t depth(const Term& t);

/// Variables of `t` in order of first occurrence.
std::vector<VarId> variables_of(const Term& t);

/// Canonical text: `.(1,[])`, `f(a,_0)`. Not list-sugared.
std::string to_string(const Term& t);

/// One step (f.i) of a selector; `index` is 1-based.
struct SelectorStep {
  Functor functor;
  std::size_t index = 1;

  friend auto operator<=>(const SelectorStep&, const SelectorStep&) = default;
  friend bool operator==(const SelectorStep&, const SelectorStep&) = default;
};

/// A path of (functor, argument) steps. The empty selector is epsilon.
class Selector {
 public:
  Selector() = default;
  explicit Selector(std::vector<SelectorStep> steps) : steps_(std::move(steps)) {}

  const std::vector<SelectorStep>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }

  Selector then(SelectorStep step) const;
  Selector concat(const Selector& tail) const;
  bool has_prefix(const Selector& prefix) const;
  /// Steps after the first `n`.
  Selector drop(std::size_t n) const;
  Selector take(std::size_t n) const;

  friend auto operator<=>(const Selector&, const Selector&) = default;
  friend bool operator==(const Selector&, const Selector&) = default;

 private:
  std::vector<SelectorStep> steps_;
};

/// `./2.1·./2.2` style rendering; epsilon renders as `e`.
std::string to_string(const Selector& s);

/// t/s: the subterm at `s`, or nullopt when the path does not exist.
std::optional<Term> subterm_at(const Term& t, const Selector& s);

/// Every variable occurrence in `t` with the selector leading to it.
std::vector<std::pair<VarId, Selector>> variable_positions(const Term& t);

}  // namespace regtype
