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

#include "regtype/term.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace regtype {

std::string to_string(const Functor& f) {
  return f.name + "/" + std::to_string(f.arity);
}

Functor nil_functor() { return {"[]", 0}; }
Functor cons_functor() { return {".", 2}; }

Term::Term(Compound c) : node(std::move(c)) {
  if (compound().args.size() != compound().functor.arity) {
    throw Error("term " + compound().functor.name + " has " +
                std::to_string(compound().args.size()) +
                " arguments, functor arity is " +
                std::to_string(compound().functor.arity));
  }
}

Term Term::atom(std::string name) { return Term(Compound{{std::move(name), 0}, {}}); }

Term Term::make(std::string name, std::vector<Term> args) {
  const std::size_t n = args.size();
  return Term(Compound{{std::move(name), n}, std::move(args)});
}

Term Term::list(std::vector<Term> items, std::optional<Term> tail) {
  Term out = tail ? std::move(*tail) : Term::atom("[]");
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    out = Term::make(".", {std::move(*it), std::move(out)});
  }
  return out;
}

bool operator==(const Compound& a, const Compound& b) {
  return a.functor == b.functor && a.args == b.args;
}

bool operator==(const Term& a, const Term& b) { return a.node == b.node; }

std::size_t depth(const Term& t) {
  if (!t.is_compound()) return 1;
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, depth(a));
  return d + 1;
}

namespace {

void collect_vars(const Term& t, std::vector<VarId>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.var_id()) == out.end()) out.push_back(t.var_id());
  } else if (t.is_compound()) {
    for (const auto& a : t.args()) collect_vars(a, out);
  }
}

void collect_positions(const Term& t, const Selector& here,
                       std::vector<std::pair<VarId, Selector>>& out) {
  if (t.is_var()) {
    out.emplace_back(t.var_id(), here);
  } else if (t.is_compound()) {
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      collect_positions(t.args()[i], here.then({t.functor(), i + 1}), out);
    }
  }
}

void print(const Term& t, std::ostringstream& os) {
  if (t.is_var()) {
    os << '_' << t.var_id();
  } else if (t.is_number()) {
    const double v = std::get<Number>(t.node).value;
    if (std::floor(v) == v && std::abs(v) < 1e15) {
      os << static_cast<long long>(v);
    } else {
      os << v;
    }
  } else {
    os << t.functor().name;
    if (!t.args().empty()) {
      os << '(';
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) os << ',';
        print(t.args()[i], os);
      }
      os << ')';
    }
  }
}

}  // namespace

std::vector<VarId> variables_of(const Term& t) {
  std::vector<VarId> out;
  collect_vars(t, out);
  return out;
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  print(t, os);
  return os.str();
}

Selector Selector::then(SelectorStep step) const {
  Selector out = *this;
  out.steps_.push_back(std::move(step));
  return out;
}

Selector Selector::concat(const Selector& tail) const {
  Selector out = *this;
  out.steps_.insert(out.steps_.end(), tail.steps_.begin(), tail.steps_.end());
  return out;
}

bool Selector::has_prefix(const Selector& prefix) const {
  return prefix.size() <= size() &&
         std::equal(prefix.steps_.begin(), prefix.steps_.end(), steps_.begin());
}

Selector Selector::drop(std::size_t n) const {
  if (n >= size()) return {};
  return Selector(std::vector<SelectorStep>(steps_.begin() + static_cast<std::ptrdiff_t>(n), steps_.end()));
}

Selector Selector::take(std::size_t n) const {
  if (n >= size()) return *this;
  return Selector(std::vector<SelectorStep>(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::string to_string(const Selector& s) {
  if (s.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "\xC2\xB7";  // middle dot
    out += to_string(s.steps()[i].functor) + "." + std::to_string(s.steps()[i].index);
  }
  return out;
}

std::optional<Term> subterm_at(const Term& t, const Selector& s) {
  const Term* cur = &t;
  for (const auto& step : s.steps()) {
    if (!cur->is_compound() || cur->functor() != step.functor) return std::nullopt;
    if (step.index < 1 || step.index > cur->args().size()) return std::nullopt;
    cur = &cur->args()[step.index - 1];
  }
  return *cur;
}

std::vector<std::pair<VarId, Selector>> variable_positions(const Term& t) {
  std::vector<std::pair<VarId, Selector>> out;
  collect_positions(t, Selector{}, out);
  return out;
}

}  // namespace regtype
