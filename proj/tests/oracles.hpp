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

// Test-side reference implementations. Nothing here calls into the
// library's algorithms: grammars are plain tables read by a direct
// recognizer, unification is textbook Robinson with occurs check, and the
// interpreter is depth-bounded SLD resolution.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "regtype/grammar.hpp"
#include "regtype/program.hpp"

namespace oracle {

using regtype::Functor;
using regtype::Term;
using regtype::VarId;

inline constexpr int kAny = -1;
inline constexpr int kNum = -2;

// A deterministic grammar as a plain table. Nonterminals may be empty.
struct RawGrammar {
  struct Alt {
    Functor functor;
    std::vector<int> args;
  };
  struct Nt {
    bool num = false;
    std::vector<Alt> alts;
  };
  std::vector<Nt> nts;
  int root = 0;
};

inline bool member(const Term& t, const RawGrammar& g, int ref) {
  if (ref == kAny) return true;
  if (t.is_var()) return false;
  if (ref == kNum) return t.is_number();
  const auto& nt = g.nts[static_cast<std::size_t>(ref)];
  if (t.is_number()) return nt.num;
  for (const auto& alt : nt.alts) {
    if (!(alt.functor == t.functor())) continue;
    for (std::size_t i = 0; i < alt.args.size(); ++i) {
      if (!member(t.args()[i], g, alt.args[i])) return false;
    }
    return true;
  }
  return false;
}

inline bool member(const Term& t, const RawGrammar& g) { return member(t, g, g.root); }

inline regtype::TypeGrammar to_grammar(const RawGrammar& raw) {
  if (raw.root == kAny) return regtype::TypeGrammar::any();
  if (raw.root == kNum) return regtype::TypeGrammar::num();
  regtype::GrammarBuilder b;
  std::vector<regtype::NtRef> ids;
  for (std::size_t i = 0; i < raw.nts.size(); ++i) ids.push_back(b.add_nonterminal());
  auto ref = [&](int r) -> regtype::NtRef {
    if (r == kAny) return regtype::kAnyRef;
    if (r == kNum) return regtype::kNumRef;
    return ids[static_cast<std::size_t>(r)];
  };
  for (std::size_t i = 0; i < raw.nts.size(); ++i) {
    if (raw.nts[i].num) b.add_chain(ids[i], regtype::kNumRef);
    for (const auto& alt : raw.nts[i].alts) {
      std::vector<regtype::NtRef> args;
      for (int a : alt.args) args.push_back(ref(a));
      b.add_production(ids[i], alt.functor, args);
    }
  }
  return b.build(ids[static_cast<std::size_t>(raw.root)]);
}

inline std::vector<Functor> small_alphabet() {
  return {{"a", 0}, {"b", 0}, {"f", 1}, {"g", 2}, {"[]", 0}};
}

// Every nonterminal draws a random subset of `alphabet` (so productions are
// deterministic by construction) and random argument references.
inline RawGrammar random_grammar(std::mt19937& rng, const std::vector<Functor>& alphabet, int max_nts = 3) {
  RawGrammar g;
  const int n = std::uniform_int_distribution<int>(1, max_nts)(rng);
  g.nts.resize(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> pct(0, 99);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (auto& nt : g.nts) {
    nt.num = pct(rng) < 30;
    for (const auto& f : alphabet) {
      if (pct(rng) >= 45) continue;
      RawGrammar::Alt alt{f, {}};
      for (std::size_t i = 0; i < f.arity; ++i) {
        const int roll = pct(rng);
        alt.args.push_back(roll < 8 ? kAny : roll < 18 ? kNum : pick(rng));
      }
      nt.alts.push_back(alt);
    }
  }
  g.root = 0;
  return g;
}

// Terms of depth <= k (constants have depth 1) over alphabet plus `z`, a
// functor outside the alphabet, and the single number 0.
inline RawGrammar depth_bounded(const std::vector<Functor>& alphabet, int k) {
  RawGrammar g;
  g.nts.resize(static_cast<std::size_t>(k));
  for (int level = 0; level < k; ++level) {
    auto& nt = g.nts[static_cast<std::size_t>(level)];
    nt.num = true;
    nt.alts.push_back({{"z", 0}, {}});
    for (const auto& f : alphabet) {
      if (f.arity > 0 && level == k - 1) continue;
      nt.alts.push_back({f, std::vector<int>(f.arity, level + 1)});
    }
  }
  return g;
}

inline std::vector<Term> enumerate_terms(const std::vector<Functor>& alphabet, int depth) {
  std::vector<Term> leaves{Term::number(0), Term::atom("z")};
  for (const auto& f : alphabet) {
    if (f.arity == 0) leaves.push_back(Term::atom(f.name));
  }
  std::vector<Term> all = leaves;
  for (int d = 2; d <= depth; ++d) {
    std::vector<Term> next = leaves;
    for (const auto& f : alphabet) {
      if (f.arity == 1) {
        for (const auto& x : all) next.push_back(Term::make(f.name, {x}));
      } else if (f.arity == 2) {
        for (const auto& x : all) {
          for (const auto& y : all) next.push_back(Term::make(f.name, {x, y}));
        }
      }
    }
    all = std::move(next);
  }
  return all;
}

// Random ground member of the language of `ref`, or nullopt when none is
// found within the depth budget. `any` positions yield small random terms.
inline std::optional<Term> sample(std::mt19937& rng, const RawGrammar& g, int ref, int budget) {
  std::uniform_int_distribution<int> pct(0, 99);
  if (budget <= 0) return std::nullopt;
  if (ref == kAny) {
    switch (pct(rng) % 4) {
      case 0: return Term::number(pct(rng) % 3);
      case 1: return Term::atom("z");
      case 2: return Term::atom("a");
      default: {
        auto inner = sample(rng, g, kAny, budget - 1);
        return inner ? std::optional<Term>(Term::make("f", {*inner})) : std::optional<Term>(Term::atom("b"));
      }
    }
  }
  if (ref == kNum) return Term::number(pct(rng) % 3);
  const auto& nt = g.nts[static_cast<std::size_t>(ref)];
  const std::size_t choices = nt.alts.size() + (nt.num ? 1 : 0);
  if (choices == 0) return std::nullopt;
  // A few attempts so dead alternatives do not starve the sampler.
  for (int attempt = 0; attempt < 4; ++attempt) {
    const std::size_t c = static_cast<std::size_t>(pct(rng)) % choices;
    if (c == nt.alts.size()) return Term::number(pct(rng) % 3);
    const auto& alt = nt.alts[c];
    std::vector<Term> args;
    bool ok = true;
    for (int a : alt.args) {
      auto sub = sample(rng, g, a, budget - 1);
      if (!sub) {
        ok = false;
        break;
      }
      args.push_back(*sub);
    }
    if (ok) return Term::make(alt.functor.name, std::move(args));
  }
  return std::nullopt;
}

// ---- unification -----------------------------------------------------------

using Subst = std::map<VarId, Term>;

inline Term walk(const Term& t, const Subst& s) {
  Term cur = t;
  while (cur.is_var()) {
    auto it = s.find(cur.var_id());
    if (it == s.end()) break;
    cur = it->second;
  }
  return cur;
}

inline Term resolve(const Term& t, const Subst& s) {
  const Term w = walk(t, s);
  if (!w.is_compound()) return w;
  std::vector<Term> args;
  for (const auto& a : w.args()) args.push_back(resolve(a, s));
  return Term::make(w.functor().name, std::move(args));
}

inline bool occurs(VarId v, const Term& t, const Subst& s) {
  const Term w = walk(t, s);
  if (w.is_var()) return w.var_id() == v;
  if (!w.is_compound()) return false;
  for (const auto& a : w.args()) {
    if (occurs(v, a, s)) return true;
  }
  return false;
}

inline bool unify(const Term& a, const Term& b, Subst& s) {
  const Term x = walk(a, s);
  const Term y = walk(b, s);
  if (x.is_var() && y.is_var() && x.var_id() == y.var_id()) return true;
  if (x.is_var()) {
    if (occurs(x.var_id(), y, s)) return false;
    s[x.var_id()] = y;
    return true;
  }
  if (y.is_var()) return unify(y, x, s);
  if (x.is_number() || y.is_number()) return x == y;
  if (!(x.functor() == y.functor())) return false;
  for (std::size_t i = 0; i < x.args().size(); ++i) {
    if (!unify(x.args()[i], y.args()[i], s)) return false;
  }
  return true;
}

// ---- depth-bounded SLD resolution ------------------------------------------

// Every successful call is reported as the resolved goal instance, for the
// top-level goal and for every nested user call.
class Interpreter {
 public:
  using Observer = std::function<void(const Term& goal_instance)>;

  Interpreter(const regtype::Program& p, int max_depth, Observer observer)
      : program_(p), max_depth_(max_depth), observer_(std::move(observer)) {}

  void run(const Term& goal) {
    next_var_ = 1000000;
    Subst s;
    solve({goal}, s, 0, [](const Subst&) {});
  }

  long solutions() const { return solutions_; }

 private:
  using Cont = std::function<void(const Subst&)>;

  Term rename(const Term& t, std::map<VarId, VarId>& map) {
    if (t.is_var()) {
      auto [it, inserted] = map.try_emplace(t.var_id(), next_var_);
      if (inserted) ++next_var_;
      return Term::var(it->second);
    }
    if (!t.is_compound()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(rename(a, map));
    return Term::make(t.functor().name, std::move(args));
  }

  void solve(std::vector<Term> goals, const Subst& s, int depth, const Cont& k) {
    if (++steps_ > kStepLimit) return;
    if (goals.empty()) {
      k(s);
      return;
    }
    const Term goal = goals.front();
    std::vector<Term> rest(goals.begin() + 1, goals.end());
    call(goal, s, depth, [&](const Subst& s2) { solve(rest, s2, depth, k); });
  }

  void call(const Term& goal, const Subst& s, int depth, const Cont& k) {
    const Term g = walk(goal, s);
    const auto key = regtype::key_of(g);
    if (key.name == "true" && key.arity == 0) {
      k(s);
      return;
    }
    if (key.name == "=" && key.arity == 2) {
      Subst s2 = s;
      if (unify(g.args()[0], g.args()[1], s2)) k(s2);
      return;
    }
    if (key.name == "number" && key.arity == 1) {
      if (walk(g.args()[0], s).is_number()) k(s);
      return;
    }
    if (key.name == "=<" && key.arity == 2) {
      const Term x = walk(g.args()[0], s);
      const Term y = walk(g.args()[1], s);
      // Non-numeric comparison raises in Prolog: no answer.
      if (x.is_number() && y.is_number() && std::get<regtype::Number>(x.node).value <=
                                                  std::get<regtype::Number>(y.node).value) {
        k(s);
      }
      return;
    }
    const auto* clauses = program_.find(key);
    if (clauses == nullptr || depth >= max_depth_) return;
    for (const auto& c : *clauses) {
      std::map<VarId, VarId> map;
      const Term head = rename(c.head, map);
      Subst s2 = s;
      if (!unify(g, head, s2)) continue;
      std::vector<Term> body;
      for (const auto& lit : c.body) body.push_back(rename(lit.goal, map));
      solve(body, s2, depth + 1, [&](const Subst& s3) {
        ++solutions_;
        observer_(resolve(g, s3));
        k(s3);
      });
    }
  }

  static constexpr long kStepLimit = 2000000;
  const regtype::Program& program_;
  int max_depth_;
  Observer observer_;
  VarId next_var_ = 1000000;
  long steps_ = 0;
  long solutions_ = 0;
};

}  // namespace oracle
