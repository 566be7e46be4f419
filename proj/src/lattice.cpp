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

#include "regtype/lattice.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace regtype {

bool includes(const TypeGrammar& sub, const TypeGrammar& super) {
  // Inclusion of deterministic grammars without empty nodes is a pure
  // conjunction over the pairs reachable from the roots.
  std::set<std::pair<NtRef, NtRef>> visited;
  std::vector<std::pair<NtRef, NtRef>> stack{{sub.root(), super.root()}};
  while (!stack.empty()) {
    const auto [p, q] = stack.back();
    stack.pop_back();
    if (q == kAnyRef || p == kBottomRef) continue;
    if (p == kAnyRef) return false;
    if (p == kNumRef) {
      if (q == kNumRef || (is_plain(q) && super.node(q).has_num)) continue;
      return false;
    }
    if (!is_plain(q)) return false;
    if (!visited.emplace(p, q).second) continue;
    const Node& a = sub.node(p);
    const Node& b = super.node(q);
    if (a.has_num && !b.has_num) return false;
    for (const auto& prod : a.rhs) {
      const Production* other = b.find(prod.functor);
      if (other == nullptr) return false;
      for (std::size_t i = 0; i < prod.args.size(); ++i) stack.emplace_back(prod.args[i], other->args[i]);
    }
  }
  return true;
}

bool equiv(const TypeGrammar& a, const TypeGrammar& b) { return includes(a, b) && includes(b, a); }

TypeGrammar type_union(const TypeGrammar& a, const TypeGrammar& b) {
  if (a.is_bottom() || b.is_any()) return b;
  if (b.is_bottom() || a.is_any()) return a;
  GrammarBuilder builder;
  const NtRef root = builder.add_nonterminal();
  builder.add_chain(root, builder.import(a));
  builder.add_chain(root, builder.import(b));
  return builder.build(root);
}

TypeGrammar type_intersect(const TypeGrammar& a, const TypeGrammar& b) {
  if (a.is_any()) return b;
  if (b.is_any()) return a;
  if (a.is_bottom() || b.is_bottom()) return TypeGrammar::bottom();

  GrammarBuilder builder;
  std::map<std::pair<NtRef, NtRef>, NtRef> pairs;
  std::vector<NtRef> a_nodes;
  std::vector<NtRef> b_nodes;
  bool a_imported = false;
  bool b_imported = false;
  auto copy_a = [&](NtRef r) {
    if (!a_imported) {
      a_nodes = builder.import_nodes(a);
      a_imported = true;
    }
    return a_nodes[static_cast<std::size_t>(r)];
  };
  auto copy_b = [&](NtRef r) {
    if (!b_imported) {
      b_nodes = builder.import_nodes(b);
      b_imported = true;
    }
    return b_nodes[static_cast<std::size_t>(r)];
  };

  std::vector<std::pair<NtRef, NtRef>> work;
  auto pair_ref = [&](NtRef p, NtRef q) -> NtRef {
    if (p == kAnyRef) return is_plain(q) ? copy_b(q) : q;
    if (q == kAnyRef) return is_plain(p) ? copy_a(p) : p;
    if (p == kBottomRef || q == kBottomRef) return kBottomRef;
    if (p == kNumRef) return (q == kNumRef || b.node(q).has_num) ? kNumRef : kBottomRef;
    if (q == kNumRef) return a.node(p).has_num ? kNumRef : kBottomRef;
    auto [it, inserted] = pairs.try_emplace({p, q}, kBottomRef);
    if (inserted) {
      it->second = builder.add_nonterminal();
      work.emplace_back(p, q);
    }
    return it->second;
  };

  const NtRef root = pair_ref(a.root(), b.root());
  while (!work.empty()) {
    const auto [p, q] = work.back();
    work.pop_back();
    const NtRef lhs = pairs.at({p, q});
    const Node& na = a.node(p);
    const Node& nb = b.node(q);
    if (na.has_num && nb.has_num) builder.add_chain(lhs, kNumRef);
    for (const auto& prod : na.rhs) {
      const Production* other = nb.find(prod.functor);
      if (other == nullptr) continue;
      std::vector<NtRef> args;
      bool dead = false;
      for (std::size_t i = 0; i < prod.args.size(); ++i) {
        const NtRef r = pair_ref(prod.args[i], other->args[i]);
        dead = dead || r == kBottomRef;
        args.push_back(r);
      }
      if (!dead) builder.add_production(lhs, prod.functor, std::move(args));
    }
  }
  return builder.build(root);
}

bool is_empty(const TypeGrammar& g) { return g.is_bottom(); }

Simplified simplify_types(const std::vector<NamedType>& env) {
  std::vector<const NamedType*> sorted;
  for (const auto& t : env) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [](const NamedType* x, const NamedType* y) { return x->name < y->name; });
  Simplified out;
  for (const NamedType* t : sorted) {
    auto it = std::find_if(out.representatives.begin(), out.representatives.end(),
                           [&](const NamedType& r) { return equiv(r.type, t->type); });
    if (it == out.representatives.end()) {
      out.representatives.push_back(*t);
      out.renaming[t->name] = t->name;
    } else {
      out.renaming[t->name] = it->name;
    }
  }
  return out;
}

}  // namespace regtype
