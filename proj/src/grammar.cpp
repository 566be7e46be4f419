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

#include "regtype/grammar.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace regtype {

const Production* Node::find(const Functor& f) const {
  auto it = std::lower_bound(rhs.begin(), rhs.end(), f,
                             [](const Production& p, const Functor& key) { return p.functor < key; });
  return (it != rhs.end() && it->functor == f) ? &*it : nullptr;
}

namespace {

constexpr NtRef kUnset = -100;

std::vector<bool> productive_nodes(const std::vector<Node>& nodes) {
  std::vector<bool> prod(nodes.size(), false);
  auto ok = [&](NtRef r) { return r == kAnyRef || r == kNumRef || (is_plain(r) && prod[static_cast<std::size_t>(r)]); };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (prod[i]) continue;
      bool p = nodes[i].has_num;
      for (const auto& r : nodes[i].rhs) {
        if (p) break;
        p = std::all_of(r.args.begin(), r.args.end(), ok);
      }
      if (p) prod[i] = changed = true;
    }
  }
  return prod;
}

}  // namespace

TypeGrammar make_canonical(NtRef root, std::vector<Node> nodes) {
  const std::size_t n = nodes.size();
  const auto productive = productive_nodes(nodes);

  // Unproductive nodes become bottom; a node left with only `num` becomes num.
  std::vector<NtRef> alias(n, kUnset);
  for (std::size_t i = 0; i < n; ++i) {
    if (!productive[i]) alias[i] = kBottomRef;
  }
  auto resolve = [&](NtRef r) {
    return (is_plain(r) && alias[static_cast<std::size_t>(r)] != kUnset) ? alias[static_cast<std::size_t>(r)] : r;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (alias[i] != kUnset) continue;
    auto& rhs = nodes[i].rhs;
    rhs.erase(std::remove_if(rhs.begin(), rhs.end(),
                             [&](const Production& p) {
                               return std::any_of(p.args.begin(), p.args.end(),
                                                  [&](NtRef a) { return resolve(a) == kBottomRef; });
                             }),
              rhs.end());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (alias[i] == kUnset && nodes[i].rhs.empty()) alias[i] = nodes[i].has_num ? kNumRef : kBottomRef;
  }

  root = resolve(root);
  if (!is_plain(root)) return TypeGrammar(root, {});

  // Reachable nodes, breadth-first.
  std::vector<NtRef> reach;
  std::vector<bool> seen(n, false);
  std::deque<NtRef> queue{root};
  seen[static_cast<std::size_t>(root)] = true;
  while (!queue.empty()) {
    const NtRef cur = queue.front();
    queue.pop_front();
    reach.push_back(cur);
    for (const auto& p : nodes[static_cast<std::size_t>(cur)].rhs) {
      for (NtRef a : p.args) {
        a = resolve(a);
        if (is_plain(a) && !seen[static_cast<std::size_t>(a)]) {
          seen[static_cast<std::size_t>(a)] = true;
          queue.push_back(a);
        }
      }
    }
  }

  // Moore-style partition refinement; deterministic non-empty nodes are
  // equivalent iff bisimilar.
  std::vector<int> cls(n, -1);
  std::size_t num_classes = 0;
  {
    std::map<std::pair<bool, std::vector<Functor>>, int> keys;
    for (NtRef r : reach) {
      const Node& nd = nodes[static_cast<std::size_t>(r)];
      std::vector<Functor> fs;
      for (const auto& p : nd.rhs) fs.push_back(p.functor);
      auto [it, inserted] = keys.try_emplace({nd.has_num, std::move(fs)}, static_cast<int>(keys.size()));
      cls[static_cast<std::size_t>(r)] = it->second;
    }
    num_classes = keys.size();
  }
  for (;;) {
    std::map<std::vector<int>, int> keys;
    std::vector<int> next(n, -1);
    for (NtRef r : reach) {
      std::vector<int> key{cls[static_cast<std::size_t>(r)]};
      for (const auto& p : nodes[static_cast<std::size_t>(r)].rhs) {
        for (NtRef a : p.args) {
          a = resolve(a);
          key.push_back(is_plain(a) ? cls[static_cast<std::size_t>(a)] : a);
        }
      }
      auto [it, inserted] = keys.try_emplace(std::move(key), static_cast<int>(keys.size()));
      next[static_cast<std::size_t>(r)] = it->second;
    }
    cls = std::move(next);
    if (keys.size() == num_classes) break;
    num_classes = keys.size();
  }

  std::vector<NtRef> rep(num_classes, kUnset);
  for (NtRef r : reach) {
    auto& slot = rep[static_cast<std::size_t>(cls[static_cast<std::size_t>(r)])];
    if (slot == kUnset) slot = r;
  }

  std::vector<NtRef> new_id(num_classes, kUnset);
  std::vector<Node> out;
  std::deque<int> order;
  auto id_of_class = [&](int c) {
    auto& id = new_id[static_cast<std::size_t>(c)];
    if (id == kUnset) {
      id = static_cast<NtRef>(out.size());
      out.emplace_back();
      order.push_back(c);
    }
    return id;
  };
  id_of_class(cls[static_cast<std::size_t>(root)]);
  while (!order.empty()) {
    const int c = order.front();
    order.pop_front();
    const Node& src = nodes[static_cast<std::size_t>(rep[static_cast<std::size_t>(c)])];
    Node dst;
    dst.has_num = src.has_num;
    for (const auto& p : src.rhs) {
      Production q{p.functor, {}};
      for (NtRef a : p.args) {
        a = resolve(a);
        q.args.push_back(is_plain(a) ? id_of_class(cls[static_cast<std::size_t>(a)]) : a);
      }
      dst.rhs.push_back(std::move(q));
    }
    out[static_cast<std::size_t>(new_id[static_cast<std::size_t>(c)])] = std::move(dst);
  }
  return TypeGrammar(0, std::move(out));
}

namespace {

struct RawContent {
  bool any = false;
  bool num = false;
  std::vector<Production> rhs;  // several productions per functor allowed

  bool empty() const { return !any && !num && rhs.empty(); }
};

// Subset construction: each output node stands for the tuple-distributive
// union of a set of raw nonterminals.
class Determinizer {
 public:
  using Canon = std::function<void(std::vector<NtRef>&)>;

  Determinizer(const std::vector<RawContent>& content, Canon canon)
      : content_(content), canon_(std::move(canon)) {}

  TypeGrammar run(std::vector<NtRef> root_members) {
    const NtRef root = resolve(std::move(root_members));
    while (!pending_.empty()) {
      const NtRef id = pending_.front();
      pending_.pop_front();
      expand(id);
    }
    return make_canonical(root, std::move(nodes_));
  }

 private:
  static void sort_unique(std::vector<NtRef>& m) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
  }

  NtRef resolve(std::vector<NtRef> members) {
    sort_unique(members);
    if (std::binary_search(members.begin(), members.end(), kAnyRef)) return kAnyRef;
    std::erase_if(members, [&](NtRef m) {
      return m == kBottomRef || (is_plain(m) && content_[static_cast<std::size_t>(m)].empty());
    });
    if (canon_) {
      canon_(members);
      sort_unique(members);
    }
    bool num = std::binary_search(members.begin(), members.end(), kNumRef);
    bool has_rhs = false;
    for (NtRef m : members) {
      if (!is_plain(m)) continue;
      const auto& c = content_[static_cast<std::size_t>(m)];
      if (c.any) return kAnyRef;
      num = num || c.num;
      has_rhs = has_rhs || !c.rhs.empty();
    }
    if (!has_rhs) return num ? kNumRef : kBottomRef;
    auto [it, inserted] = ids_.try_emplace(members, static_cast<NtRef>(nodes_.size()));
    if (inserted) {
      nodes_.emplace_back();
      states_.push_back(std::move(members));
      pending_.push_back(it->second);
    }
    return it->second;
  }

  void expand(NtRef id) {
    const std::vector<NtRef> members = states_[static_cast<std::size_t>(id)];
    bool num = false;
    std::map<Functor, std::vector<std::vector<NtRef>>> groups;
    for (NtRef m : members) {
      if (m == kNumRef) {
        num = true;
        continue;
      }
      const auto& c = content_[static_cast<std::size_t>(m)];
      num = num || c.num;
      for (const auto& p : c.rhs) {
        auto& slots = groups[p.functor];
        slots.resize(p.args.size());
        for (std::size_t i = 0; i < p.args.size(); ++i) slots[i].push_back(p.args[i]);
      }
    }
    Node out;
    out.has_num = num;
    for (auto& [f, slots] : groups) {
      Production p{f, {}};
      bool dead = false;
      for (auto& s : slots) {
        const NtRef a = resolve(std::move(s));
        dead = dead || a == kBottomRef;
        p.args.push_back(a);
      }
      if (!dead) out.rhs.push_back(std::move(p));
    }
    nodes_[static_cast<std::size_t>(id)] = std::move(out);
  }

  const std::vector<RawContent>& content_;
  Canon canon_;
  std::map<std::vector<NtRef>, NtRef> ids_;
  std::vector<std::vector<NtRef>> states_;
  std::vector<Node> nodes_;
  std::deque<NtRef> pending_;
};

std::vector<std::vector<bool>> inclusion_matrix(const TypeGrammar& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
  auto ok = [&](NtRef p, NtRef q) {
    if (q == kAnyRef || p == kBottomRef) return true;
    if (p == kAnyRef) return false;
    if (p == kNumRef) return q == kNumRef || (is_plain(q) && g.node(q).has_num);
    if (!is_plain(q)) return false;
    return static_cast<bool>(rel[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (!rel[x][y]) continue;
        const Node& a = g.node(static_cast<NtRef>(x));
        const Node& b = g.node(static_cast<NtRef>(y));
        bool good = !a.has_num || b.has_num;
        for (const auto& p : a.rhs) {
          if (!good) break;
          const Production* q = b.find(p.functor);
          good = q != nullptr;
          for (std::size_t i = 0; good && i < p.args.size(); ++i) good = ok(p.args[i], q->args[i]);
        }
        if (!good) {
          rel[x][y] = false;
          changed = true;
        }
      }
    }
  }
  return rel;
}

}  // namespace

NtRef GrammarBuilder::add_nonterminal() {
  alts_.emplace_back();
  return static_cast<NtRef>(alts_.size() - 1);
}

void GrammarBuilder::add_production(NtRef lhs, Functor f, std::vector<NtRef> args) {
  if (args.size() != f.arity) {
    throw Error("production for " + to_string(f) + " has " + std::to_string(args.size()) +
                " arguments");
  }
  if (!is_plain(lhs) || static_cast<std::size_t>(lhs) >= alts_.size()) {
    throw Error("production for an unknown or reserved nonterminal");
  }
  for (NtRef a : args) {
    if (is_plain(a) && static_cast<std::size_t>(a) >= alts_.size()) throw Error("dangling nonterminal reference");
  }
  alts_[static_cast<std::size_t>(lhs)].push_back(Alt{false, kBottomRef, Production{std::move(f), std::move(args)}});
}

void GrammarBuilder::add_chain(NtRef lhs, NtRef target) {
  if (!is_plain(lhs) || static_cast<std::size_t>(lhs) >= alts_.size()) {
    throw Error("chain rule for an unknown or reserved nonterminal");
  }
  if (is_plain(target) && static_cast<std::size_t>(target) >= alts_.size()) throw Error("dangling nonterminal reference");
  alts_[static_cast<std::size_t>(lhs)].push_back(Alt{true, target, {}});
}

std::vector<NtRef> GrammarBuilder::import_nodes(const TypeGrammar& g) {
  const NtRef base = static_cast<NtRef>(alts_.size());
  std::vector<NtRef> map(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) map[i] = base + static_cast<NtRef>(i);
  alts_.resize(alts_.size() + g.size());
  auto tr = [&](NtRef r) { return is_plain(r) ? map[static_cast<std::size_t>(r)] : r; };
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Node& nd = g.node(static_cast<NtRef>(i));
    if (nd.has_num) add_chain(map[i], kNumRef);
    for (const auto& p : nd.rhs) {
      std::vector<NtRef> args;
      for (NtRef a : p.args) args.push_back(tr(a));
      add_production(map[i], p.functor, std::move(args));
    }
  }
  return map;
}

NtRef GrammarBuilder::import(const TypeGrammar& g) {
  if (!is_plain(g.root())) return g.root();
  return import_nodes(g)[static_cast<std::size_t>(g.root())];
}

bool GrammarBuilder::is_empty(NtRef nt) const {
  if (nt == kAnyRef || nt == kNumRef) return false;
  if (!is_plain(nt)) return true;
  // Productivity over raw alternatives, chains included.
  std::vector<bool> prod(alts_.size(), false);
  auto ok = [&](NtRef r) { return r == kAnyRef || r == kNumRef || (is_plain(r) && prod[static_cast<std::size_t>(r)]); };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < alts_.size(); ++i) {
      if (prod[i]) continue;
      for (const auto& a : alts_[i]) {
        const bool p = a.chain ? ok(a.target) : std::all_of(a.prod.args.begin(), a.prod.args.end(), ok);
        if (p) {
          prod[i] = changed = true;
          break;
        }
      }
    }
  }
  return !prod[static_cast<std::size_t>(nt)];
}

TypeGrammar GrammarBuilder::build(NtRef root) const {
  if (!is_plain(root)) return root == kAnyRef ? TypeGrammar::any() : root == kNumRef ? TypeGrammar::num() : TypeGrammar::bottom();
  const std::size_t n = alts_.size();
  std::vector<RawContent> content(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> visited(n, false);
    std::vector<std::size_t> stack{i};
    visited[i] = true;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for (const auto& a : alts_[cur]) {
        if (!a.chain) {
          content[i].rhs.push_back(a.prod);
        } else if (a.target == kAnyRef) {
          content[i].any = true;
        } else if (a.target == kNumRef) {
          content[i].num = true;
        } else if (is_plain(a.target) && !visited[static_cast<std::size_t>(a.target)]) {
          visited[static_cast<std::size_t>(a.target)] = true;
          stack.push_back(static_cast<std::size_t>(a.target));
        }
      }
    }
  }
  // Drop unproductive nonterminals and every production that mentions one.
  std::vector<bool> prod(n, false);
  auto ok = [&](NtRef r) { return r == kAnyRef || r == kNumRef || (is_plain(r) && prod[static_cast<std::size_t>(r)]); };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (prod[i]) continue;
      bool p = content[i].any || content[i].num;
      for (const auto& r : content[i].rhs) {
        if (p) break;
        p = std::all_of(r.args.begin(), r.args.end(), ok);
      }
      if (p) prod[i] = changed = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!prod[i]) {
      content[i] = RawContent{};
      continue;
    }
    std::erase_if(content[i].rhs, [&](const Production& p) { return !std::all_of(p.args.begin(), p.args.end(), ok); });
  }
  return Determinizer(content, nullptr).run({root});
}

TypeGrammar TypeGrammar::atom(const std::string& name) {
  GrammarBuilder b;
  const NtRef r = b.add_nonterminal();
  b.add_production(r, Functor{name, 0}, {});
  return b.build(r);
}

TypeGrammar restrict(const TypeGrammar& g, NtRef nt) {
  if (!is_plain(nt)) {
    if (nt == kAnyRef) return TypeGrammar::any();
    if (nt == kNumRef) return TypeGrammar::num();
    return TypeGrammar::bottom();
  }
  if (static_cast<std::size_t>(nt) >= g.size()) {
    throw Error("nonterminal " + std::to_string(nt) + " is not part of the grammar");
  }
  if (nt == g.root()) return g;
  return make_canonical(nt, g.nodes());
}

std::optional<NtRef> node_at(const TypeGrammar& g, const Selector& s) {
  NtRef r = g.root();
  for (const auto& step : s.steps()) {
    if (r == kAnyRef) return kAnyRef;
    if (!is_plain(r)) return std::nullopt;
    const Production* p = g.node(r).find(step.functor);
    if (p == nullptr || step.index < 1 || step.index > p->args.size()) return std::nullopt;
    r = p->args[step.index - 1];
  }
  return r;
}

std::optional<TypeGrammar> subtype_at(const TypeGrammar& g, const Selector& s) {
  auto r = node_at(g, s);
  if (!r) return std::nullopt;
  return restrict(g, *r);
}

bool member(const Term& t, const TypeGrammar& g, NtRef at) {
  if (at == kAnyRef) return true;
  if (at == kBottomRef) return false;
  if (t.is_var()) return false;
  if (t.is_number()) return at == kNumRef || (is_plain(at) && g.node(at).has_num);
  if (!is_plain(at)) return false;
  const Production* p = g.node(at).find(t.functor());
  if (p == nullptr) return false;
  for (std::size_t i = 0; i < p->args.size(); ++i) {
    if (!member(t.args()[i], g, p->args[i])) return false;
  }
  return true;
}

bool member(const Term& t, const TypeGrammar& g) { return member(t, g, g.root()); }

bool is_well_formed(const TypeGrammar& g) {
  if (!is_plain(g.root())) return g.nodes().empty();
  if (g.root() != 0) return false;
  const auto n = static_cast<NtRef>(g.size());
  for (const auto& nd : g.nodes()) {
    if (nd.rhs.empty()) return false;
    for (std::size_t i = 0; i < nd.rhs.size(); ++i) {
      if (i > 0 && !(nd.rhs[i - 1].functor < nd.rhs[i].functor)) return false;
      const auto& p = nd.rhs[i];
      if (p.args.size() != p.functor.arity) return false;
      for (NtRef a : p.args) {
        if (a == kBottomRef || a >= n || a < kBottomRef) return false;
      }
    }
  }
  std::set<NtRef> seen{g.root()};
  for (NtRef r : reachable_from(g, g.root())) seen.insert(r);
  if (seen.size() != g.size()) return false;
  const auto prod = productive_nodes(g.nodes());
  return std::all_of(prod.begin(), prod.end(), [](bool b) { return b; });
}

std::vector<std::string> principal_functors(const TypeGrammar& g, NtRef r) {
  if (r == kAnyRef) return {"any"};
  if (r == kNumRef) return {"num"};
  if (!is_plain(r)) return {};
  std::vector<std::string> out;
  const Node& nd = g.node(r);
  for (const auto& p : nd.rhs) out.push_back(to_string(p.functor));
  if (nd.has_num) out.emplace_back("num");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NtRef> reachable_from(const TypeGrammar& g, NtRef from) {
  std::vector<NtRef> out;
  if (!is_plain(from)) return out;
  std::vector<bool> seen(g.size(), false);
  std::deque<NtRef> queue;
  auto push_children = [&](NtRef r) {
    for (const auto& p : g.node(r).rhs) {
      for (NtRef a : p.args) {
        if (is_plain(a) && !seen[static_cast<std::size_t>(a)]) {
          seen[static_cast<std::size_t>(a)] = true;
          out.push_back(a);
          queue.push_back(a);
        }
      }
    }
  };
  push_children(from);
  while (!queue.empty()) {
    const NtRef cur = queue.front();
    queue.pop_front();
    push_children(cur);
  }
  return out;
}

std::vector<Functor> functors_of(const TypeGrammar& g) {
  std::set<Functor> fs;
  for (const auto& nd : g.nodes()) {
    for (const auto& p : nd.rhs) fs.insert(p.functor);
  }
  return {fs.begin(), fs.end()};
}

bool node_includes(const TypeGrammar& g, NtRef sub, NtRef super) {
  if (super == kAnyRef || sub == kBottomRef) return true;
  if (sub == kAnyRef) return false;
  if (sub == kNumRef) return super == kNumRef || (is_plain(super) && g.node(super).has_num);
  if (!is_plain(super)) return false;
  return inclusion_matrix(g)[static_cast<std::size_t>(sub)][static_cast<std::size_t>(super)];
}

TypeGrammar merge_nodes(const TypeGrammar& g, NtRef a, NtRef b) {
  if (!is_plain(a) || !is_plain(b)) throw Error("merge_nodes expects plain nodes");
  std::vector<RawContent> content(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    content[i].num = g.node(static_cast<NtRef>(i)).has_num;
    content[i].rhs = g.node(static_cast<NtRef>(i)).rhs;
  }
  const auto incl = inclusion_matrix(g);
  const std::vector<NtRef> pair = a < b ? std::vector<NtRef>{a, b} : std::vector<NtRef>{b, a};
  auto canon = [&](std::vector<NtRef>& m) {
    const bool node_num = std::any_of(m.begin(), m.end(), [&](NtRef x) {
      return is_plain(x) && g.node(x).has_num;
    });
    if (node_num) std::erase(m, kNumRef);
    std::vector<NtRef> kept;
    for (NtRef x : m) {
      bool absorbed = false;
      for (NtRef y : m) {
        if (x == y || !is_plain(x) || !is_plain(y)) continue;
        const auto xs = static_cast<std::size_t>(x);
        const auto ys = static_cast<std::size_t>(y);
        if (incl[xs][ys] && (!incl[ys][xs] || y < x)) {
          absorbed = true;
          break;
        }
      }
      if (!absorbed) kept.push_back(x);
    }
    m = std::move(kept);
    if (!m.empty() && std::all_of(m.begin(), m.end(), [&](NtRef x) { return x == a || x == b; })) m = pair;
  };
  return Determinizer(content, canon).run({g.root()});
}

TypeGrammar redirect(const TypeGrammar& g, NtRef from, NtRef to) {
  std::vector<Node> nodes = g.nodes();
  for (auto& nd : nodes) {
    for (auto& p : nd.rhs) {
      for (auto& arg : p.args) {
        if (arg == from) arg = to;
      }
    }
  }
  return make_canonical(g.root() == from ? to : g.root(), std::move(nodes));
}

}  // namespace regtype
