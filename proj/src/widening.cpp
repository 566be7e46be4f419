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

#include "regtype/widening.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "regtype/lattice.hpp"

namespace regtype {

namespace {

// Merge-based operators normally settle in a handful of steps; past this
// they give up and return the functor widening.
constexpr int kMaxMergeSteps = 64;
// Budget for the simple-path walk of the depth-k operator.
constexpr long kMaxPathVisits = 200000;

// A merge is a subset construction and can unfold cycles instead of folding
// them. Past this size the merge loops give up as well.
bool overgrown(const TypeGrammar& g, const TypeGrammar& start) { return g.size() > 4 * start.size() + 16; }

using FunctorSet = std::vector<std::string>;

bool same_functors(const TypeGrammar& g, NtRef a, NtRef b) { return principal_functors(g, a) == principal_functors(g, b); }

bool contains_all(const FunctorSet& super, const FunctorSet& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool shares_functor(const FunctorSet& a, const FunctorSet& b) {
  for (const auto& f : a) {
    if (f != "num" && std::binary_search(b.begin(), b.end(), f)) return true;
  }
  return false;
}

// First (ancestor, descendant) pair in breadth-first order accepted by `ok`.
template <typename Pred>
std::optional<std::pair<NtRef, NtRef>> find_connected_pair(const TypeGrammar& g, Pred ok) {
  for (NtRef n = 0; n < static_cast<NtRef>(g.size()); ++n) {
    for (NtRef m : reachable_from(g, n)) {
      if (m != n && ok(n, m)) return std::make_pair(n, m);
    }
  }
  return std::nullopt;
}

class DepthWalker {
 public:
  DepthWalker(const TypeGrammar& g, int k) : g_(g), k_(static_cast<std::size_t>(k)) {}

  // Returns (ancestor, node) to merge, or nullopt when every path is within
  // the bound. Sets `exhausted` if the walk ran out of budget.
  std::optional<std::pair<NtRef, NtRef>> find(bool& exhausted) {
    exhausted = false;
    visits_ = 0;
    path_.clear();
    auto hit = visit(g_.root());
    exhausted = visits_ > kMaxPathVisits;
    return hit;
  }

 private:
  std::optional<std::pair<NtRef, NtRef>> visit(NtRef n) {
    if (++visits_ > kMaxPathVisits) return std::nullopt;
    const Node& node = g_.node(n);
    for (const auto& prod : node.rhs) {
      std::size_t seen = 0;
      NtRef nearest = kBottomRef;
      for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
        if (g_.node(*it).find(prod.functor) == nullptr) continue;
        if (seen++ == 0) nearest = *it;
      }
      if (seen >= k_) return std::make_pair(nearest, n);
    }
    path_.push_back(n);
    for (const auto& prod : node.rhs) {
      for (NtRef a : prod.args) {
        if (!is_plain(a) || std::find(path_.begin(), path_.end(), a) != path_.end()) continue;
        if (auto hit = visit(a)) return hit;
        if (visits_ > kMaxPathVisits) return std::nullopt;
      }
    }
    path_.pop_back();
    return std::nullopt;
  }

  const TypeGrammar& g_;
  std::size_t k_;
  std::vector<NtRef> path_;
  long visits_ = 0;
};

FunctorSet functors_at(const TypeGrammar& g, NtRef r) {
  if (r == kBottomRef) return {};
  return principal_functors(g, r);
}

// Synchronous walk of the union against the previous approximation; returns
// the first clash with a usable ancestor as (ancestor, clash node).
std::optional<std::pair<NtRef, NtRef>> find_clash(const TypeGrammar& u, const TypeGrammar& prev) {
  struct Item {
    NtRef u;
    NtRef p;
    std::vector<NtRef> path;
  };
  std::set<std::pair<NtRef, NtRef>> visited;
  std::vector<Item> stack{{u.root(), prev.root(), {}}};
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    if (!visited.emplace(item.u, item.p).second) continue;
    const FunctorSet here = principal_functors(u, item.u);
    if (item.p != kAnyRef && here != functors_at(prev, item.p)) {
      std::optional<NtRef> target;
      for (auto it = item.path.rbegin(); it != item.path.rend() && !target; ++it) {
        if (contains_all(principal_functors(u, *it), here)) target = *it;
      }
      for (auto it = item.path.rbegin(); it != item.path.rend() && !target; ++it) {
        if (shares_functor(principal_functors(u, *it), here)) target = *it;
      }
      if (target) return std::make_pair(*target, item.u);
    }
    if (item.p == kAnyRef) continue;
    std::vector<NtRef> path = item.path;
    path.push_back(item.u);
    for (const auto& prod : u.node(item.u).rhs) {
      const Production* other = is_plain(item.p) ? prev.node(item.p).find(prod.functor) : nullptr;
      for (std::size_t i = 0; i < prod.args.size(); ++i) {
        const NtRef a = prod.args[i];
        if (!is_plain(a) || std::find(path.begin(), path.end(), a) != path.end()) continue;
        stack.push_back({a, other ? other->args[i] : kBottomRef, path});
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(WideningKind kind) {
  switch (kind) {
    case WideningKind::functor: return "functor";
    case WideningKind::jungle: return "jungle";
    case WideningKind::shorten: return "shorten";
    case WideningKind::rshorten: return "rshorten";
    case WideningKind::depthk: return "depthk";
    case WideningKind::clash: return "clash";
    case WideningKind::structural: return "struct";
  }
  return "?";
}

std::optional<WideningKind> parse_widening_kind(std::string_view text) {
  static const std::map<std::string_view, WideningKind> kinds = {
      {"functor", WideningKind::functor}, {"jungle", WideningKind::jungle},
      {"shorten", WideningKind::shorten}, {"rshorten", WideningKind::rshorten},
      {"depthk", WideningKind::depthk},   {"clash", WideningKind::clash},
      {"struct", WideningKind::structural}, {"structural", WideningKind::structural},
  };
  auto it = kinds.find(text);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

bool is_unary(WideningKind kind) { return kind != WideningKind::clash && kind != WideningKind::structural; }

TypeGrammar widen(const WideningConfig& config, const std::optional<TypeGrammar>& prev, const TypeGrammar& cand) {
  if (config.kind == WideningKind::structural) throw Error("structural widening operates on type descriptors");
  if (config.kind == WideningKind::clash) return prev ? widen_clash(*prev, cand) : cand;
  const TypeGrammar base = prev ? type_union(*prev, cand) : cand;
  switch (config.kind) {
    case WideningKind::functor: return widen_functor(base);
    case WideningKind::jungle: return widen_jungle(base);
    case WideningKind::shorten: return widen_shorten(base);
    case WideningKind::rshorten: return widen_rshorten(base);
    case WideningKind::depthk: return widen_depthk(base, config.depth_k);
    default: return base;
  }
}

TypeGrammar widen_functor(const TypeGrammar& t) {
  if (!is_plain(t.root())) return t;
  std::map<Functor, std::vector<bool>> slots;  // per argument: any seen
  bool num = false;
  for (const auto& node : t.nodes()) {
    num = num || node.has_num;
    for (const auto& prod : node.rhs) {
      auto& any_at = slots.try_emplace(prod.functor, prod.args.size(), false).first->second;
      for (std::size_t i = 0; i < prod.args.size(); ++i) {
        any_at[i] = any_at[i] || prod.args[i] == kAnyRef;
        num = num || prod.args[i] == kNumRef;
      }
    }
  }
  Node star;
  star.has_num = num;
  for (const auto& [f, any_at] : slots) {
    std::vector<NtRef> args;
    for (bool a : any_at) args.push_back(a ? kAnyRef : 0);
    star.rhs.push_back({f, std::move(args)});
  }
  return make_canonical(0, {std::move(star)});
}

TypeGrammar widen_jungle(const TypeGrammar& t) {
  if (!is_plain(t.root())) return t;
  GrammarBuilder b;
  const NtRef root = b.add_nonterminal();
  std::map<std::pair<Functor, std::size_t>, NtRef> slot;
  auto slot_of = [&](const Functor& f, std::size_t i) {
    auto [it, inserted] = slot.try_emplace({f, i}, kBottomRef);
    if (inserted) it->second = b.add_nonterminal();
    return it->second;
  };
  // Every node contributes its alternatives to each slot it occurs in.
  std::vector<std::set<NtRef>> contexts(t.size());
  contexts[static_cast<std::size_t>(t.root())].insert(root);
  for (const auto& node : t.nodes()) {
    for (const auto& prod : node.rhs) {
      for (std::size_t i = 0; i < prod.args.size(); ++i) {
        const NtRef s = slot_of(prod.functor, i);
        if (is_plain(prod.args[i])) {
          contexts[static_cast<std::size_t>(prod.args[i])].insert(s);
        } else {
          b.add_chain(s, prod.args[i]);
        }
      }
    }
  }
  for (std::size_t n = 0; n < t.size(); ++n) {
    const Node& node = t.node(static_cast<NtRef>(n));
    for (NtRef c : contexts[n]) {
      if (node.has_num) b.add_chain(c, kNumRef);
      for (const auto& prod : node.rhs) {
        std::vector<NtRef> args;
        for (std::size_t i = 0; i < prod.args.size(); ++i) args.push_back(slot_of(prod.functor, i));
        b.add_production(c, prod.functor, std::move(args));
      }
    }
  }
  return b.build(root);
}

TypeGrammar widen_shorten(const TypeGrammar& t) {
  TypeGrammar g = t;
  for (int step = 0; step < kMaxMergeSteps; ++step) {
    auto pair = find_connected_pair(g, [&](NtRef n, NtRef m) { return same_functors(g, n, m); });
    if (!pair) return g;
    g = merge_nodes(g, pair->first, pair->second);
    if (overgrown(g, t)) break;
  }
  return widen_functor(g);
}

TypeGrammar widen_rshorten(const TypeGrammar& t) {
  TypeGrammar g = t;
  // Each redirect removes a node, so this loop is bounded by the size.
  for (;;) {
    auto pair = find_connected_pair(
        g, [&](NtRef n, NtRef m) { return same_functors(g, n, m) && node_includes(g, m, n); });
    if (!pair) return g;
    g = redirect(g, pair->second, pair->first);
  }
}

TypeGrammar widen_depthk(const TypeGrammar& t, int k) {
  if (k < 1) throw Error("depth-k widening needs k >= 1");
  TypeGrammar g = t;
  for (int step = 0; step < kMaxMergeSteps && is_plain(g.root()); ++step) {
    bool exhausted = false;
    auto hit = DepthWalker(g, k).find(exhausted);
    if (exhausted) break;
    if (!hit) return g;
    g = merge_nodes(g, hit->first, hit->second);
    if (overgrown(g, t)) break;
  }
  return is_plain(g.root()) ? widen_functor(g) : g;
}

TypeGrammar widen_clash(const TypeGrammar& prev, const TypeGrammar& next) {
  TypeGrammar u = type_union(prev, next);
  if (prev.is_bottom() || !is_plain(u.root())) return u;
  const TypeGrammar start = u;
  for (int step = 0; step < kMaxMergeSteps; ++step) {
    auto hit = find_clash(u, prev);
    if (!hit) return u;
    u = merge_nodes(u, hit->first, hit->second);
    if (overgrown(u, start)) break;
  }
  return widen_functor(u);
}

}  // namespace regtype
