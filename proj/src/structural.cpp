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

#include "regtype/structural.hpp"

#include <algorithm>

#include "regtype/lattice.hpp"
#include "regtype/widening.hpp"

namespace regtype {

std::string to_string(const Site& s) {
  std::string out = s.predicate;
  auto field = [&](const char* tag, int v) {
    if (v >= 0) out += std::string(" ") + tag + std::to_string(v);
  };
  field("v", s.variant);
  field("c", s.clause);
  field("l", s.literal);
  field("a", s.arg);
  if (!s.variable.empty()) out += " " + s.variable;
  return out;
}

NameId NameRegistry::fresh_name(const Site& site) {
  if (ids_.contains(site)) throw Error("type name already exists for site " + to_string(site));
  sites_.push_back(site);
  const auto id = static_cast<NameId>(sites_.size());
  ids_.emplace(site, id);
  return id;
}

NameId NameRegistry::get_or_create(const Site& site) {
  if (auto n = find(site)) return *n;
  return fresh_name(site);
}

std::optional<NameId> NameRegistry::find(const Site& site) const {
  auto it = ids_.find(site);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const Site& NameRegistry::site(NameId n) const {
  if (n < 1 || static_cast<std::size_t>(n) > sites_.size()) throw Error("unknown type name " + std::to_string(n));
  return sites_[static_cast<std::size_t>(n - 1)];
}

int NameRegistry::widen_count(NameId n) const {
  auto it = counts_.find(n);
  return it == counts_.end() ? 0 : it->second;
}

void NameRegistry::count_widening(NameId n) { ++counts_[n]; }

const TypeDescriptor* NameRegistry::latest(NameId n) const {
  auto it = latest_.find(n);
  return it == latest_.end() ? nullptr : &it->second;
}

void NameRegistry::record(const TypeDescriptor& d) {
  if (d.name != 0) latest_.insert_or_assign(d.name, d);
}

std::set<Label> prune_labels(const std::set<Label>& labels, const TypeGrammar& t) {
  std::set<Label> out;
  if (t.is_bottom()) return out;
  for (const auto& l : labels) {
    if (!l.selector.empty() && l.selector.size() <= kMaxLabelDepth && node_at(t, l.selector)) out.insert(l);
  }
  return out;
}

std::set<Label> shift_labels(const std::set<Label>& labels, const Selector& prefix) {
  std::set<Label> out;
  for (const auto& l : labels) {
    Selector s = prefix.concat(l.selector);
    if (!s.empty() && s.size() <= kMaxLabelDepth) out.insert({std::move(s), l.name});
  }
  return out;
}

bool desc_leq(const TypeDescriptor& a, const TypeDescriptor& b) {
  return includes(a.type, b.type) && std::includes(b.labels.begin(), b.labels.end(), a.labels.begin(), a.labels.end());
}

namespace {

void require_same_name(const TypeDescriptor& a, const TypeDescriptor& b) {
  if (a.name != b.name) {
    throw Error("descriptor names differ (" + std::to_string(a.name) + " vs " + std::to_string(b.name) + ")");
  }
}

std::set<Label> label_union(const std::set<Label>& a, const std::set<Label>& b) {
  std::set<Label> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

}  // namespace

TypeDescriptor desc_union(const TypeDescriptor& a, const TypeDescriptor& b) {
  require_same_name(a, b);
  TypeGrammar t = type_union(a.type, b.type);
  auto labels = prune_labels(label_union(a.labels, b.labels), t);
  return {a.name, std::move(labels), std::move(t)};
}

TypeDescriptor desc_intersect(const TypeDescriptor& a, const TypeDescriptor& b) {
  require_same_name(a, b);
  TypeGrammar t = type_intersect(a.type, b.type);
  auto labels = prune_labels(label_union(a.labels, b.labels), t);
  return {a.name, std::move(labels), std::move(t)};
}

namespace {

// Labels of the position `target` (reached by `at`): suffixes of labels
// whose prefix reaches the same node, or exactly `at` for a special node.
std::set<Label> labels_below(const TypeDescriptor& d, NtRef target, const std::optional<Selector>& at) {
  std::set<Label> out;
  for (const auto& l : d.labels) {
    for (std::size_t k = 0; k < l.selector.size(); ++k) {
      const Selector prefix = l.selector.take(k);
      bool hit = at && prefix == *at;
      if (!hit && is_plain(target)) {
        auto n = node_at(d.type, prefix);
        hit = n && *n == target;
      }
      if (hit) out.insert({l.selector.drop(k), l.name});
    }
  }
  return out;
}

}  // namespace

TypeDescriptor restrict_descriptor(const TypeDescriptor& d, NtRef nt, NameId name) {
  if (!is_plain(nt) || static_cast<std::size_t>(nt) >= d.type.size()) {
    throw Error("restrict_descriptor: node " + std::to_string(nt) + " is not in the type");
  }
  TypeGrammar t = restrict(d.type, nt);
  auto labels = prune_labels(labels_below(d, nt, std::nullopt), t);
  return {name, std::move(labels), std::move(t)};
}

std::optional<TypeDescriptor> descriptor_at(const TypeDescriptor& d, const Selector& s, NameId name) {
  auto n = node_at(d.type, s);
  if (!n) return std::nullopt;
  TypeGrammar t = is_plain(*n) ? restrict(d.type, *n) : subtype_at(d.type, s).value();
  auto labels = prune_labels(labels_below(d, *n, s), t);
  return TypeDescriptor{name, std::move(labels), std::move(t)};
}

bool label_invariant_holds(const TypeDescriptor& d, const NameRegistry* registry) {
  for (const auto& l : d.labels) {
    if (l.selector.empty() || l.selector.size() > kMaxLabelDepth) return false;
    auto sub = subtype_at(d.type, l.selector);
    if (!sub) return false;
    if (registry != nullptr) {
      const TypeDescriptor* named = registry->latest(l.name);
      if (named != nullptr && !includes(named->type, *sub)) return false;
    }
  }
  return true;
}

namespace {

class StructuralWalk {
 public:
  StructuralWalk(const TypeGrammar& t, std::set<Selector> self) : t_(t), self_(std::move(self)) {}

  TypeGrammar run() {
    root_ = b_.add_nonterminal();
    copy_alternatives(t_.root(), root_, Selector());
    return b_.build(root_);
  }

 private:
  void copy_alternatives(NtRef from, NtRef to, const Selector& sel) {
    const Node& n = t_.node(from);
    if (n.has_num) b_.add_chain(to, kNumRef);
    for (const auto& prod : n.rhs) {
      std::vector<NtRef> args;
      for (std::size_t i = 0; i < prod.args.size(); ++i) {
        args.push_back(widen(prod.args[i], sel.then({prod.functor, i + 1})));
      }
      b_.add_production(to, prod.functor, std::move(args));
    }
  }

  NtRef widen(NtRef n, const Selector& sel) {
    if (!is_plain(n)) return n;
    if (auto it = seen_.find(n); it != seen_.end()) return it->second;
    const NtRef m = b_.add_nonterminal();
    seen_.emplace(n, m);
    copy_alternatives(n, m, sel);
    if (self_.contains(sel)) b_.add_chain(m, root_);
    return m;
  }

  const TypeGrammar& t_;
  std::set<Selector> self_;
  GrammarBuilder b_;
  NtRef root_ = kBottomRef;
  std::map<NtRef, NtRef> seen_;
};

}  // namespace

TypeDescriptor widen_structural(const TypeDescriptor& prev, const TypeDescriptor& cand) {
  if (prev.type.is_bottom()) return cand;
  require_same_name(prev, cand);
  const TypeGrammar joined = type_union(prev.type, cand.type);
  const auto labels = label_union(prev.labels, cand.labels);
  std::set<Selector> self;
  for (const auto& l : labels) {
    if (l.name == prev.name && prev.name != 0) self.insert(l.selector);
  }
  TypeGrammar t = (self.empty() || !is_plain(joined.root())) ? joined : StructuralWalk(joined, self).run();
  auto kept = prune_labels(labels, t);
  return {prev.name, std::move(kept), std::move(t)};
}

TypeDescriptor guard_widen(const TypeDescriptor& prev, const TypeDescriptor& cand, int bound,
                           NameRegistry& registry) {
  if (prev.type.is_bottom()) return cand;
  require_same_name(prev, cand);
  if (includes(cand.type, prev.type)) {
    // Nothing grew: keep the previous type rather than widen it again.
    return {prev.name, prune_labels(label_union(prev.labels, cand.labels), prev.type), prev.type};
  }
  if (registry.widen_count(prev.name) < bound) {
    TypeDescriptor out = widen_structural(prev, cand);
    if (!equiv(out.type, prev.type)) registry.count_widening(prev.name);
    return out;
  }
  TypeGrammar t = widen_shorten(type_union(prev.type, cand.type));
  auto labels = prune_labels(label_union(prev.labels, cand.labels), t);
  return {prev.name, std::move(labels), std::move(t)};
}

}  // namespace regtype
