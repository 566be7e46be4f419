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

#include "regtype/abstract_domain.hpp"

#include <algorithm>

#include "regtype/lattice.hpp"

namespace regtype {

AbstractSub AbstractSub::top(const std::vector<VarId>& vars) {
  AbstractSub a;
  a.bottom_ = false;
  for (VarId v : vars) a.entries_[v] = TypeEntry::of(TypeGrammar::any());
  return a;
}

const TypeEntry& AbstractSub::at(VarId v) const {
  auto it = entries_.find(v);
  if (bottom_ || it == entries_.end()) throw Error("no type entry for variable _" + std::to_string(v));
  return it->second;
}

std::vector<VarId> AbstractSub::variables() const {
  std::vector<VarId> out;
  for (const auto& [v, e] : entries_) out.push_back(v);
  return out;
}

void AbstractSub::set(VarId v, TypeEntry e) {
  if (bottom_) return;
  if (e.type.is_bottom()) {
    *this = bottom();
    return;
  }
  entries_.insert_or_assign(v, std::move(e));
}

AbstractSub AbstractSub::extend(const std::vector<VarId>& vars) const {
  if (bottom_) return *this;
  AbstractSub out = *this;
  for (VarId v : vars) out.entries_.try_emplace(v, TypeEntry::of(TypeGrammar::any()));
  return out;
}

AbstractSub AbstractSub::project(const std::vector<VarId>& vars) const {
  if (bottom_) return *this;
  AbstractSub out;
  out.bottom_ = false;
  for (VarId v : vars) out.entries_.emplace(v, at(v));
  return out;
}

namespace {

void require_same_vars(const AbstractSub& a, const AbstractSub& b) {
  if (a.variables() != b.variables()) throw Error("abstract substitutions over different variables");
}

std::set<Label> merged_labels(const TypeEntry& a, const TypeEntry& b, const TypeGrammar& t) {
  std::set<Label> all = a.labels;
  all.insert(b.labels.begin(), b.labels.end());
  return prune_labels(all, t);
}

}  // namespace

bool asub_leq(const AbstractSub& a, const AbstractSub& b) {
  if (a.is_bottom()) return true;
  if (b.is_bottom()) return false;
  require_same_vars(a, b);
  for (const auto& [v, e] : a.entries()) {
    if (!includes(e.type, b.at(v).type)) return false;
  }
  return true;
}

AbstractSub asub_lub(const AbstractSub& a, const AbstractSub& b) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  require_same_vars(a, b);
  AbstractSub out = a;
  for (const auto& [v, e] : a.entries()) {
    const TypeEntry& f = b.at(v);
    TypeGrammar t = type_union(e.type, f.type);
    auto labels = merged_labels(e, f, t);
    out.set(v, {e.name != 0 ? e.name : f.name, std::move(labels), std::move(t)});
  }
  return out;
}

AbstractSub asub_glb(const AbstractSub& a, const AbstractSub& b) {
  if (a.is_bottom() || b.is_bottom()) return AbstractSub::bottom();
  require_same_vars(a, b);
  AbstractSub out = a;
  for (const auto& [v, e] : a.entries()) {
    const TypeEntry& f = b.at(v);
    TypeGrammar t = type_intersect(e.type, f.type);
    auto labels = merged_labels(e, f, t);
    out.set(v, {e.name != 0 ? e.name : f.name, std::move(labels), std::move(t)});
    if (out.is_bottom()) break;
  }
  return out;
}

namespace {

NtRef build_term(GrammarBuilder& b, const Term& t, const AbstractSub& a, std::map<VarId, NtRef>& vars) {
  if (t.is_var()) {
    auto it = vars.find(t.var_id());
    if (it == vars.end()) it = vars.emplace(t.var_id(), b.import(a.at(t.var_id()).type)).first;
    return it->second;
  }
  if (t.is_number()) return kNumRef;
  std::vector<NtRef> args;
  for (const auto& arg : t.args()) args.push_back(build_term(b, arg, a, vars));
  const NtRef nt = b.add_nonterminal();
  b.add_production(nt, t.functor(), std::move(args));
  return nt;
}

TypeGrammar special_type(NtRef r) {
  if (r == kAnyRef) return TypeGrammar::any();
  if (r == kNumRef) return TypeGrammar::num();
  return TypeGrammar::bottom();
}

void solve_into(const Term& t, const TypeGrammar& g, NtRef r, const Selector& at, std::vector<TypeEquation>& out) {
  if (t.is_var()) {
    out.push_back({t.var_id(), is_plain(r) ? restrict(g, r) : special_type(r), at});
    return;
  }
  if (r == kAnyRef) {
    for (const auto& [v, s] : variable_positions(t)) out.push_back({v, TypeGrammar::any(), at.concat(s)});
    return;
  }
  if (t.is_number()) {
    if (r == kNumRef || (is_plain(r) && g.node(r).has_num)) return;
    throw Error("number does not fit the type at " + to_string(at));
  }
  const Production* p = is_plain(r) ? g.node(r).find(t.functor()) : nullptr;
  if (p == nullptr) throw Error("no production for " + to_string(t.functor()) + " at " + to_string(at));
  for (std::size_t i = 0; i < p->args.size(); ++i) {
    solve_into(t.args()[i], g, p->args[i], at.then({t.functor(), i + 1}), out);
  }
}

}  // namespace

TypeGrammar term_to_type(const Term& t, const AbstractSub& a) {
  if (a.is_bottom()) throw Error("term_to_type on the bottom substitution");
  if (t.is_var()) return a.at(t.var_id()).type;
  GrammarBuilder b;
  std::map<VarId, NtRef> vars;
  const NtRef root = build_term(b, t, a, vars);
  return b.build(root);
}

TypeDescriptor term_to_descriptor(const Term& t, const AbstractSub& a) {
  if (t.is_var()) {
    TypeDescriptor d = a.at(t.var_id());
    d.name = 0;
    return d;
  }
  TypeDescriptor d = TypeDescriptor::of(term_to_type(t, a));
  std::set<Label> labels;
  for (const auto& [v, s] : variable_positions(t)) {
    const TypeEntry& e = a.at(v);
    if (e.name != 0 && s.size() <= kMaxLabelDepth) labels.insert({s, e.name});
    auto shifted = shift_labels(e.labels, s);
    labels.insert(shifted.begin(), shifted.end());
  }
  d.labels = prune_labels(labels, d.type);
  return d;
}

std::vector<TypeEquation> solve(const Term& t, const TypeGrammar& type) {
  if (type.is_bottom()) throw Error("solve against the empty type");
  std::vector<TypeEquation> out;
  solve_into(t, type, type.root(), Selector(), out);
  return out;
}

AbstractSub amgu(const AbstractSub& a, VarId x, const Term& t) {
  if (a.is_bottom()) return a;
  const TypeEntry& dx = a.at(x);
  const TypeDescriptor dt = term_to_descriptor(t, a);
  TypeGrammar tx = type_intersect(dx.type, dt.type);
  if (tx.is_bottom()) return AbstractSub::bottom();
  const TypeEntry nx{dx.name, merged_labels(dx, dt, tx), tx};

  std::vector<TypeEquation> eqs;
  try {
    eqs = solve(t, tx);
  } catch (const Error&) {
    return AbstractSub::bottom();
  }

  // Compute every new entry first, then commit them together.
  std::map<VarId, TypeEntry> updates;
  for (const auto& eq : eqs) {
    auto it = updates.find(eq.var);
    if (it == updates.end()) it = updates.emplace(eq.var, a.at(eq.var)).first;
    TypeEntry& cur = it->second;
    cur.type = type_intersect(cur.type, eq.type);
    if (cur.type.is_bottom()) return AbstractSub::bottom();
    if (auto below = descriptor_at(nx, eq.at)) cur.labels.insert(below->labels.begin(), below->labels.end());
  }
  if (auto it = updates.find(x); it != updates.end()) {
    TypeEntry& cur = it->second;
    cur.type = type_intersect(cur.type, nx.type);
    if (cur.type.is_bottom()) return AbstractSub::bottom();
    cur.labels.insert(nx.labels.begin(), nx.labels.end());
  } else {
    updates.emplace(x, nx);
  }

  AbstractSub out = a;
  for (auto& [v, e] : updates) {
    e.labels = prune_labels(e.labels, e.type);
    out.set(v, std::move(e));
  }
  return out;
}

AbstractSub constrain(const AbstractSub& a, const Term& t, const TypeEntry& d) {
  if (a.is_bottom()) return a;
  if (d.type.is_bottom()) return AbstractSub::bottom();
  const auto vars = a.variables();
  const VarId tmp = vars.empty() ? 0 : vars.back() + 1;
  AbstractSub ext = a;
  ext.set(tmp, d);
  return amgu(ext, tmp, t).project(vars);
}

AbstractSub unify_terms(const AbstractSub& a, const Term& t1, const Term& t2) {
  if (a.is_bottom()) return a;
  if (t1.is_var()) return amgu(a, t1.var_id(), t2);
  if (t2.is_var()) return amgu(a, t2.var_id(), t1);
  if (t1.is_number() || t2.is_number()) {
    return t1.is_number() && t2.is_number() ? a : AbstractSub::bottom();
  }
  if (t1.functor() != t2.functor()) return AbstractSub::bottom();
  AbstractSub cur = a;
  for (std::size_t i = 0; i < t1.args().size() && !cur.is_bottom(); ++i) {
    cur = unify_terms(cur, t1.args()[i], t2.args()[i]);
  }
  return cur;
}

}  // namespace regtype
