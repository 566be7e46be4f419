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

#include "regtype/analyzer.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>

#include "regtype/lattice.hpp"

namespace regtype {

namespace {

using Pattern = std::vector<TypeEntry>;

struct Entry {
  Variant v;
  std::set<std::size_t> dependents;
  bool queued = false;
};

bool covers(const Pattern& big, const Pattern& small) {
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (!includes(small[i].type, big[i].type)) return false;
  }
  return true;
}

std::optional<Pattern> pattern_lub(const std::optional<Pattern>& a, const std::optional<Pattern>& b) {
  if (!a) return b;
  if (!b) return a;
  Pattern out;
  for (std::size_t i = 0; i < a->size(); ++i) {
    const TypeEntry& x = (*a)[i];
    const TypeEntry& y = (*b)[i];
    TypeGrammar t = type_union(x.type, y.type);
    std::set<Label> labels = x.labels;
    labels.insert(y.labels.begin(), y.labels.end());
    out.push_back({x.name != 0 ? x.name : y.name, prune_labels(labels, t), std::move(t)});
  }
  return out;
}

class Engine {
 public:
  Engine(const Program& program, const AnalysisOptions& options) : program_(program), options_(options) {}

  AnalysisResult run() {
    const auto start = std::chrono::steady_clock::now();
    AnalysisResult result;
    result.kind = options_.kind;
    result.entries = options_.entries.empty() ? default_entries(program_) : options_.entries;
    for (const auto& key : result.entries) {
      if (program_.find(key) == nullptr) throw Error("entry predicate " + to_string(key) + " is not defined");
      Pattern call(key.arity, TypeEntry::of(TypeGrammar::any()));
      lookup_or_create(key, call);
    }
    while (!queue_.empty()) {
      if (++iterations_ > options_.max_steps) {
        throw AnalysisError("analysis did not converge within " + std::to_string(options_.max_steps) + " steps");
      }
      const std::size_t id = queue_.front();
      queue_.pop_front();
      entries_[id].queued = false;
      process(id);
    }
    for (auto& e : entries_) result.variants.push_back(std::move(e.v));
    result.stats.iterations = iterations_;
    result.stats.table_size = result.variants.size();
    result.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.warnings = std::move(warnings_);
    return result;
  }

 private:
  bool structural() const { return options_.kind == WideningKind::structural; }

  void schedule(std::size_t id) {
    if (entries_[id].queued) return;
    entries_[id].queued = true;
    queue_.push_back(id);
  }

  void warn_once(const std::string& msg) {
    if (std::find(warnings_.begin(), warnings_.end(), msg) == warnings_.end()) warnings_.push_back(msg);
  }

  // Widening of one argument between two consecutive approximations that
  // share the counter key `counter`.
  TypeEntry widen_arg(const std::optional<TypeEntry>& prev, TypeEntry cand, NameId counter) {
    if (structural()) {
      cand.name = counter;
      if (!prev) return cand;
      TypeEntry p = *prev;
      p.name = counter;
      return guard_widen(p, cand, options_.widen_bound, registry_);
    }
    if (prev && includes(cand.type, prev->type)) return *prev;
    if (options_.kind == WideningKind::rshorten) {
      // Restricted shortening need not terminate; it shares the counter
      // guard of the structural widening and falls back to shortening.
      const TypeGrammar joined = prev ? type_union(prev->type, cand.type) : cand.type;
      if (registry_.widen_count(counter) >= options_.widen_bound) return TypeEntry::of(widen_shorten(joined));
      TypeGrammar out = widen_rshorten(joined);
      if (!prev || !equiv(out, prev->type)) registry_.count_widening(counter);
      return TypeEntry::of(std::move(out));
    }
    const WideningConfig config{options_.kind, options_.depth_k};
    return TypeEntry::of(widen(config, prev ? std::optional<TypeGrammar>(prev->type) : std::nullopt, cand.type));
  }

  NameId call_name(const PredicateKey& key, std::size_t arg) {
    return registry_.get_or_create(Site{key.name + "/" + std::to_string(key.arity), -1, -1, -1,
                                        static_cast<int>(arg), "call"});
  }

  NameId success_name(const Variant& v, std::size_t arg) {
    return registry_.get_or_create(
        Site{to_string(v.pred), v.index, -1, -1, static_cast<int>(arg), "success"});
  }

  std::size_t lookup_or_create(const PredicateKey& key, Pattern call) {
    std::optional<std::size_t> last;
    for (std::size_t id = 0; id < entries_.size(); ++id) {
      if (entries_[id].v.pred != key) continue;
      if (covers(entries_[id].v.call, call)) return id;
      last = id;
    }
    if (last) {
      const Pattern& prev = entries_[*last].v.call;
      for (std::size_t i = 0; i < call.size(); ++i) call[i] = widen_arg(prev[i], call[i], call_name(key, i));
      for (std::size_t id = 0; id < entries_.size(); ++id) {
        if (entries_[id].v.pred == key && covers(entries_[id].v.call, call)) return id;
      }
    } else if (structural()) {
      for (std::size_t i = 0; i < call.size(); ++i) call[i].name = call_name(key, i);
    } else {
      for (auto& c : call) c = TypeEntry::of(c.type);
    }
    Entry e;
    e.v.pred = key;
    e.v.index = static_cast<int>(std::count_if(entries_.begin(), entries_.end(),
                                               [&](const Entry& x) { return x.v.pred == key; }));
    e.v.call = std::move(call);
    entries_.push_back(std::move(e));
    schedule(entries_.size() - 1);
    return entries_.size() - 1;
  }

  void process(std::size_t id) {
    const PredicateKey key = entries_[id].v.pred;
    const auto& clauses = *program_.find(key);
    std::optional<Pattern> acc;
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) acc = pattern_lub(acc, run_clause(id, ci, clauses[ci]));
    if (!acc) return;
    const std::optional<Pattern> old = entries_[id].v.success;
    Pattern widened;
    for (std::size_t j = 0; j < acc->size(); ++j) {
      std::optional<TypeEntry> prev;
      if (old) prev = (*old)[j];
      widened.push_back(widen_arg(prev, (*acc)[j], success_name(entries_[id].v, j)));
    }
    if (old && covers(*old, widened)) return;
    if (structural()) {
      for (const auto& d : widened) registry_.record(d);
    }
    entries_[id].v.success = std::move(widened);
    for (std::size_t dep : entries_[id].dependents) schedule(dep);
  }

  std::optional<Pattern> run_clause(std::size_t id, std::size_t ci, const Clause& clause) {
    AbstractSub a = AbstractSub::top(clause.variables());
    {
      const Pattern& call = entries_[id].v.call;
      for (std::size_t i = 0; i < call.size() && !a.is_bottom(); ++i) a = constrain(a, clause.head.args()[i], call[i]);
    }
    for (std::size_t k = 0; k < clause.body.size() && !a.is_bottom(); ++k) {
      const Literal& lit = clause.body[k];
      const PredicateKey callee = key_of(lit.goal);
      switch (builtin_support(callee)) {
        case BuiltinSupport::supported:
          a = builtin(a, lit.goal);
          continue;
        case BuiltinSupport::unsupported:
          if (!options_.permissive) {
            throw AnalysisError("unsupported builtin " + to_string(callee) + " at line " + std::to_string(lit.line));
          }
          warn_once("builtin " + to_string(callee) + " treated as true");
          continue;
        case BuiltinSupport::none:
          break;
      }
      if (program_.find(callee) == nullptr) {
        throw AnalysisError("unknown predicate " + to_string(callee) + " called at line " + std::to_string(lit.line));
      }
      a = user_call(id, ci, k, clause, lit.goal, a);
    }
    if (a.is_bottom()) return std::nullopt;
    Pattern out;
    for (std::size_t j = 0; j < clause.head.args().size(); ++j) {
      TypeEntry d = term_to_descriptor(clause.head.args()[j], a);
      d.name = structural() ? success_name(entries_[id].v, j) : 0;
      out.push_back(std::move(d));
    }
    return out;
  }

  AbstractSub builtin(const AbstractSub& a, const Term& goal) {
    const std::string& name = goal.functor().name;
    const TypeEntry num = TypeEntry::of(TypeGrammar::num());
    if (name == "number") return constrain(a, goal.args()[0], num);
    if (name == "=<") return constrain(constrain(a, goal.args()[0], num), goal.args()[1], num);
    if (name == "=") return unify_terms(a, goal.args()[0], goal.args()[1]);
    return a;  // true/0
  }

  AbstractSub user_call(std::size_t id, std::size_t ci, std::size_t k, const Clause& clause, const Term& goal,
                        AbstractSub a) {
    const PredicateKey callee = key_of(goal);
    const std::vector<VarId> vars = variables_of(goal);
    if (structural()) {
      for (VarId v : vars) {
        TypeEntry e = a.at(v);
        e.name = registry_.get_or_create(site_of(id, ci, k, clause, goal, v));
        a.set(v, std::move(e));
      }
    }
    Pattern call;
    for (const auto& arg : goal.args()) {
      TypeEntry d = term_to_descriptor(arg, a);
      d.name = 0;
      call.push_back(std::move(d));
    }
    const std::size_t target = lookup_or_create(callee, std::move(call));
    entries_[target].dependents.insert(id);
    const auto& success = entries_[target].v.success;
    if (!success) return AbstractSub::bottom();
    const Pattern succ = *success;
    for (std::size_t i = 0; i < succ.size() && !a.is_bottom(); ++i) a = constrain(a, goal.args()[i], succ[i]);
    if (a.is_bottom() || !structural()) return a;
    for (VarId v : vars) {
      TypeEntry cur = a.at(v);
      const TypeDescriptor* prev = registry_.latest(cur.name);
      if (prev != nullptr) cur = guard_widen(*prev, cur, options_.widen_bound, registry_);
      registry_.record(cur);
      a.set(v, std::move(cur));
    }
    return a;
  }

  Site site_of(std::size_t id, std::size_t ci, std::size_t k, const Clause& clause, const Term& goal, VarId v) const {
    int arg = 0;
    for (std::size_t i = 0; i < goal.args().size(); ++i) {
      const auto vs = variables_of(goal.args()[i]);
      if (std::find(vs.begin(), vs.end(), v) != vs.end()) {
        arg = static_cast<int>(i);
        break;
      }
    }
    const Variant& owner = entries_[id].v;
    return Site{to_string(owner.pred), owner.index, static_cast<int>(ci), static_cast<int>(k), arg,
                clause.var_names.at(v)};
  }

  const Program& program_;
  const AnalysisOptions& options_;
  NameRegistry registry_;
  std::vector<Entry> entries_;
  std::deque<std::size_t> queue_;
  long iterations_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace

std::vector<PredicateKey> default_entries(const Program& program) {
  std::set<PredicateKey> called;
  for (const auto& [key, clauses] : program.predicates) {
    for (const auto& c : clauses) {
      for (const auto& lit : c.body) {
        const PredicateKey k = key_of(lit.goal);
        if (k != key) called.insert(k);
      }
    }
  }
  std::vector<PredicateKey> out;
  for (const auto& key : program.order) {
    if (!called.contains(key)) out.push_back(key);
  }
  return out.empty() ? program.order : out;
}

AnalysisResult analyze(const Program& program, const AnalysisOptions& options) {
  if (options.kind == WideningKind::depthk && options.depth_k < 1) throw Error("depth-k needs k >= 1");
  if (options.widen_bound < 0) throw Error("widen bound must be non-negative");
  return Engine(program, options).run();
}

std::vector<PredicateSummary> summarize(const Program& program, const AnalysisResult& result) {
  std::vector<PredicateSummary> out;
  for (const auto& [key, clauses] : program.predicates) {
    PredicateSummary s;
    s.pred = key;
    s.call.assign(key.arity, TypeGrammar::bottom());
    s.success.assign(key.arity, TypeGrammar::bottom());
    for (const auto& v : result.variants) {
      if (v.pred != key) continue;
      s.reached = true;
      s.succeeds = s.succeeds || v.success.has_value();
      for (std::size_t i = 0; i < key.arity; ++i) {
        s.call[i] = type_union(s.call[i], v.call[i].type);
        if (v.success) s.success[i] = type_union(s.success[i], (*v.success)[i].type);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace regtype
