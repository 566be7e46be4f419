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

// Deterministic regular term grammars.
//
// A TypeGrammar is an immutable value in canonical form: every node is
// reachable from the root, non-empty, and has productions with pairwise
// distinct functors. The three distinguished nonterminals (any, num and
// bottom) are encoded as negative references and carry no productions.
// Equivalent nodes are merged, so two grammars denote the same set exactly
// when they compare equal.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regtype/term.hpp"

namespace regtype {

using NtRef = std::int32_t;

inline constexpr NtRef kAnyRef = -1;
inline constexpr NtRef kNumRef = -2;
inline constexpr NtRef kBottomRef = -3;

enum class NtKind { plain, any, num, bottom };

constexpr NtKind kind_of(NtRef r) {
  switch (r) {
    case kAnyRef: return NtKind::any;
    case kNumRef: return NtKind::num;
    case kBottomRef: return NtKind::bottom;
    default: return NtKind::plain;
  }
}

constexpr bool is_plain(NtRef r) { return r >= 0; }

struct Production {
  Functor functor;
  std::vector<NtRef> args;

  friend bool operator==(const Production&, const Production&) = default;
};

/// An or-node: the alternatives of one nonterminal.
struct Node {
  bool has_num = false;
  std::vector<Production> rhs;  // sorted by functor, functors distinct

  const Production* find(const Functor& f) const;
  friend bool operator==(const Node&, const Node&) = default;
};

class TypeGrammar {
 public:
  /// The empty type.
  TypeGrammar() = default;

  static TypeGrammar any() { return TypeGrammar(kAnyRef, {}); }
  static TypeGrammar num() { return TypeGrammar(kNumRef, {}); }
  static TypeGrammar bottom() { return TypeGrammar(kBottomRef, {}); }
  /// `f(any,...,any)` style constant for a 0-ary functor; handy in tests.
  static TypeGrammar atom(const std::string& name);

  NtRef root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NtRef r) const { return nodes_.at(static_cast<std::size_t>(r)); }
  std::size_t size() const { return nodes_.size(); }

  bool is_any() const { return root_ == kAnyRef; }
  bool is_num() const { return root_ == kNumRef; }
  bool is_bottom() const { return root_ == kBottomRef; }

  friend bool operator==(const TypeGrammar&, const TypeGrammar&) = default;

 private:
  friend class GrammarBuilder;
  friend TypeGrammar make_canonical(NtRef root, std::vector<Node> nodes);

  TypeGrammar(NtRef root, std::vector<Node> nodes) : root_(root), nodes_(std::move(nodes)) {}

  NtRef root_ = kBottomRef;
  std::vector<Node> nodes_;
};

/// Rebuilds a grammar from deterministic, non-empty nodes: drops unreachable
/// nodes, merges equivalent ones and renumbers breadth-first from the root.
TypeGrammar make_canonical(NtRef root, std::vector<Node> nodes);

/// Accumulates raw productions (chain rules and duplicate functors allowed)
/// and normalizes them into a deterministic grammar.
class GrammarBuilder {
 public:
  NtRef add_nonterminal();
  std::size_t size() const { return alts_.size(); }

  /// lhs -> f(args...). Throws Error if args.size() != f.arity.
  void add_production(NtRef lhs, Functor f, std::vector<NtRef> args);
  /// lhs -> target, where target may be any, num or bottom.
  void add_chain(NtRef lhs, NtRef target);

  /// Copies `g` in; returns the raw reference for each node of g (index =
  /// node id). Special references pass through unchanged.
  std::vector<NtRef> import_nodes(const TypeGrammar& g);
  /// Copies `g` in and returns the raw reference for its root.
  NtRef import(const TypeGrammar& g);

  /// True iff no finite term derives from `nt`.
  bool is_empty(NtRef nt) const;

  /// Normal form rooted at `root`: chain rules inlined, same-functor
  /// alternatives merged argument-wise, empty and unreachable nonterminals
  /// removed. The result over-approximates the raw language.
  TypeGrammar build(NtRef root) const;

 private:
  struct Alt {
    bool chain = false;
    NtRef target = kBottomRef;  // chain target
    Production prod;
  };
  std::vector<std::vector<Alt>> alts_;
};

/// The grammar rooted at node `nt` of `g` (reach-closure, fresh ids).
/// Throws Error if `nt` is not a node of `g`.
TypeGrammar restrict(const TypeGrammar& g, NtRef nt);

/// Reference reached from the root along `s`; any absorbs every step.
std::optional<NtRef> node_at(const TypeGrammar& g, const Selector& s);
/// T/s as a grammar, or nullopt on a dead path.
std::optional<TypeGrammar> subtype_at(const TypeGrammar& g, const Selector& s);

/// Membership in the concretization. Variables belong only to any.
bool member(const Term& t, const TypeGrammar& g);
bool member(const Term& t, const TypeGrammar& g, NtRef at);

/// Checks the canonical-form invariants; used by tests and debug asserts.
bool is_well_formed(const TypeGrammar& g);

/// Principal functors of a reference: functor keys of its productions plus
/// the pseudo-functors `num` / `any`.
std::vector<std::string> principal_functors(const TypeGrammar& g, NtRef r);

/// Plain nodes reachable from `from` through at least one edge, in
/// breadth-first order.
std::vector<NtRef> reachable_from(const TypeGrammar& g, NtRef from);

/// Every functor occurring in a production of `g`.
std::vector<Functor> functors_of(const TypeGrammar& g);

/// Replaces nodes `a` and `b` of `g` by their least upper bound U. Edges
/// that led to `a` or `b` lead to U afterwards, so recursion is introduced
/// where the two nodes were path-connected. Sub-unions that are covered by
/// one of their members collapse onto that member.
TypeGrammar merge_nodes(const TypeGrammar& g, NtRef a, NtRef b);

/// Redirects every reference to node `from` (including the root) to `to`.
TypeGrammar redirect(const TypeGrammar& g, NtRef from, NtRef to);

/// Inclusion between two nodes of the same grammar.
bool node_includes(const TypeGrammar& g, NtRef sub, NtRef super);

}  // namespace regtype
