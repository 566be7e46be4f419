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

// Abstract substitutions: one type entry per variable, or BOTTOM.
//
// Entries are descriptors so the structural widening can follow names and
// labels through unification. The classical widenings simply leave names
// at 0 and label sets empty.

#pragma once

#include <map>
#include <vector>

#include "regtype/structural.hpp"

namespace regtype {

using TypeEntry = TypeDescriptor;

class AbstractSub {
 public:
  /// The failing substitution.
  AbstractSub() = default;
  static AbstractSub bottom() { return AbstractSub(); }
  /// Every variable mapped to any.
  static AbstractSub top(const std::vector<VarId>& vars);

  bool is_bottom() const { return bottom_; }
  bool has(VarId v) const { return entries_.contains(v); }
  /// Throws Error if `v` has no entry (or the substitution is BOTTOM).
  const TypeEntry& at(VarId v) const;
  const std::map<VarId, TypeEntry>& entries() const { return entries_; }
  std::vector<VarId> variables() const;

  /// Sets an entry; a bottom type collapses the substitution to BOTTOM.
  void set(VarId v, TypeEntry e);

  /// Adds any entries for the variables not present yet.
  AbstractSub extend(const std::vector<VarId>& vars) const;
  /// Keeps exactly `vars` (all must be present).
  AbstractSub project(const std::vector<VarId>& vars) const;

  friend bool operator==(const AbstractSub&, const AbstractSub&) = default;

 private:
  bool bottom_ = true;
  std::map<VarId, TypeEntry> entries_;
};

/// Element-wise ordering and bounds. Non-BOTTOM operands must have the same
/// variables; Error otherwise. Names come from the left operand.
bool asub_leq(const AbstractSub& a, const AbstractSub& b);
AbstractSub asub_lub(const AbstractSub& a, const AbstractSub& b);
AbstractSub asub_glb(const AbstractSub& a, const AbstractSub& b);

/// tμ: the type of `t` with each variable replaced by its entry.
/// Throws Error for a variable without entry.
TypeGrammar term_to_type(const Term& t, const AbstractSub& a);
/// Same, plus labels <s, N_y> for every named variable y at s (and y's own
/// labels shifted by s). The descriptor is unnamed.
TypeDescriptor term_to_descriptor(const Term& t, const AbstractSub& a);

struct TypeEquation {
  VarId var;
  TypeGrammar type;
  Selector at;  // occurrence of var in the solved term
};

/// Pushes `t` against `type`, one equation per variable occurrence.
/// Throws Error when a functor of `t` has no production at its position.
std::vector<TypeEquation> solve(const Term& t, const TypeGrammar& type);

/// Abstract unification of x = t.
AbstractSub amgu(const AbstractSub& a, VarId x, const Term& t);
/// Constrains `t` to the descriptor `d` (x = t for a temporary x : d).
AbstractSub constrain(const AbstractSub& a, const Term& t, const TypeEntry& d);
/// Abstract t1 = t2.
AbstractSub unify_terms(const AbstractSub& a, const Term& t1, const Term& t2);

}  // namespace regtype
