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

// Type names, labels and type descriptors.
//
// A descriptor (N, E, T) is a grammar T tagged with the name N of the
// program site it approximates and labels E = {<s, N'>}: the type named N'
// occurs inside T at selector s. The structural widening turns a label
// <s, N> that points back to the descriptor's own name into recursion.

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regtype/grammar.hpp"

namespace regtype {

using NameId = int;  // 0 means "no name"

inline constexpr std::size_t kMaxLabelDepth = 8;

/// Where a name was created. Analyzer sites use variant/clause/literal/arg
/// and the variable name; negative fields mark the unused coordinates.
struct Site {
  std::string predicate;
  int variant = -1;
  int clause = -1;
  int literal = -1;
  int arg = -1;
  std::string variable;

  auto operator<=>(const Site&) const = default;
};

std::string to_string(const Site& s);

struct Label {
  Selector selector;
  NameId name = 0;

  auto operator<=>(const Label&) const = default;
};

struct TypeDescriptor {
  NameId name = 0;
  std::set<Label> labels;
  TypeGrammar type;

  static TypeDescriptor of(TypeGrammar t) { return {0, {}, std::move(t)}; }
  friend bool operator==(const TypeDescriptor&, const TypeDescriptor&) = default;
};

class NameRegistry {
 public:
  /// Throws Error if `site` already has a name.
  NameId fresh_name(const Site& site);
  NameId get_or_create(const Site& site);
  std::optional<NameId> find(const Site& site) const;

  const Site& site(NameId n) const;
  int widen_count(NameId n) const;
  void count_widening(NameId n);

  /// Latest descriptor recorded for a name; names may be re-bound.
  const TypeDescriptor* latest(NameId n) const;
  void record(const TypeDescriptor& d);

  std::size_t size() const { return sites_.size(); }

 private:
  std::vector<Site> sites_;  // index = id - 1
  std::map<Site, NameId> ids_;
  std::map<NameId, int> counts_;
  std::map<NameId, TypeDescriptor> latest_;
};

/// Drops labels whose selector does not lead to a node of the type.
std::set<Label> prune_labels(const std::set<Label>& labels, const TypeGrammar& t);
/// Prefixes every selector with `prefix`; labels deeper than the cap go.
std::set<Label> shift_labels(const std::set<Label>& labels, const Selector& prefix);

bool desc_leq(const TypeDescriptor& a, const TypeDescriptor& b);
/// Both require a.name == b.name and throw Error otherwise.
TypeDescriptor desc_union(const TypeDescriptor& a, const TypeDescriptor& b);
TypeDescriptor desc_intersect(const TypeDescriptor& a, const TypeDescriptor& b);

/// The descriptor of node `nt` of d.type, renamed to `name`: labels are the
/// suffixes p of <s.p, N'> such that s leads to `nt`.
TypeDescriptor restrict_descriptor(const TypeDescriptor& d, NtRef nt, NameId name);
/// Same, for the position reached by a selector (nullopt on a dead path).
std::optional<TypeDescriptor> descriptor_at(const TypeDescriptor& d, const Selector& s, NameId name = 0);

/// Labels reach live positions and, when a registry is given, the latest
/// type of every labelled name is included in T/s.
bool label_invariant_holds(const TypeDescriptor& d, const NameRegistry* registry = nullptr);

TypeDescriptor widen_structural(const TypeDescriptor& prev, const TypeDescriptor& cand);

/// widen_structural while the name's counter is below `bound`, afterwards
/// shortening of the union. The counter advances when the type changes.
TypeDescriptor guard_widen(const TypeDescriptor& prev, const TypeDescriptor& cand, int bound,
                           NameRegistry& registry);

}  // namespace regtype
