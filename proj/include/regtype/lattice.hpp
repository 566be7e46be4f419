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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "regtype/grammar.hpp"

namespace regtype {

/// sub ⊑ super: every term of `sub` is a term of `super`.
bool includes(const TypeGrammar& sub, const TypeGrammar& super);
bool equiv(const TypeGrammar& a, const TypeGrammar& b);

/// Least deterministic upper bound (tuple-distributive closure of the set
/// union).
TypeGrammar type_union(const TypeGrammar& a, const TypeGrammar& b);
/// Exact intersection; bottom iff the intersection is empty.
TypeGrammar type_intersect(const TypeGrammar& a, const TypeGrammar& b);

bool is_empty(const TypeGrammar& g);

struct NamedType {
  std::string name;
  TypeGrammar type;
};

struct Simplified {
  std::vector<NamedType> representatives;          // pairwise non-equivalent
  std::map<std::string, std::string> renaming;     // original -> representative
};

/// Identifies equivalent types; each class is represented by its
/// lexicographically smallest name.
Simplified simplify_types(const std::vector<NamedType>& env);

}  // namespace regtype
