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

// Widening operators over plain grammars. The structural widening needs
// type descriptors and lives in structural.hpp; widen() rejects it.

#pragma once

#include <optional>
#include <string_view>

#include "regtype/grammar.hpp"

namespace regtype {

enum class WideningKind { functor, jungle, shorten, rshorten, depthk, clash, structural };

std::string_view to_string(WideningKind kind);
/// Accepts the CLI spellings; "struct" and "structural" are synonyms.
std::optional<WideningKind> parse_widening_kind(std::string_view text);

/// Kinds that transform a single grammar (applied to prev ⊔ cand).
bool is_unary(WideningKind kind);

struct WideningConfig {
  WideningKind kind = WideningKind::functor;
  int depth_k = 2;
};

TypeGrammar widen(const WideningConfig& config, const std::optional<TypeGrammar>& prev, const TypeGrammar& cand);

TypeGrammar widen_functor(const TypeGrammar& t);
TypeGrammar widen_jungle(const TypeGrammar& t);
TypeGrammar widen_shorten(const TypeGrammar& t);
TypeGrammar widen_rshorten(const TypeGrammar& t);
/// Throws Error if k < 1.
TypeGrammar widen_depthk(const TypeGrammar& t, int k);
TypeGrammar widen_clash(const TypeGrammar& prev, const TypeGrammar& next);

}  // namespace regtype
