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

// Goal-dependent call/success analysis.
//
// A table maps (predicate, call pattern) to a success pattern. Entries are
// processed from a FIFO worklist; when a success pattern grows, every entry
// whose clauses consulted it is scheduled again. Successes start at BOTTOM.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regtype/abstract_domain.hpp"
#include "regtype/program.hpp"
#include "regtype/widening.hpp"

namespace regtype {

struct AnalysisOptions {
  WideningKind kind = WideningKind::structural;
  int depth_k = 2;
  int widen_bound = 4;
  /// Unsupported builtins become the identity (with a warning).
  bool permissive = false;
  /// Empty: every predicate not called from another predicate's body.
  std::vector<PredicateKey> entries;
  long max_steps = 200000;
};

class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// One table entry. Patterns hold one descriptor per argument; a missing
/// success means no success was found.
struct Variant {
  PredicateKey pred;
  int index = 0;  // among the variants of pred
  std::vector<TypeEntry> call;
  std::optional<std::vector<TypeEntry>> success;
};

struct AnalysisStats {
  long iterations = 0;
  std::size_t table_size = 0;
  double elapsed_ms = 0;
};

struct AnalysisResult {
  WideningKind kind = WideningKind::structural;
  std::vector<PredicateKey> entries;
  std::vector<Variant> variants;  // creation order
  AnalysisStats stats;
  std::vector<std::string> warnings;
};

AnalysisResult analyze(const Program& program, const AnalysisOptions& options);

/// Predicates never called from the body of a different predicate, or all
/// predicates when there are none.
std::vector<PredicateKey> default_entries(const Program& program);

/// Per-predicate view: argument-wise lub over all variants.
struct PredicateSummary {
  PredicateKey pred;
  bool reached = false;
  bool succeeds = false;
  std::vector<TypeGrammar> call;
  std::vector<TypeGrammar> success;  // bottom when no variant succeeds
};

std::vector<PredicateSummary> summarize(const Program& program, const AnalysisResult& result);

}  // namespace regtype
