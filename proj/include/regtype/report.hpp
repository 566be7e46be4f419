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

// Rendering of analysis results and the benchmark harness.

#pragma once

#include <string>
#include <vector>

#include "regtype/analyzer.hpp"

namespace regtype {

enum class OutputFormat { text, json };

/// Deterministic rendering: predicates sorted, nonterminals T1, T2, ... in
/// first-use order. With `simplify`, equivalent definitions collapse onto
/// one representative and the others become alias lines `Tk = Tj`.
std::string format_result(const std::string& program_name, const Program& program, const AnalysisResult& result,
                          OutputFormat format, bool simplify);

/// Relation between two analyses of one predicate, by success inclusion.
enum class Precision { equal, more, less, incomparable, missing };

std::string_view to_string(Precision p);

struct BenchPredicate {
  PredicateKey pred;
  std::vector<TypeGrammar> success;
};

struct BenchRow {
  std::string program;
  WideningKind kind = WideningKind::structural;
  bool ok = false;
  std::string error;
  double elapsed_ms = 0;
  long iterations = 0;
  std::size_t table_size = 0;
  std::vector<BenchPredicate> predicates;
};

struct PrecisionCell {
  std::string program;
  PredicateKey pred;
  WideningKind left;
  WideningKind right;
  Precision relation;  // left relative to right
};

struct BenchReport {
  std::vector<WideningKind> kinds;
  std::vector<std::string> programs;
  std::vector<BenchRow> rows;
  std::vector<PrecisionCell> precision;
  double total_ms = 0;
};

/// Analyzes every `*.pl` file of `dir` (sorted by name) with each kind.
/// Failures are recorded per row; the run continues.
BenchReport run_bench(const std::string& dir, const std::vector<WideningKind>& kinds, const AnalysisOptions& base);

/// True iff `left` is never less precise than `right` on any predicate
/// analyzed successfully by both.
bool never_worse(const BenchReport& report, WideningKind left, WideningKind right);

std::string bench_to_text(const BenchReport& report);
std::string bench_to_json(const BenchReport& report);

}  // namespace regtype
