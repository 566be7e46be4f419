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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "regtype/grammar_text.hpp"
#include "regtype/lattice.hpp"
#include "regtype/report.hpp"

using namespace regtype;
using nlohmann::json;

namespace {

const WideningKind kKinds[] = {WideningKind::functor, WideningKind::jungle, WideningKind::shorten,
                               WideningKind::rshorten, WideningKind::depthk, WideningKind::clash,
                               WideningKind::structural};

std::string corpus_file(const std::string& name) { return std::string(REGTYPE_CORPUS_DIR) + "/" + name; }

std::string render(const std::string& file, WideningKind kind, OutputFormat fmt, bool simplify) {
  const auto p = load_program(corpus_file(file));
  AnalysisOptions o;
  o.kind = kind;
  return format_result(file, p, analyze(p, o), fmt, simplify);
}

// Rebuilds grammar text from the JSON type table: aliases become chain rules.
std::string definitions_text(const json& doc) {
  std::string out;
  for (const auto& t : doc["types"]) {
    std::string line = t["name"].get<std::string>() + " -> ";
    if (t.contains("alias")) {
      line += t["alias"].get<std::string>();
    } else {
      bool first = true;
      for (const auto& p : t["productions"]) {
        if (!first) line += " | ";
        line += p.get<std::string>();
        first = false;
      }
    }
    out += "; " + line;
  }
  return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("regtype_report_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("text output") {
    const auto out = render("sorted.pl", WideningKind::structural, OutputFormat::text, false);
    CHECK(out.find("% widening: struct") != std::string::npos);
    CHECK(out.find("success: sorted(T1)") != std::string::npos);
    CHECK(out.find("T1 -> [] | .(any,T2)\nT2 -> [] | .(num,T2)\n") != std::string::npos);
  }

  TEST_CASE("num lists print with one definition") {
    const auto p = parse_program("nl([]).\nnl([N|Ns]) :- number(N), nl(Ns).\n");
    AnalysisOptions o;
    const auto out = format_result("nl.pl", p, analyze(p, o), OutputFormat::text, false);
    CHECK(out.find("T1 -> [] | .(num,T1)") != std::string::npos);
  }

  TEST_CASE("failure prints as bottom") {
    const auto p = parse_program("f :- g(a).\ng(b).\n");
    AnalysisOptions o;
    const auto r = analyze(p, o);
    const auto text = format_result("f.pl", p, r, OutputFormat::text, false);
    CHECK(text.find("success: $bot") != std::string::npos);
    const auto doc = json::parse(format_result("f.pl", p, r, OutputFormat::json, false));
    CHECK(doc["predicates"][0]["success_types"].is_null());
  }

  TEST_CASE("simplify merges equivalent definitions") {
    const auto plain = render("append.pl", WideningKind::structural, OutputFormat::text, false);
    const auto simple = render("append.pl", WideningKind::structural, OutputFormat::text, true);
    CHECK(plain.find(" = T") == std::string::npos);
    CHECK(simple.find("T2 = T1") != std::string::npos);
    const auto doc = json::parse(render("append.pl", WideningKind::structural, OutputFormat::json, true));
    int aliases = 0;
    for (const auto& t : doc["types"]) aliases += t.contains("alias") ? 1 : 0;
    CHECK(aliases > 0);
  }

  TEST_CASE("output is deterministic") {
    for (const char* file : {"sorted.pl", "tree.pl", "append.pl"}) {
      for (auto fmt : {OutputFormat::text, OutputFormat::json}) {
        CHECK(render(file, WideningKind::structural, fmt, true) == render(file, WideningKind::structural, fmt, true));
        CHECK(render(file, WideningKind::clash, fmt, false) == render(file, WideningKind::clash, fmt, false));
      }
    }
  }

  TEST_CASE("json round trip") {
    for (const auto& entry : std::filesystem::directory_iterator(REGTYPE_CORPUS_DIR)) {
      const auto file = entry.path().filename().string();
      const auto text = render(file, WideningKind::structural, OutputFormat::json, true);
      CHECK(json::parse(text).dump(2) + "\n" == text);
    }
  }

  TEST_CASE("printed types parse back to the inferred types") {
    for (const auto& entry : std::filesystem::directory_iterator(REGTYPE_CORPUS_DIR)) {
      const auto file = entry.path().filename().string();
      const auto p = load_program(entry.path().string());
      for (auto kind : kKinds) {
        for (bool simplify : {false, true}) {
          AnalysisOptions o;
          o.kind = kind;
          const auto r = analyze(p, o);
          const auto doc = json::parse(format_result(file, p, r, OutputFormat::json, simplify));
          const auto defs = definitions_text(doc);
          const auto summaries = summarize(p, r);
          REQUIRE(summaries.size() == doc["predicates"].size());
          for (std::size_t i = 0; i < summaries.size(); ++i) {
            const auto& s = summaries[i];
            const auto& jp = doc["predicates"][i];
            CHECK(jp["name"] == s.pred.name);
            if (!s.reached) continue;
            for (std::size_t a = 0; a < s.call.size(); ++a) {
              const auto t = parse_type(jp["call_types"][a].get<std::string>() + defs);
              CHECK_MESSAGE(equiv(t, s.call[a]), file << " " << s.pred.name);
            }
            if (!s.succeeds) continue;
            for (std::size_t a = 0; a < s.success.size(); ++a) {
              const auto t = parse_type(jp["success_types"][a].get<std::string>() + defs);
              CHECK_MESSAGE(equiv(t, s.success[a]), file << " " << s.pred.name);
            }
          }
        }
      }
    }
  }

  TEST_CASE("bench over three programs") {
    const auto dir = scratch_dir("three");
    for (const char* f : {"list_of_lists.pl", "sorted.pl", "pq.pl"}) {
      std::filesystem::copy_file(corpus_file(f), dir / f);
    }
    const std::vector<WideningKind> kinds{WideningKind::shorten, WideningKind::clash, WideningKind::structural};
    const auto report = run_bench(dir.string(), kinds, AnalysisOptions{});
    CHECK(report.rows.size() == 9);
    for (const auto& row : report.rows) {
      CHECK(row.ok);
      CHECK(row.elapsed_ms > 0);
    }
    CHECK(never_worse(report, WideningKind::structural, WideningKind::shorten));
    CHECK(report.programs == std::vector<std::string>{"list_of_lists", "pq", "sorted"});
    const auto doc = json::parse(bench_to_json(report));
    CHECK(doc["rows"].size() == 9);
    CHECK(bench_to_text(report).find("struct") != std::string::npos);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("precision cells agree with inclusion") {
    const auto report = run_bench(REGTYPE_CORPUS_DIR, {WideningKind::shorten, WideningKind::structural},
                                  AnalysisOptions{});
    for (const auto& cell : report.precision) {
      const BenchRow* left = nullptr;
      const BenchRow* right = nullptr;
      for (const auto& row : report.rows) {
        if (row.program != cell.program) continue;
        if (row.kind == cell.left) left = &row;
        if (row.kind == cell.right) right = &row;
      }
      REQUIRE(left != nullptr);
      REQUIRE(right != nullptr);
      const BenchPredicate* lp = nullptr;
      const BenchPredicate* rp = nullptr;
      for (const auto& bp : left->predicates) lp = bp.pred == cell.pred ? &bp : lp;
      for (const auto& bp : right->predicates) rp = bp.pred == cell.pred ? &bp : rp;
      if (lp == nullptr || rp == nullptr) {
        CHECK(cell.relation == Precision::missing);
        continue;
      }
      bool le = true;
      bool ge = true;
      for (std::size_t i = 0; i < lp->success.size(); ++i) {
        le = le && includes(lp->success[i], rp->success[i]);
        ge = ge && includes(rp->success[i], lp->success[i]);
      }
      const Precision expected = le && ge ? Precision::equal
                                 : le     ? Precision::more
                                 : ge     ? Precision::less
                                          : Precision::incomparable;
      CHECK(cell.relation == expected);
    }
  }

  TEST_CASE("bench edge cases") {
    const auto empty = scratch_dir("empty");
    const auto report = run_bench(empty.string(), {WideningKind::shorten}, AnalysisOptions{});
    CHECK(report.rows.empty());
    CHECK(report.programs.empty());

    const auto bad = scratch_dir("bad");
    std::ofstream(bad / "broken.pl") << "p(a\n";
    std::ofstream(bad / "ok.pl") << "p(a).\n";
    const auto mixed = run_bench(bad.string(), {WideningKind::shorten}, AnalysisOptions{});
    REQUIRE(mixed.rows.size() == 2);
    CHECK_FALSE(mixed.rows[0].ok);
    CHECK_FALSE(mixed.rows[0].error.empty());
    CHECK(mixed.rows[1].ok);
    std::filesystem::remove_all(empty);
    std::filesystem::remove_all(bad);
  }
}
