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

#include <chrono>
#include <filesystem>

#include "doctest.h"
#include "oracles.hpp"
#include "regtype/analyzer.hpp"
#include "regtype/grammar_text.hpp"
#include "regtype/lattice.hpp"

using namespace regtype;

namespace {

const WideningKind kKinds[] = {WideningKind::functor, WideningKind::jungle, WideningKind::shorten,
                               WideningKind::rshorten, WideningKind::depthk, WideningKind::clash,
                               WideningKind::structural};

Program corpus(const std::string& name) { return load_program(std::string(REGTYPE_CORPUS_DIR) + "/" + name); }

AnalysisResult run(const Program& p, WideningKind kind, std::vector<PredicateKey> entries = {}) {
  AnalysisOptions o;
  o.kind = kind;
  o.entries = std::move(entries);
  return analyze(p, o);
}

PredicateSummary summary_of(const Program& p, const AnalysisResult& r, const PredicateKey& k) {
  for (auto& s : summarize(p, r)) {
    if (s.pred == k) return s;
  }
  FAIL("no summary for " << to_string(k));
  return {};
}

TypeGrammar success(const Program& p, WideningKind kind, const PredicateKey& k, std::size_t arg = 0) {
  const auto r = run(p, kind, {k});
  return summary_of(p, r, k).success.at(arg);
}

}  // namespace

TEST_SUITE("analyzer") {
  TEST_CASE("lists of lists") {
    const auto p = corpus("list_of_lists.pl");
    const PredicateKey ll{"list_of_lists", 1};
    CHECK(equiv(success(p, WideningKind::structural, ll), parse_type("T -> [] | .(L,T); L -> [] | .(num,L)")));
    CHECK(equiv(success(p, WideningKind::functor, ll), parse_type("T -> [] | num | .(T,T)")));
  }

  TEST_CASE("sorted lists") {
    const auto p = corpus("sorted.pl");
    const PredicateKey sorted{"sorted", 1};
    const auto st = success(p, WideningKind::structural, sorted);
    const auto sh = success(p, WideningKind::shorten, sorted);
    const auto cl = success(p, WideningKind::clash, sorted);
    CHECK(equiv(st, parse_type("T3 -> [] | .(any,T1); T1 -> [] | .(num,T1)")));
    CHECK(equiv(sh, parse_type("T6 -> [] | .(any,T6)")));
    CHECK(includes(st, sh));
    CHECK_FALSE(includes(sh, st));
    CHECK(includes(st, cl));
    CHECK(includes(cl, sh));
  }

  // Clash sees the element lists while they are still growing and folds
  // them into the outer list, so it only beats shortening on sorted.
  TEST_CASE("precision order on lists of lists") {
    const auto p = corpus("list_of_lists.pl");
    const PredicateKey ll{"list_of_lists", 1};
    const auto st = success(p, WideningKind::structural, ll);
    const auto cl = success(p, WideningKind::clash, ll);
    const auto sh = success(p, WideningKind::shorten, ll);
    CHECK(includes(st, cl));
    CHECK(includes(st, sh));
    CHECK_FALSE(includes(sh, st));
  }

  TEST_CASE("the counter guard stops the p/q program") {
    const auto p = corpus("pq.pl");
    AnalysisOptions o;
    o.kind = WideningKind::structural;
    o.widen_bound = 4;
    const auto start = std::chrono::steady_clock::now();
    const auto r = analyze(p, o);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    CHECK(elapsed < std::chrono::seconds(5));
    const auto s = summary_of(p, r, {"p", 1});
    const Term fa = Term::make("f", {Term::atom("a")});
    CHECK(member(fa, s.call[0]));
    CHECK(member(Term::make("f", {fa}), s.call[0]));
    CHECK(member(Term::make("f", {Term::make("f", {fa})}), s.call[0]));
  }

  TEST_CASE("bound 0 behaves like shortening") {
    const auto p = corpus("sorted.pl");
    AnalysisOptions o;
    o.kind = WideningKind::structural;
    o.widen_bound = 0;
    const auto r = analyze(p, o);
    CHECK(equiv(summary_of(p, r, {"sorted", 1}).success[0], parse_type("T -> [] | .(any,T)")));
  }

  TEST_CASE("clause level transfer") {
    const auto p = parse_program("num_list([]).\nn(N) :- number(N).\nb(N) :- N = [], number(N).\nle(X, Y) :- X =< Y.\n");
    const auto r = run(p, WideningKind::structural, {{"num_list", 1}, {"n", 1}, {"b", 1}, {"le", 2}});
    CHECK(summary_of(p, r, {"num_list", 1}).success[0] == parse_type("[]"));
    CHECK(summary_of(p, r, {"n", 1}).success[0] == TypeGrammar::num());
    const auto b = summary_of(p, r, {"b", 1});
    CHECK(b.reached);
    CHECK_FALSE(b.succeeds);
    const auto le = summary_of(p, r, {"le", 2});
    CHECK(le.success[0] == TypeGrammar::num());
    CHECK(le.success[1] == TypeGrammar::num());
  }

  TEST_CASE("errors") {
    const auto p = parse_program("p(X) :- q(X).\nr(X) :- X is 1 + 2.\n");
    CHECK_THROWS_AS(run(p, WideningKind::structural, {{"p", 1}}), AnalysisError);
    CHECK_THROWS_AS(run(p, WideningKind::structural, {{"r", 1}}), AnalysisError);
    // A bad entry is a usage error rather than an analysis failure.
    CHECK_THROWS_WITH_AS(run(p, WideningKind::structural, {{"missing", 2}}), "entry predicate missing/2 is not defined",
                         Error);
    try {
      run(p, WideningKind::structural, {{"missing", 2}});
    } catch (const AnalysisError&) {
      FAIL("unexpected AnalysisError");
    } catch (const Error&) {
    }
    AnalysisOptions o;
    o.permissive = true;
    o.entries = {{"r", 1}};
    const auto r = analyze(p, o);
    CHECK_FALSE(r.warnings.empty());
  }

  TEST_CASE("default entries") {
    CHECK(default_entries(corpus("append.pl")) == std::vector<PredicateKey>{{"main", 0}});
    CHECK(default_entries(corpus("list_of_lists.pl")) == std::vector<PredicateKey>{{"list_of_lists", 1}});
    const auto rec = parse_program("a :- b.\nb :- a.\n");
    CHECK(default_entries(rec).size() == 2);
  }

  TEST_CASE("every kind terminates on the corpus") {
    for (const auto& entry : std::filesystem::directory_iterator(REGTYPE_CORPUS_DIR)) {
      const auto p = load_program(entry.path().string());
      for (auto kind : kKinds) {
        CAPTURE(entry.path().filename().string());
        CAPTURE(to_string(kind));
        const auto r = run(p, kind);
        CHECK(r.stats.iterations > 0);
        CHECK(r.stats.table_size == r.variants.size());
      }
    }
  }

  // Depth-bounded resolution from each entry with unbound arguments; every
  // successful call instance must lie in the inferred success types.
  TEST_CASE("inferred successes cover concrete successes") {
    long observed = 0;
    int counterexamples = 0;
    for (const auto& entry : std::filesystem::directory_iterator(REGTYPE_CORPUS_DIR)) {
      const auto p = load_program(entry.path().string());
      for (auto kind : kKinds) {
        const auto r = run(p, kind);
        const auto summaries = summarize(p, r);
        auto check = [&](const Term& goal) {
          ++observed;
          const auto key = key_of(goal);
          for (const auto& s : summaries) {
            if (!(s.pred == key)) continue;
            for (std::size_t i = 0; i < key.arity; ++i) {
              if (!member(goal.args()[i], s.success[i])) {
                ++counterexamples;
                MESSAGE(entry.path().filename().string() << " " << to_string(kind) << ": " << to_string(goal)
                                                         << " arg " << i << " not in "
                                                         << format_type(s.success[i]));
              }
            }
          }
        };
        for (const auto& e : r.entries) {
          std::vector<Term> args;
          for (std::size_t i = 0; i < e.arity; ++i) args.push_back(Term::var(static_cast<VarId>(500000 + i)));
          oracle::Interpreter interp(p, 6, check);
          interp.run(args.empty() ? Term::atom(e.name) : Term::make(e.name, args));
        }
      }
    }
    CHECK(observed > 100);
    CHECK(counterexamples == 0);
  }
}
