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

// Exercises the shared library through its C interface only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <memory>
#include <string>

#include "doctest.h"
#include "regtype/regtype.h"

namespace {

struct Free {
  void operator()(rt_program* p) const { rt_program_free(p); }
  void operator()(rt_result* r) const { rt_result_free(r); }
  void operator()(rt_type* t) const { rt_type_free(t); }
};
using Program = std::unique_ptr<rt_program, Free>;
using Result = std::unique_ptr<rt_result, Free>;
using Type = std::unique_ptr<rt_type, Free>;

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  rt_string_free(s);
  return out;
}

std::string corpus_file(const char* name) { return std::string(REGTYPE_CORPUS_DIR) + "/" + name; }

Type type(const char* text) {
  rt_type* t = nullptr;
  REQUIRE(rt_type_parse(text, &t) == RT_OK);
  return Type(t);
}

std::string show(const rt_type* t) {
  char* s = nullptr;
  REQUIRE(rt_type_format(t, &s) == RT_OK);
  return take(s);
}

bool member(const rt_type* t, const char* term) {
  int in = -1;
  REQUIRE(rt_type_member(t, term, &in) == RT_OK);
  return in == 1;
}

Result analyze(const char* file, rt_widening kind) {
  rt_program* p = nullptr;
  REQUIRE(rt_program_load(corpus_file(file).c_str(), &p) == RT_OK);
  Program prog(p);
  rt_options o;
  rt_options_init(&o);
  o.widening = kind;
  rt_result* r = nullptr;
  REQUIRE(rt_analyze(prog.get(), &o, &r) == RT_OK);
  return Result(r);
}

}  // namespace

TEST_CASE("version and widening names") {
  CHECK(std::string(rt_version()) == "0.1.0");
  for (int k = RT_WIDEN_FUNCTOR; k <= RT_WIDEN_STRUCT; ++k) {
    rt_widening back = RT_WIDEN_FUNCTOR;
    CHECK(rt_widening_from_name(rt_widening_name(static_cast<rt_widening>(k)), &back) == RT_OK);
    CHECK(back == k);
  }
  rt_widening w = RT_WIDEN_FUNCTOR;
  CHECK(rt_widening_from_name("bogus", &w) == RT_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(rt_last_error()) > 0);
}

TEST_CASE("options defaults") {
  rt_options o;
  std::memset(&o, 0xff, sizeof o);
  rt_options_init(&o);
  CHECK(o.widening == RT_WIDEN_STRUCT);
  CHECK(o.depth_k == 2);
  CHECK(o.widen_bound == 4);
  CHECK(o.permissive == 0);
  CHECK(o.entry == nullptr);
}

TEST_CASE("program parsing") {
  rt_program* p = nullptr;
  REQUIRE(rt_program_parse("app([],L,L).\napp([H|T],L,[H|R]) :- app(T,L,R).\n", &p) == RT_OK);
  Program prog(p);
  CHECK(rt_program_clause_count(prog.get()) == 2);
  char* w = nullptr;
  REQUIRE(rt_program_warnings(prog.get(), &w) == RT_OK);
  CHECK(take(w).empty());

  rt_program* bad = nullptr;
  CHECK(rt_program_parse("p(a", &bad) == RT_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(rt_last_error()).rfind("1:", 0) == 0);
  CHECK(rt_program_load("/nonexistent/x.pl", &bad) == RT_ERR_IO);
  CHECK(rt_program_parse(nullptr, &bad) == RT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("analysis through handles") {
  const auto r = analyze("sorted.pl", RT_WIDEN_STRUCT);
  rt_type* t = nullptr;
  REQUIRE(rt_result_success_type(r.get(), "sorted/1", 0, &t) == RT_OK);
  Type success(t);
  int eq = 0;
  REQUIRE(rt_type_equiv(success.get(), type("T1 -> [] | .(any,T2); T2 -> [] | .(num,T2)").get(), &eq) == RT_OK);
  CHECK(eq == 1);
  CHECK(member(success.get(), "[a,1,2]"));
  CHECK_FALSE(member(success.get(), "[a,b]"));

  REQUIRE(rt_result_call_type(r.get(), "sorted/1", 0, &t) == RT_OK);
  Type call(t);
  CHECK(show(call.get()) == "any");

  CHECK(rt_result_success_type(r.get(), "sorted/2", 0, &t) == RT_ERR_INVALID_ARGUMENT);
  CHECK(rt_result_success_type(r.get(), "sorted/1", 3, &t) == RT_ERR_INVALID_ARGUMENT);
  CHECK(rt_result_success_type(r.get(), "nonsense", 0, &t) == RT_ERR_INVALID_ARGUMENT);

  long iterations = 0;
  size_t table = 0;
  double ms = -1;
  REQUIRE(rt_result_stats(r.get(), &iterations, &table, &ms) == RT_OK);
  CHECK(iterations > 0);
  CHECK(table > 0);
  CHECK(ms >= 0);

  char* text = nullptr;
  REQUIRE(rt_result_render(r.get(), "sorted.pl", RT_FORMAT_TEXT, 0, &text) == RT_OK);
  CHECK(take(text).find("success: sorted(T1)") != std::string::npos);
  REQUIRE(rt_result_render(r.get(), "sorted.pl", RT_FORMAT_JSON, 1, &text) == RT_OK);
  CHECK(take(text).find("\"widening\": \"struct\"") != std::string::npos);
}

TEST_CASE("analysis errors") {
  rt_program* p = nullptr;
  REQUIRE(rt_program_parse("p(X) :- atom(X).\n", &p) == RT_OK);
  Program prog(p);
  rt_options o;
  rt_options_init(&o);
  rt_result* r = nullptr;
  CHECK(rt_analyze(prog.get(), &o, &r) == RT_ERR_ANALYSIS);
  CHECK(r == nullptr);
  CHECK(std::string(rt_last_error()).find("atom/1") != std::string::npos);

  o.permissive = 1;
  REQUIRE(rt_analyze(prog.get(), &o, &r) == RT_OK);
  char* w = nullptr;
  REQUIRE(rt_result_warnings(r, &w) == RT_OK);
  CHECK(take(w).find("atom/1") != std::string::npos);
  rt_result_free(r);

  o.permissive = 0;
  o.entry = "q/1";
  CHECK(rt_analyze(prog.get(), &o, &r) == RT_ERR_INVALID_ARGUMENT);
  o.entry = "p";
  CHECK(rt_analyze(prog.get(), &o, &r) == RT_ERR_INVALID_ARGUMENT);
  o.entry = nullptr;
  o.widening = RT_WIDEN_DEPTHK;
  o.depth_k = 0;
  CHECK(rt_analyze(prog.get(), &o, &r) == RT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("lattice operations") {
  const auto nums = type("T -> [] | .(num,T)");
  const auto anys = type("T -> [] | .(any,T)");
  int in = 0;
  REQUIRE(rt_type_includes(nums.get(), anys.get(), &in) == RT_OK);
  CHECK(in == 1);
  REQUIRE(rt_type_includes(anys.get(), nums.get(), &in) == RT_OK);
  CHECK(in == 0);

  rt_type* t = nullptr;
  REQUIRE(rt_type_union(nums.get(), type("a").get(), &t) == RT_OK);
  Type u(t);
  CHECK(member(u.get(), "a"));
  CHECK(member(u.get(), "[1]"));
  CHECK_FALSE(member(u.get(), "b"));

  REQUIRE(rt_type_intersect(anys.get(), type("T -> [] | .(a,T)").get(), &t) == RT_OK);
  Type i(t);
  CHECK(show(i.get()) == "T1 -> [] | .(a,T1)");

  CHECK(rt_type_parse("T -> ", &t) == RT_ERR_PARSE);
  CHECK(std::string(rt_last_error()).find("offset") != std::string::npos);
  CHECK(rt_type_member(nums.get(), "[1,", &in) == RT_ERR_PARSE);
}

TEST_CASE("widening through the C interface") {
  const auto prev = type("T -> [] | .(num,[])");
  const auto cand = type("T -> [] | .(num,[]) | .(num,.(num,[]))");
  rt_type* t = nullptr;
  REQUIRE(rt_type_widen(RT_WIDEN_SHORTEN, 2, prev.get(), cand.get(), &t) == RT_OK);
  Type w(t);
  int eq = 0;
  REQUIRE(rt_type_equiv(w.get(), type("T -> [] | .(num,T)").get(), &eq) == RT_OK);
  CHECK(eq == 1);
  REQUIRE(rt_type_widen(RT_WIDEN_FUNCTOR, 2, nullptr, cand.get(), &t) == RT_OK);
  rt_type_free(t);
  CHECK(rt_type_widen(RT_WIDEN_STRUCT, 2, prev.get(), cand.get(), &t) == RT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bench through the C interface") {
  rt_options o;
  rt_options_init(&o);
  char* out = nullptr;
  int never_worse = -1;
  REQUIRE(rt_bench(REGTYPE_CORPUS_DIR, &o, RT_FORMAT_TEXT, &out, &never_worse) == RT_OK);
  CHECK(take(out).find("total:") != std::string::npos);
  CHECK(never_worse == 1);
  CHECK(rt_bench("/nonexistent/dir", &o, RT_FORMAT_TEXT, &out, nullptr) == RT_ERR_IO);
}
