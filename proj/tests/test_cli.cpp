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

// Runs the installed command-line tool as a subprocess.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out = dir / "regtype_cli_out.txt";
  const auto err = dir / "regtype_cli_err.txt";
  const std::string cmd = std::string("'") + REGTYPE_CLI + "' " + args + " >'" + out.string() + "' 2>'" +
                          err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string corpus(const char* name) { return std::string("'") + REGTYPE_CORPUS_DIR + "/" + name + "'"; }

std::filesystem::path write_temp(const char* name, const char* text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("analyzes a file") {
  const auto r = run(corpus("sorted.pl") + " --widening struct");
  CHECK(r.code == 0);
  CHECK(r.out.find("% program: sorted.pl\n") == 0);
  CHECK(r.out.find("  success: sorted(T1)\n") != std::string::npos);
  CHECK(r.out.find("T1 -> [] | .(any,T2)\nT2 -> [] | .(num,T2)\n") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("json output parses") {
  const auto r = run(corpus("list_of_lists.pl") + " --format json -w shorten");
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["widening"] == "shorten");
  CHECK(doc["program"] == "list_of_lists.pl");
  CHECK(doc["predicates"].size() == 2);
}

TEST_CASE("bounded structural widening on the queue program") {
  const auto r = run(corpus("pq.pl") + " --widening struct --widen-bound 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("success:") != std::string::npos);
}

TEST_CASE("simplify prints aliases") {
  const auto r = run(corpus("append.pl") + " --simplify");
  CHECK(r.code == 0);
  CHECK(r.out.find(" = T1\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("/nonexistent/file.pl").code == 2);
  CHECK(run("--no-such-flag x.pl").code == 2);
  CHECK(run("").code == 2);
  CHECK(run(corpus("sorted.pl") + " --widening bogus").code == 2);
  CHECK(run(corpus("sorted.pl") + " --depth-k 0").code == 2);
  CHECK(run(corpus("sorted.pl") + " --entry nothere/3").code == 2);

  const auto syntax = write_temp("regtype_cli_syntax.pl", "p(a\n");
  const auto bad = run("'" + syntax.string() + "'");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("regtype_cli_syntax.pl") != std::string::npos);

  const auto builtin = write_temp("regtype_cli_builtin.pl", "p(X) :- atom(X).\n");
  const auto failed = run("'" + builtin.string() + "'");
  CHECK(failed.code == 1);
  CHECK(failed.err.find("atom/1") != std::string::npos);
  const auto lenient = run("'" + builtin.string() + "' --permissive");
  CHECK(lenient.code == 0);
  CHECK(lenient.err.find("warning") != std::string::npos);
}

TEST_CASE("version and bench") {
  const auto v = run("--version");
  CHECK(v.code == 0);
  CHECK(v.out == "0.1.0\n");
  const auto b = run(std::string("--bench '") + REGTYPE_CORPUS_DIR + "'");
  CHECK(b.code == 0);
  CHECK(b.out.find("total:") != std::string::npos);
}
