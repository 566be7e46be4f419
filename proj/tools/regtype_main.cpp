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

// Command-line front end. Talks to the library only through regtype.h.

#include <cstdio>
#include <filesystem>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "regtype/regtype.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitInput = 2;

int exit_code_for(rt_status s) {
  switch (s) {
    case RT_OK: return kExitOk;
    case RT_ERR_ANALYSIS:
    case RT_ERR_INTERNAL: return kExitAnalysis;
    default: return kExitInput;
  }
}

int report(rt_status s, const std::string& context) {
  std::fprintf(stderr, "regtype: %s: %s\n", context.c_str(), rt_last_error());
  return exit_code_for(s);
}

void print_warnings(const std::string& file, char* text) {
  std::string_view rest(text);
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    const std::string line(rest.substr(0, nl));
    std::fprintf(stderr, "regtype: %s: warning: %s\n", file.c_str(), line.c_str());
    if (nl == std::string_view::npos) break;
    rest.remove_prefix(nl + 1);
  }
  rt_string_free(text);
}

void emit(char* text) {
  std::fputs(text, stdout);
  rt_string_free(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular-type inference for pure logic programs"};
  app.set_version_flag("--version", std::string(rt_version()));

  std::string file;
  std::string widening = "struct";
  int depth_k = 2;
  int widen_bound = 4;
  std::string entry;
  bool simplify = false;
  bool permissive = false;
  std::string bench_dir;
  std::string format = "text";
  long max_steps = 0;

  app.add_option("file", file, "Program to analyze");
  app.add_option("--widening,-w", widening, "functor|jungle|shorten|rshorten|depthk|clash|struct")
      ->capture_default_str();
  app.add_option("--depth-k", depth_k, "Depth bound for depthk widening")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--widen-bound", widen_bound, "Structural widenings per name before falling back")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--entry", entry, "Entry predicates as name/arity, comma separated");
  app.add_flag("--simplify", simplify, "Identify equivalent types in the output");
  app.add_flag("--permissive", permissive, "Treat unsupported builtins as true, with a warning");
  app.add_option("--bench", bench_dir, "Run every widening on each .pl file in DIR");
  app.add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--max-steps", max_steps, "Abort after this many fixpoint steps (0 keeps the default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  rt_options options;
  rt_options_init(&options);
  if (rt_status s = rt_widening_from_name(widening.c_str(), &options.widening); s != RT_OK) {
    return report(s, "--widening");
  }
  options.depth_k = depth_k;
  options.widen_bound = widen_bound;
  options.permissive = permissive ? 1 : 0;
  options.max_steps = max_steps;
  if (!entry.empty()) options.entry = entry.c_str();
  const rt_format fmt = format == "json" ? RT_FORMAT_JSON : RT_FORMAT_TEXT;

  if (!bench_dir.empty()) {
    char* out = nullptr;
    int never_worse = 0;
    if (rt_status s = rt_bench(bench_dir.c_str(), &options, fmt, &out, &never_worse); s != RT_OK) {
      return report(s, bench_dir);
    }
    emit(out);
    return kExitOk;
  }

  if (file.empty()) {
    std::fputs(app.help().c_str(), stderr);
    return kExitInput;
  }

  rt_program* program = nullptr;
  if (rt_status s = rt_program_load(file.c_str(), &program); s != RT_OK) return report(s, file);

  if (char* w = nullptr; rt_program_warnings(program, &w) == RT_OK) print_warnings(file, w);

  rt_result* result = nullptr;
  if (rt_status s = rt_analyze(program, &options, &result); s != RT_OK) {
    rt_program_free(program);
    return report(s, file);
  }
  if (char* w = nullptr; rt_result_warnings(result, &w) == RT_OK) {
    print_warnings(file, w);
  }
  const std::string name = std::filesystem::path(file).filename().string();
  char* out = nullptr;
  const rt_status s = rt_result_render(result, name.c_str(), fmt, simplify ? 1 : 0, &out);
  rt_result_free(result);
  rt_program_free(program);
  if (s != RT_OK) return report(s, file);
  emit(out);
  return kExitOk;
}
