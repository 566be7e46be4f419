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

#include "regtype/regtype.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "regtype/analyzer.hpp"
#include "regtype/grammar_text.hpp"
#include "regtype/lattice.hpp"
#include "regtype/report.hpp"

struct rt_program {
  regtype::Program program;
};

struct rt_result {
  regtype::Program program;
  regtype::AnalysisResult result;
};

struct rt_type {
  regtype::TypeGrammar type;
};

namespace {

thread_local std::string last_error;

rt_status fail(rt_status status, const std::string& msg) {
  last_error = msg;
  return status;
}

template <typename F>
rt_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const regtype::ParseError& e) {
    return fail(RT_ERR_PARSE, e.what());
  } catch (const regtype::GrammarSyntaxError& e) {
    return fail(RT_ERR_PARSE, e.what());
  } catch (const regtype::IoError& e) {
    return fail(RT_ERR_IO, e.what());
  } catch (const regtype::AnalysisError& e) {
    return fail(RT_ERR_ANALYSIS, e.what());
  } catch (const regtype::Error& e) {
    return fail(RT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RT_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

regtype::WideningKind kind_of(rt_widening w) {
  switch (w) {
    case RT_WIDEN_FUNCTOR: return regtype::WideningKind::functor;
    case RT_WIDEN_JUNGLE: return regtype::WideningKind::jungle;
    case RT_WIDEN_SHORTEN: return regtype::WideningKind::shorten;
    case RT_WIDEN_RSHORTEN: return regtype::WideningKind::rshorten;
    case RT_WIDEN_DEPTHK: return regtype::WideningKind::depthk;
    case RT_WIDEN_CLASH: return regtype::WideningKind::clash;
    case RT_WIDEN_STRUCT: return regtype::WideningKind::structural;
  }
  throw regtype::Error("unknown widening " + std::to_string(static_cast<int>(w)));
}

regtype::PredicateKey parse_key(const std::string& text) {
  const auto slash = text.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
    throw regtype::Error("expected name/arity, got '" + text + "'");
  }
  const std::string digits = text.substr(slash + 1);
  if (digits.find_first_not_of("0123456789") != std::string::npos) {
    throw regtype::Error("bad arity in '" + text + "'");
  }
  return {text.substr(0, slash), static_cast<std::size_t>(std::stoul(digits))};
}

regtype::AnalysisOptions convert(const rt_options* o) {
  regtype::AnalysisOptions out;
  if (o == nullptr) return out;
  out.kind = kind_of(o->widening);
  out.depth_k = o->depth_k;
  out.widen_bound = o->widen_bound;
  out.permissive = o->permissive != 0;
  if (o->max_steps > 0) out.max_steps = o->max_steps;
  if (o->entry != nullptr) {
    std::string list = o->entry;
    std::size_t start = 0;
    while (start <= list.size()) {
      const auto comma = list.find(',', start);
      const std::string item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!item.empty()) out.entries.push_back(parse_key(item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

rt_status null_arg(const char* what) { return fail(RT_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

const regtype::PredicateSummary* find_summary(const std::vector<regtype::PredicateSummary>& all,
                                              const regtype::PredicateKey& key) {
  for (const auto& s : all) {
    if (s.pred == key) return &s;
  }
  throw regtype::Error("no predicate " + regtype::to_string(key));
}

}  // namespace

extern "C" {

void rt_options_init(rt_options* options) {
  if (options == nullptr) return;
  options->widening = RT_WIDEN_STRUCT;
  options->depth_k = 2;
  options->widen_bound = 4;
  options->permissive = 0;
  options->entry = nullptr;
  options->max_steps = 0;
}

const char* rt_last_error(void) { return last_error.c_str(); }

const char* rt_version(void) { return "0.1.0"; }

void rt_string_free(char* s) { std::free(s); }

rt_status rt_widening_from_name(const char* name, rt_widening* out) {
  if (name == nullptr) return null_arg("name");
  if (out == nullptr) return null_arg("out");
  auto kind = regtype::parse_widening_kind(name);
  if (!kind) return fail(RT_ERR_INVALID_ARGUMENT, std::string("unknown widening '") + name + "'");
  *out = static_cast<rt_widening>(static_cast<int>(*kind));
  return RT_OK;
}

const char* rt_widening_name(rt_widening kind) {
  try {
    return regtype::to_string(kind_of(kind)).data();
  } catch (const regtype::Error&) {
    return "unknown";
  }
}

rt_status rt_program_parse(const char* text, rt_program** out) {
  if (text == nullptr) return null_arg("text");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new rt_program{regtype::parse_program(text)};
    return RT_OK;
  });
}

rt_status rt_program_load(const char* path, rt_program** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new rt_program{regtype::load_program(path)};
    return RT_OK;
  });
}

size_t rt_program_clause_count(const rt_program* program) {
  return program == nullptr ? 0 : program->program.clause_count();
}

rt_status rt_program_warnings(const rt_program* program, char** out) {
  if (program == nullptr) return null_arg("program");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    std::string text;
    for (const auto& w : program->program.warnings) text += w + "\n";
    *out = copy_string(text);
    return RT_OK;
  });
}

void rt_program_free(rt_program* program) { delete program; }

rt_status rt_analyze(const rt_program* program, const rt_options* options, rt_result** out) {
  if (program == nullptr) return null_arg("program");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const auto opts = convert(options);
    auto result = regtype::analyze(program->program, opts);
    *out = new rt_result{program->program, std::move(result)};
    return RT_OK;
  });
}

rt_status rt_result_render(const rt_result* result, const char* program_name, rt_format format, int simplify,
                           char** out) {
  if (result == nullptr) return null_arg("result");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const auto fmt = format == RT_FORMAT_JSON ? regtype::OutputFormat::json : regtype::OutputFormat::text;
    *out = copy_string(regtype::format_result(program_name ? program_name : "", result->program, result->result,
                                              fmt, simplify != 0));
    return RT_OK;
  });
}

rt_status rt_result_stats(const rt_result* result, long* iterations, size_t* table_size, double* elapsed_ms) {
  if (result == nullptr) return null_arg("result");
  if (iterations) *iterations = result->result.stats.iterations;
  if (table_size) *table_size = result->result.stats.table_size;
  if (elapsed_ms) *elapsed_ms = result->result.stats.elapsed_ms;
  return RT_OK;
}

rt_status rt_result_success_type(const rt_result* result, const char* predicate, size_t arg, rt_type** out) {
  if (result == nullptr) return null_arg("result");
  if (predicate == nullptr) return null_arg("predicate");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const auto all = regtype::summarize(result->program, result->result);
    const auto* s = find_summary(all, parse_key(predicate));
    if (arg >= s->success.size()) throw regtype::Error("argument index out of range");
    *out = new rt_type{s->success[arg]};
    return RT_OK;
  });
}

rt_status rt_result_call_type(const rt_result* result, const char* predicate, size_t arg, rt_type** out) {
  if (result == nullptr) return null_arg("result");
  if (predicate == nullptr) return null_arg("predicate");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const auto all = regtype::summarize(result->program, result->result);
    const auto* s = find_summary(all, parse_key(predicate));
    if (arg >= s->call.size()) throw regtype::Error("argument index out of range");
    *out = new rt_type{s->call[arg]};
    return RT_OK;
  });
}

rt_status rt_result_warnings(const rt_result* result, char** out) {
  if (result == nullptr) return null_arg("result");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    std::string text;
    for (const auto& w : result->result.warnings) text += w + "\n";
    *out = copy_string(text);
    return RT_OK;
  });
}

void rt_result_free(rt_result* result) { delete result; }

rt_status rt_bench(const char* dir, const rt_options* base, rt_format format, char** out, int* struct_never_worse) {
  if (dir == nullptr) return null_arg("dir");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const std::vector<regtype::WideningKind> kinds = {
        regtype::WideningKind::functor, regtype::WideningKind::jungle,   regtype::WideningKind::shorten,
        regtype::WideningKind::rshorten, regtype::WideningKind::depthk, regtype::WideningKind::clash,
        regtype::WideningKind::structural,
    };
    const auto report = regtype::run_bench(dir, kinds, convert(base));
    *out = copy_string(format == RT_FORMAT_JSON ? regtype::bench_to_json(report) : regtype::bench_to_text(report));
    if (struct_never_worse != nullptr) {
      *struct_never_worse =
          regtype::never_worse(report, regtype::WideningKind::structural, regtype::WideningKind::shorten) ? 1 : 0;
    }
    return RT_OK;
  });
}

rt_status rt_type_parse(const char* text, rt_type** out) {
  if (text == nullptr) return null_arg("text");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new rt_type{regtype::parse_type(text)};
    return RT_OK;
  });
}

rt_status rt_type_format(const rt_type* type, char** out) {
  if (type == nullptr) return null_arg("type");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = copy_string(regtype::format_type(type->type));
    return RT_OK;
  });
}

rt_status rt_type_includes(const rt_type* sub, const rt_type* super, int* out) {
  if (sub == nullptr || super == nullptr) return null_arg("type");
  if (out == nullptr) return null_arg("out");
  *out = regtype::includes(sub->type, super->type) ? 1 : 0;
  return RT_OK;
}

rt_status rt_type_equiv(const rt_type* a, const rt_type* b, int* out) {
  if (a == nullptr || b == nullptr) return null_arg("type");
  if (out == nullptr) return null_arg("out");
  *out = regtype::equiv(a->type, b->type) ? 1 : 0;
  return RT_OK;
}

rt_status rt_type_union(const rt_type* a, const rt_type* b, rt_type** out) {
  if (a == nullptr || b == nullptr) return null_arg("type");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new rt_type{regtype::type_union(a->type, b->type)};
    return RT_OK;
  });
}

rt_status rt_type_intersect(const rt_type* a, const rt_type* b, rt_type** out) {
  if (a == nullptr || b == nullptr) return null_arg("type");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new rt_type{regtype::type_intersect(a->type, b->type)};
    return RT_OK;
  });
}

rt_status rt_type_widen(rt_widening kind, int depth_k, const rt_type* prev, const rt_type* cand, rt_type** out) {
  if (cand == nullptr) return null_arg("cand");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const regtype::WideningConfig config{kind_of(kind), depth_k};
    std::optional<regtype::TypeGrammar> p;
    if (prev != nullptr) p = prev->type;
    *out = new rt_type{regtype::widen(config, p, cand->type)};
    return RT_OK;
  });
}

rt_status rt_type_member(const rt_type* type, const char* term, int* out) {
  if (type == nullptr) return null_arg("type");
  if (term == nullptr) return null_arg("term");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    const auto program = regtype::parse_program(std::string("t(") + term + ").");
    if (program.order.size() != 1 || program.order.front().arity != 1) throw regtype::Error("not a single term");
    const auto& head = program.predicates.begin()->second.front().head;
    *out = regtype::member(head.args()[0], type->type) ? 1 : 0;
    return RT_OK;
  });
}

void rt_type_free(rt_type* type) { delete type; }

}  // extern "C"
