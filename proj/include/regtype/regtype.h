/* Copyright 2026 The regtype Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the regtype library.
 *
 * Every object is an opaque handle released by its own _free function.
 * Functions return an rt_status; on failure rt_last_error() describes the
 * problem (per thread, valid until the next call on that thread). Strings
 * returned through char** are released with rt_string_free.
 */

#ifndef REGTYPE_REGTYPE_H
#define REGTYPE_REGTYPE_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(REGTYPE_BUILDING)
#define RT_API __declspec(dllexport)
#else
#define RT_API __declspec(dllimport)
#endif
#else
#define RT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rt_program rt_program;
typedef struct rt_result rt_result;
typedef struct rt_type rt_type;

typedef enum {
  RT_OK = 0,
  RT_ERR_PARSE = 1,
  RT_ERR_ANALYSIS = 2,
  RT_ERR_INVALID_ARGUMENT = 3,
  RT_ERR_IO = 4,
  RT_ERR_INTERNAL = 5
} rt_status;

typedef enum {
  RT_WIDEN_FUNCTOR = 0,
  RT_WIDEN_JUNGLE = 1,
  RT_WIDEN_SHORTEN = 2,
  RT_WIDEN_RSHORTEN = 3,
  RT_WIDEN_DEPTHK = 4,
  RT_WIDEN_CLASH = 5,
  RT_WIDEN_STRUCT = 6
} rt_widening;

typedef enum { RT_FORMAT_TEXT = 0, RT_FORMAT_JSON = 1 } rt_format;

typedef struct {
  rt_widening widening;
  int depth_k;
  int widen_bound;
  int permissive;
  /* Comma-separated "name/arity" list, or NULL for the default entries. */
  const char* entry;
  long max_steps;
} rt_options;

/* Defaults: struct widening, k = 2, bound 4, strict builtins. */
RT_API void rt_options_init(rt_options* options);

RT_API const char* rt_last_error(void);
RT_API const char* rt_version(void);
RT_API void rt_string_free(char* s);

/* Accepts functor, jungle, shorten, rshorten, depthk, clash, struct. */
RT_API rt_status rt_widening_from_name(const char* name, rt_widening* out);
RT_API const char* rt_widening_name(rt_widening kind);

RT_API rt_status rt_program_parse(const char* text, rt_program** out);
/* RT_ERR_IO when the file cannot be read. */
RT_API rt_status rt_program_load(const char* path, rt_program** out);
RT_API size_t rt_program_clause_count(const rt_program* program);
/* Newline-separated reader warnings (possibly empty). */
RT_API rt_status rt_program_warnings(const rt_program* program, char** out);
RT_API void rt_program_free(rt_program* program);

RT_API rt_status rt_analyze(const rt_program* program, const rt_options* options, rt_result** out);
RT_API rt_status rt_result_render(const rt_result* result, const char* program_name, rt_format format,
                                  int simplify, char** out);
RT_API rt_status rt_result_stats(const rt_result* result, long* iterations, size_t* table_size,
                                 double* elapsed_ms);
/* Success type of argument `arg` (0-based) of name/arity, lub over all
   call variants; bottom when the predicate never succeeds. */
RT_API rt_status rt_result_success_type(const rt_result* result, const char* predicate, size_t arg,
                                        rt_type** out);
RT_API rt_status rt_result_call_type(const rt_result* result, const char* predicate, size_t arg,
                                     rt_type** out);
/* Newline-separated analysis warnings, e.g. builtins skipped in
   permissive mode. */
RT_API rt_status rt_result_warnings(const rt_result* result, char** out);
RT_API void rt_result_free(rt_result* result);

/* Runs every *.pl file of `dir` with all seven widenings. When
   struct_never_worse is not NULL it receives 1 iff struct is never less
   precise than shorten on any predicate. */
RT_API rt_status rt_bench(const char* dir, const rt_options* base, rt_format format, char** out,
                          int* struct_never_worse);

RT_API rt_status rt_type_parse(const char* text, rt_type** out);
RT_API rt_status rt_type_format(const rt_type* type, char** out);
RT_API rt_status rt_type_includes(const rt_type* sub, const rt_type* super, int* out);
RT_API rt_status rt_type_equiv(const rt_type* a, const rt_type* b, int* out);
RT_API rt_status rt_type_union(const rt_type* a, const rt_type* b, rt_type** out);
RT_API rt_status rt_type_intersect(const rt_type* a, const rt_type* b, rt_type** out);
/* `prev` may be NULL (first approximation). RT_WIDEN_STRUCT needs type
   descriptors and is rejected here. */
RT_API rt_status rt_type_widen(rt_widening kind, int depth_k, const rt_type* prev, const rt_type* cand,
                               rt_type** out);
/* `term` uses program syntax, e.g. "[1,2]" or "f(a,X)". */
RT_API rt_status rt_type_member(const rt_type* type, const char* term, int* out);
RT_API void rt_type_free(rt_type* type);

#ifdef __cplusplus
}
#endif

#endif /* REGTYPE_REGTYPE_H */
