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

#include "regtype/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>

#include <json.hpp>

#include "regtype/grammar_text.hpp"
#include "regtype/lattice.hpp"

namespace regtype {

namespace {

using nlohmann::json;

std::string atom_call(const PredicateKey& key, const std::vector<std::string>& args) {
  std::string out = format_atom(key.name);
  if (args.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i];
  }
  return out + ")";
}

struct Rendered {
  PredicateSummary summary;
  std::vector<std::string> call;
  std::vector<std::string> success;
};

struct RenderedTypes {
  std::vector<Rendered> preds;
  std::vector<TypePrinter::Definition> defs;
  std::map<std::string, std::string> alias;  // non-representative -> representative
};

RenderedTypes render(const Program& program, const AnalysisResult& result, bool simplify) {
  RenderedTypes out;
  TypePrinter printer;
  for (auto& s : summarize(program, result)) {
    Rendered r{std::move(s), {}, {}};
    if (r.summary.reached) {
      for (const auto& t : r.summary.call) r.call.push_back(printer.expression(t));
      if (r.summary.succeeds) {
        for (const auto& t : r.summary.success) r.success.push_back(printer.expression(t));
      }
    }
    out.preds.push_back(std::move(r));
  }
  out.defs = printer.definitions();
  if (simplify) {
    std::vector<NamedType> env;
    for (const auto& d : out.defs) env.push_back({d.name, d.type});
    for (const auto& [name, rep] : simplify_types(env).renaming) {
      if (name != rep) out.alias[name] = rep;
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> key_strings(const std::vector<PredicateKey>& keys) {
  std::vector<std::string> out;
  for (const auto& k : keys) out.push_back(to_string(k));
  return out;
}

Precision compare(const std::vector<TypeGrammar>& a, const std::vector<TypeGrammar>& b) {
  bool le = true;
  bool ge = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    le = le && includes(a[i], b[i]);
    ge = ge && includes(b[i], a[i]);
  }
  if (le && ge) return Precision::equal;
  if (le) return Precision::more;
  if (ge) return Precision::less;
  return Precision::incomparable;
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", ms);
  return buf;
}

}  // namespace

std::string format_result(const std::string& program_name, const Program& program, const AnalysisResult& result,
                          OutputFormat format, bool simplify) {
  const RenderedTypes r = render(program, result, simplify);
  if (format == OutputFormat::json) {
    json preds = json::array();
    for (const auto& p : r.preds) {
      json item = {{"name", p.summary.pred.name}, {"arity", p.summary.pred.arity}, {"reached", p.summary.reached}};
      item["call_types"] = p.call;
      item["success_types"] = p.summary.succeeds ? json(p.success) : json(nullptr);
      preds.push_back(std::move(item));
    }
    json types = json::array();
    for (const auto& d : r.defs) {
      json t = {{"name", d.name}, {"productions", d.alternatives}};
      if (auto it = r.alias.find(d.name); it != r.alias.end()) t["alias"] = it->second;
      types.push_back(std::move(t));
    }
    json doc = {
        {"program", program_name},
        {"widening", std::string(to_string(result.kind))},
        {"entry", key_strings(result.entries)},
        {"predicates", std::move(preds)},
        {"types", std::move(types)},
        {"stats", {{"iterations", result.stats.iterations}, {"table_size", result.stats.table_size}}},
    };
    if (!result.warnings.empty()) doc["warnings"] = result.warnings;
    return doc.dump(2) + "\n";
  }

  std::string out = "% program: " + program_name + "\n% widening: " + std::string(to_string(result.kind)) +
                    "\n% entry: " + join(key_strings(result.entries), ", ") + "\n";
  for (const auto& p : r.preds) {
    out += "\n" + to_string(p.summary.pred) + "\n";
    if (!p.summary.reached) {
      out += "  not reached\n";
      continue;
    }
    out += "  call:    " + atom_call(p.summary.pred, p.call) + "\n";
    out += "  success: " + (p.summary.succeeds ? atom_call(p.summary.pred, p.success) : std::string("$bot")) + "\n";
  }
  if (!r.defs.empty()) out += "\n";
  for (const auto& d : r.defs) {
    if (auto it = r.alias.find(d.name); it != r.alias.end()) {
      out += d.name + " = " + it->second + "\n";
    } else {
      out += d.name + " -> " + join(d.alternatives, " | ") + "\n";
    }
  }
  return out;
}

std::string_view to_string(Precision p) {
  switch (p) {
    case Precision::equal: return "=";
    case Precision::more: return "<";
    case Precision::less: return ">";
    case Precision::incomparable: return "<>";
    case Precision::missing: return "?";
  }
  return "?";
}

BenchReport run_bench(const std::string& dir, const std::vector<WideningKind>& kinds, const AnalysisOptions& base) {
  namespace fs = std::filesystem;
  const auto start = std::chrono::steady_clock::now();
  BenchReport report;
  report.kinds = kinds;
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pl") files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + dir + ": " + ec.message());
  std::sort(files.begin(), files.end());

  for (const auto& file : files) {
    const std::string name = file.stem().string();
    report.programs.push_back(name);
    std::optional<Program> program;
    std::string load_error;
    try {
      program = load_program(file.string());
    } catch (const Error& e) {
      load_error = e.what();
    }
    std::vector<std::size_t> rows_here;
    for (WideningKind kind : kinds) {
      BenchRow row;
      row.program = name;
      row.kind = kind;
      if (!program) {
        row.error = load_error;
      } else {
        AnalysisOptions options = base;
        options.kind = kind;
        try {
          const AnalysisResult result = analyze(*program, options);
          row.ok = true;
          row.elapsed_ms = result.stats.elapsed_ms;
          row.iterations = result.stats.iterations;
          row.table_size = result.stats.table_size;
          for (auto& s : summarize(*program, result)) row.predicates.push_back({s.pred, std::move(s.success)});
        } catch (const Error& e) {
          row.error = e.what();
        }
      }
      rows_here.push_back(report.rows.size());
      report.rows.push_back(std::move(row));
    }
    for (std::size_t a : rows_here) {
      for (std::size_t b : rows_here) {
        if (a == b) continue;
        const BenchRow& left = report.rows[a];
        const BenchRow& right = report.rows[b];
        if (!left.ok || !right.ok) continue;
        for (std::size_t i = 0; i < left.predicates.size(); ++i) {
          report.precision.push_back({name, left.predicates[i].pred, left.kind, right.kind,
                                      compare(left.predicates[i].success, right.predicates[i].success)});
        }
      }
    }
  }
  report.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool never_worse(const BenchReport& report, WideningKind left, WideningKind right) {
  for (const auto& c : report.precision) {
    if (c.left == left && c.right == right && c.relation != Precision::equal && c.relation != Precision::more) {
      return false;
    }
  }
  return true;
}

std::string bench_to_text(const BenchReport& report) {
  std::string out = "Analysis time (ms)\n";
  auto cell = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  std::size_t width = 8;
  for (const auto& p : report.programs) width = std::max(width, p.size());
  out += std::string(width, ' ');
  for (WideningKind k : report.kinds) out += cell(std::string(to_string(k)), 10);
  out += "\n";
  for (const auto& p : report.programs) {
    out += p + std::string(width - p.size(), ' ');
    for (WideningKind k : report.kinds) {
      auto it = std::find_if(report.rows.begin(), report.rows.end(),
                             [&](const BenchRow& r) { return r.program == p && r.kind == k; });
      out += cell(it != report.rows.end() && it->ok ? format_ms(it->elapsed_ms) : "error", 10);
    }
    out += "\n";
  }

  out += "\nPrecision against shorten (more / equal / less / incomparable predicates)\n";
  for (WideningKind k : report.kinds) {
    if (k == WideningKind::shorten) continue;
    int counts[4] = {0, 0, 0, 0};
    for (const auto& c : report.precision) {
      if (c.left != k || c.right != WideningKind::shorten) continue;
      switch (c.relation) {
        case Precision::more: ++counts[0]; break;
        case Precision::equal: ++counts[1]; break;
        case Precision::less: ++counts[2]; break;
        case Precision::incomparable: ++counts[3]; break;
        case Precision::missing: break;
      }
    }
    out += cell(std::string(to_string(k)), 10) + "  " + std::to_string(counts[0]) + " / " +
           std::to_string(counts[1]) + " / " + std::to_string(counts[2]) + " / " + std::to_string(counts[3]) + "\n";
  }
  for (const auto& r : report.rows) {
    if (!r.ok) out += "error: " + r.program + " [" + std::string(to_string(r.kind)) + "]: " + r.error + "\n";
  }
  out += "\ntotal: " + format_ms(report.total_ms) + " ms\n";
  return out;
}

std::string bench_to_json(const BenchReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json preds = json::array();
    for (const auto& p : r.predicates) {
      std::vector<std::string> types;
      for (const auto& t : p.success) types.push_back(format_type(t));
      preds.push_back({{"name", p.pred.name}, {"arity", p.pred.arity}, {"success_types", types}});
    }
    json row = {{"program", r.program},       {"widening", std::string(to_string(r.kind))},
                {"ok", r.ok},                 {"elapsed_ms", r.elapsed_ms},
                {"iterations", r.iterations}, {"table_size", r.table_size},
                {"predicates", std::move(preds)}};
    if (!r.ok) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  json matrix = json::array();
  for (const auto& c : report.precision) {
    matrix.push_back({{"program", c.program},
                      {"predicate", to_string(c.pred)},
                      {"left", std::string(to_string(c.left))},
                      {"right", std::string(to_string(c.right))},
                      {"relation", std::string(to_string(c.relation))}});
  }
  std::vector<std::string> kinds;
  for (WideningKind k : report.kinds) kinds.emplace_back(to_string(k));
  json doc = {{"kinds", kinds},
              {"programs", report.programs},
              {"rows", std::move(rows)},
              {"precision", std::move(matrix)},
              {"total_ms", report.total_ms}};
  return doc.dump(2) + "\n";
}

}  // namespace regtype
