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

#include "regtype/grammar_text.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace regtype {

namespace {

constexpr std::string_view kSymbolChars = "+-*/\\^<>=~:?@#&";

bool is_symbol_char(char c) { return kSymbolChars.find(c) != std::string_view::npos; }

enum class Tok { nonterminal, atom, quoted, open, close, comma, bar, arrow, sep, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int depth = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      if (depth == 0) out.push_back({Tok::sep, "\n", i});
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      ++depth;
      out.push_back({Tok::open, "(", i++});
    } else if (c == ')') {
      --depth;
      out.push_back({Tok::close, ")", i++});
    } else if (c == ',') {
      out.push_back({Tok::comma, ",", i++});
    } else if (c == '|') {
      out.push_back({Tok::bar, "|", i++});
    } else if (c == ';') {
      out.push_back({Tok::sep, ";", i++});
    } else if (c == '[' && i + 1 < s.size() && s[i + 1] == ']') {
      out.push_back({Tok::atom, "[]", i});
      i += 2;
    } else if (c == '.') {
      out.push_back({Tok::atom, ".", i++});
    } else if (c == '$') {
      const std::size_t start = i++;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      if (word != "$bot") throw GrammarSyntaxError("unknown reserved word '" + word + "'", start);
      out.push_back({Tok::atom, word, start});
    } else if (c == '\'') {
      const std::size_t start = i++;
      std::string text;
      for (;;) {
        if (i >= s.size()) throw GrammarSyntaxError("unterminated quoted atom", start);
        if (s[i] == '\\' && i + 1 < s.size()) {
          text += s[i + 1];
          i += 2;
        } else if (s[i] == '\'') {
          if (i + 1 < s.size() && s[i + 1] == '\'') {
            text += '\'';
            i += 2;
          } else {
            ++i;
            break;
          }
        } else {
          text += s[i++];
        }
      }
      out.push_back({Tok::quoted, text, start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      const bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
      out.push_back({upper ? Tok::nonterminal : Tok::atom, word, start});
    } else if (is_symbol_char(c)) {
      const std::size_t start = i;
      while (i < s.size() && is_symbol_char(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      out.push_back({word == "->" ? Tok::arrow : Tok::atom, word, start});
    } else {
      throw GrammarSyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  TypeGrammar parse() {
    skip_seps();
    NtRef root = kBottomRef;
    if (at(Tok::nonterminal) && peek(1).kind == Tok::arrow) {
      root = definition();
    } else {
      if (at(Tok::end)) throw GrammarSyntaxError("empty type", cur().offset);
      root = expr();
    }
    for (;;) {
      const bool had_sep = at(Tok::sep);
      skip_seps();
      if (at(Tok::end)) break;
      if (!had_sep) throw GrammarSyntaxError("expected ';' or newline before '" + cur().text + "'", cur().offset);
      definition();
    }
    for (const auto& [name, nt] : nonterminals_) {
      if (!defined_.contains(name)) throw GrammarSyntaxError("undefined nonterminal " + name, first_use_.at(name));
    }
    return builder_.build(root);
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return cur().kind == k; }
  void skip_seps() {
    while (at(Tok::sep)) ++pos_;
  }
  void expect(Tok k, const char* what) {
    if (!at(k)) throw GrammarSyntaxError(std::string("expected ") + what, cur().offset);
    ++pos_;
  }

  NtRef nonterminal(const std::string& name, std::size_t offset) {
    auto [it, inserted] = nonterminals_.try_emplace(name, kBottomRef);
    if (inserted) {
      it->second = builder_.add_nonterminal();
      first_use_[name] = offset;
    }
    return it->second;
  }

  NtRef definition() {
    const Token lhs_tok = cur();
    expect(Tok::nonterminal, "nonterminal");
    const NtRef lhs = nonterminal(lhs_tok.text, lhs_tok.offset);
    defined_.insert(lhs_tok.text);
    expect(Tok::arrow, "'->'");
    builder_.add_chain(lhs, expr());
    while (at(Tok::bar)) {
      ++pos_;
      builder_.add_chain(lhs, expr());
    }
    return lhs;
  }

  NtRef expr() {
    const Token t = cur();
    if (t.kind == Tok::nonterminal) {
      ++pos_;
      return nonterminal(t.text, t.offset);
    }
    if (t.kind == Tok::atom && t.text == "any") {
      ++pos_;
      return kAnyRef;
    }
    if (t.kind == Tok::atom && t.text == "num") {
      ++pos_;
      return kNumRef;
    }
    if (t.kind == Tok::atom && t.text == "$bot") {
      ++pos_;
      return kBottomRef;
    }
    if (t.kind != Tok::atom && t.kind != Tok::quoted) {
      throw GrammarSyntaxError("expected a type expression", t.offset);
    }
    ++pos_;
    std::vector<NtRef> args;
    if (at(Tok::open)) {
      ++pos_;
      args.push_back(expr());
      while (at(Tok::comma)) {
        ++pos_;
        args.push_back(expr());
      }
      expect(Tok::close, "')'");
    }
    const NtRef nt = builder_.add_nonterminal();
    const std::size_t arity = args.size();
    builder_.add_production(nt, Functor{t.text, arity}, std::move(args));
    return nt;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  GrammarBuilder builder_;
  std::map<std::string, NtRef> nonterminals_;
  std::map<std::string, std::size_t> first_use_;
  std::set<std::string> defined_;
};

std::vector<bool> inline_candidates(const TypeGrammar& g) {
  std::vector<bool> ok(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Node& nd = g.node(static_cast<NtRef>(i));
    if (nd.has_num || nd.rhs.size() != 1) continue;
    const auto reach = reachable_from(g, static_cast<NtRef>(i));
    ok[i] = std::find(reach.begin(), reach.end(), static_cast<NtRef>(i)) == reach.end();
  }
  return ok;
}

}  // namespace

TypeGrammar parse_type(std::string_view text) { return Parser(text).parse(); }

std::string format_atom(const std::string& name) {
  if (name == "[]" || name == ".") return name;
  if (!name.empty() && std::islower(static_cast<unsigned char>(name[0])) && name != "any" && name != "num" &&
      std::all_of(name.begin(), name.end(),
                  [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })) {
    return name;
  }
  if (!name.empty() && name != "->" && std::all_of(name.begin(), name.end(), is_symbol_char)) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

std::string TypePrinter::expression(const TypeGrammar& g) {
  std::map<NtRef, std::string> names;
  const auto inline_ok = inline_candidates(g);
  return node_expr(g, g.root(), names, inline_ok);
}

std::string TypePrinter::node_expr(const TypeGrammar& g, NtRef r, std::map<NtRef, std::string>& names,
                                   const std::vector<bool>& inline_ok) {
  if (r == kAnyRef) return "any";
  if (r == kNumRef) return "num";
  if (r == kBottomRef) return "$bot";
  if (!inline_ok[static_cast<std::size_t>(r)]) return name_for(g, r, names, inline_ok);
  const Production& p = g.node(r).rhs.front();
  std::string out = format_atom(p.functor.name);
  if (!p.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      if (i) out += ',';
      out += node_expr(g, p.args[i], names, inline_ok);
    }
    out += ')';
  }
  return out;
}

std::string TypePrinter::name_for(const TypeGrammar& g, NtRef r, std::map<NtRef, std::string>& names,
                                  const std::vector<bool>& inline_ok) {
  if (auto it = names.find(r); it != names.end()) return it->second;
  std::string name = prefix_ + std::to_string(++counter_);
  names.emplace(r, name);
  const std::size_t slot = defs_.size();
  defs_.push_back({name, {}, restrict(g, r)});

  // Atoms first, then num, then compound alternatives.
  const Node& nd = g.node(r);
  std::vector<std::string> atoms;
  std::vector<std::string> compounds;
  for (const auto& p : nd.rhs) {
    if (p.args.empty()) {
      atoms.push_back(format_atom(p.functor.name));
      continue;
    }
    std::string s = format_atom(p.functor.name) + "(";
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      if (i) s += ',';
      s += node_expr(g, p.args[i], names, inline_ok);
    }
    compounds.push_back(s + ")");
  }
  std::vector<std::string> alts = std::move(atoms);
  if (nd.has_num) alts.emplace_back("num");
  alts.insert(alts.end(), compounds.begin(), compounds.end());
  defs_[slot].alternatives = std::move(alts);
  return name;
}

std::vector<std::string> TypePrinter::definition_lines() const {
  std::vector<std::string> out;
  for (const auto& d : defs_) {
    std::string line = d.name + " -> ";
    for (std::size_t i = 0; i < d.alternatives.size(); ++i) {
      if (i) line += " | ";
      line += d.alternatives[i];
    }
    out.push_back(std::move(line));
  }
  return out;
}

std::string format_type(const TypeGrammar& g) {
  TypePrinter printer;
  const std::string head = printer.expression(g);
  const auto lines = printer.definition_lines();
  if (lines.empty()) return head;
  std::string out;
  if (head != printer.definitions().front().name) out = head + "; ";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += "; ";
    out += lines[i];
  }
  return out;
}

}  // namespace regtype
