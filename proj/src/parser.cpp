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

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "regtype/program.hpp"

namespace regtype {

std::string to_string(const PredicateKey& k) { return k.name + "/" + std::to_string(k.arity); }

PredicateKey key_of(const Term& goal) {
  if (!goal.is_compound()) throw Error("not a callable term: " + to_string(goal));
  return {goal.functor().name, goal.functor().arity};
}

BuiltinSupport builtin_support(const PredicateKey& k) {
  static const std::set<PredicateKey> supported = {{"number", 1}, {"=<", 2}, {"=", 2}, {"true", 0}};
  static const std::set<PredicateKey> recognized = {
      {"<", 2},      {">", 2},       {">=", 2},     {"=:=", 2},   {"=\\=", 2},  {"\\=", 2},
      {"==", 2},     {"\\==", 2},    {"is", 2},     {"@<", 2},    {"@>", 2},    {"@=<", 2},
      {"@>=", 2},    {"atom", 1},    {"integer", 1}, {"float", 1}, {"atomic", 1}, {"var", 1},
      {"nonvar", 1}, {"compound", 1}, {"write", 1},  {"nl", 0},    {"fail", 0},  {"false", 0},
      {"!", 0},      {"functor", 3}, {"arg", 3},    {"=..", 2},
  };
  if (supported.contains(k)) return BuiltinSupport::supported;
  if (recognized.contains(k)) return BuiltinSupport::unsupported;
  return BuiltinSupport::none;
}

std::vector<VarId> Clause::variables() const {
  std::vector<VarId> out;
  for (const auto& [v, name] : var_names) out.push_back(v);
  return out;
}

const std::vector<Clause>* Program::find(const PredicateKey& k) const {
  auto it = predicates.find(k);
  return it == predicates.end() ? nullptr : &it->second;
}

std::size_t Program::clause_count() const {
  std::size_t n = 0;
  for (const auto& [k, cs] : predicates) n += cs.size();
  return n;
}

namespace {

constexpr std::string_view kSymbolChars = "+-*/\\^<>=~:.?@#&$";

bool is_symbol_char(char c) { return kSymbolChars.find(c) != std::string_view::npos; }

enum class Tok { var, atom, quoted, number, punct, end, eof };

struct Token {
  Tok kind;
  std::string text;
  double value = 0;
  int line = 1;
  int column = 1;
  bool layout_before = false;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    const bool layout = skip_layout();
    Token t{Tok::eof, "", 0, line_, column_, layout};
    if (i_ >= s_.size()) return t;
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::number;
      t.text = number_text();
      t.value = std::stod(t.text);
    } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::var;
      t.text = word();
    } else if (std::islower(static_cast<unsigned char>(c))) {
      t.kind = Tok::atom;
      t.text = word();
    } else if (c == '\'') {
      t.kind = Tok::quoted;
      t.text = quoted();
    } else if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') {
      t.kind = Tok::punct;
      t.text = std::string(1, c);
      advance();
    } else if (c == '!') {
      t.kind = Tok::atom;
      t.text = "!";
      advance();
    } else if (c == '.' && (i_ + 1 >= s_.size() || std::isspace(static_cast<unsigned char>(s_[i_ + 1])) ||
                            s_[i_ + 1] == '%')) {
      t.kind = Tok::end;
      t.text = ".";
      advance();
    } else if (is_symbol_char(c)) {
      t.kind = Tok::atom;
      while (i_ < s_.size() && is_symbol_char(s_[i_])) {
        t.text += s_[i_];
        advance();
      }
    } else if (c == ';') {
      throw ParseError("disjunction is not supported", line_, column_);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
    }
    return t;
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++i_;
  }

  bool skip_layout() {
    bool any = false;
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        advance();
      } else if (s_[i_] == '%') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (s_[i_] == '/' && i_ + 1 < s_.size() && s_[i_ + 1] == '*') {
        const int line = line_;
        const int column = column_;
        advance();
        advance();
        while (i_ + 1 < s_.size() && !(s_[i_] == '*' && s_[i_ + 1] == '/')) advance();
        if (i_ + 1 >= s_.size()) throw ParseError("unterminated comment", line, column);
        advance();
        advance();
      } else {
        break;
      }
      any = true;
    }
    return any;
  }

  std::string word() {
    std::string out;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
      out += s_[i_];
      advance();
    }
    return out;
  }

  std::string number_text() {
    std::string out;
    auto digits = [&] {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        out += s_[i_];
        advance();
      }
    };
    digits();
    if (i_ + 1 < s_.size() && s_[i_] == '.' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
      out += '.';
      advance();
      digits();
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
      if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        while (i_ < j) {
          out += s_[i_];
          advance();
        }
        digits();
      }
    }
    return out;
  }

  std::string quoted() {
    const int line = line_;
    const int column = column_;
    advance();
    std::string out;
    for (;;) {
      if (i_ >= s_.size()) throw ParseError("unterminated quoted atom", line, column);
      const char c = s_[i_];
      if (c == '\\' && i_ + 1 < s_.size()) {
        advance();
        const char e = s_[i_];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        advance();
      } else if (c == '\'') {
        advance();
        if (i_ < s_.size() && s_[i_] == '\'') {
          out += '\'';
          advance();
        } else {
          return out;
        }
      } else {
        out += c;
        advance();
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct OpInfo {
  int priority;
  bool left_assoc;  // yfx; otherwise xfx
};

const std::map<std::string, OpInfo>& infix_ops() {
  static const std::map<std::string, OpInfo> ops = {
      {"=", {700, false}},   {"\\=", {700, false}}, {"==", {700, false}},  {"\\==", {700, false}},
      {"<", {700, false}},   {">", {700, false}},   {"=<", {700, false}},  {">=", {700, false}},
      {"=:=", {700, false}}, {"=\\=", {700, false}}, {"is", {700, false}}, {"@<", {700, false}},
      {"@>", {700, false}},  {"@=<", {700, false}}, {"@>=", {700, false}}, {"=..", {700, false}},
      {"+", {500, true}},    {"-", {500, true}},    {"*", {400, true}},    {"/", {400, true}},
      {"//", {400, true}},   {"mod", {400, true}},
  };
  return ops;
}

class ProgramParser {
 public:
  explicit ProgramParser(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

  Program run() {
    while (tok_.kind != Tok::eof) clause();
    return std::move(program_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.column); }

  void shift() { tok_ = lex_.next(); }

  bool at_atom(std::string_view name) const {
    return (tok_.kind == Tok::atom || tok_.kind == Tok::quoted) && tok_.text == name;
  }
  bool at_punct(std::string_view p) const { return tok_.kind == Tok::punct && tok_.text == p; }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    shift();
  }

  void clause() {
    vars_.clear();
    names_.clear();
    occurrences_.clear();
    const int line = tok_.line;
    if (tok_.kind == Tok::atom && tok_.text == ":-") {
      shift();
      body();
      if (tok_.kind != Tok::end) fail("expected '.' after directive");
      shift();
      program_.warnings.push_back(std::to_string(line) + ": directive ignored");
      return;
    }
    Clause c;
    c.line = line;
    c.head = expr(1199);
    if (c.head.is_var() || c.head.is_number()) throw ParseError("clause head must be callable", line, 1);
    if (at_atom(":-")) {
      shift();
      c.body = body();
    }
    if (tok_.kind != Tok::end) fail("expected '.' at end of clause");
    shift();
    c.var_names = names_;
    const PredicateKey key = key_of(c.head);
    for (const auto& [name, count] : occurrences_) {
      if (count == 1 && name[0] != '_') {
        program_.warnings.push_back(std::to_string(line) + ": singleton variable " + name + " in " + to_string(key));
      }
    }
    auto [it, inserted] = program_.predicates.try_emplace(key);
    if (inserted) program_.order.push_back(key);
    it->second.push_back(std::move(c));
  }

  std::vector<Literal> body() {
    std::vector<Literal> out;
    for (;;) {
      const int line = tok_.line;
      const int column = tok_.column;
      Term goal = expr(999);
      if (goal.is_var()) throw ParseError("variable goals are not supported", line, column);
      if (goal.is_number()) throw ParseError("a number is not a goal", line, column);
      out.push_back({std::move(goal), line});
      if (!at_punct(",")) break;
      shift();
    }
    return out;
  }

  Term expr(int max_prec) {
    Term left = primary();
    int left_prec = 0;
    for (;;) {
      if (tok_.kind != Tok::atom) break;
      auto it = infix_ops().find(tok_.text);
      if (it == infix_ops().end()) break;
      const OpInfo op = it->second;
      if (op.priority > max_prec) break;
      if (op.left_assoc ? left_prec > op.priority : left_prec >= op.priority) break;
      const std::string name = tok_.text;
      shift();
      Term right = expr(op.priority - 1);
      left = Term::make(name, {std::move(left), std::move(right)});
      left_prec = op.priority;
    }
    return left;
  }

  Term primary() {
    Token t = tok_;
    switch (t.kind) {
      case Tok::number:
        shift();
        return Term::number(t.value);
      case Tok::var:
        shift();
        return variable(t.text);
      case Tok::punct:
        if (t.text == "(") {
          shift();
          Term inner = expr(1199);
          expect_punct(")");
          return inner;
        }
        if (t.text == "[") {
          shift();
          return list();
        }
        fail("unexpected '" + t.text + "'");
      case Tok::atom:
      case Tok::quoted: {
        shift();
        if (t.kind == Tok::atom && t.text == "-" && tok_.kind == Tok::number && !tok_.layout_before) {
          const double v = tok_.value;
          shift();
          return Term::number(-v);
        }
        if (at_punct("(") && !tok_.layout_before) {
          shift();
          std::vector<Term> args{expr(999)};
          while (at_punct(",")) {
            shift();
            args.push_back(expr(999));
          }
          expect_punct(")");
          return Term::make(t.text, std::move(args));
        }
        if (t.kind == Tok::atom && t.text == "-" && starts_term()) return Term::make("-", {expr(200)});
        return Term::atom(t.text);
      }
      case Tok::end:
        fail("unexpected end of clause");
      case Tok::eof:
        fail("unexpected end of input");
    }
    fail("unexpected token");
  }

  bool starts_term() const {
    switch (tok_.kind) {
      case Tok::number:
      case Tok::var:
        return true;
      case Tok::punct:
        return tok_.text == "(" || tok_.text == "[";
      case Tok::atom:
        return !infix_ops().contains(tok_.text) && tok_.text != ":-";
      case Tok::quoted:
        return true;
      default:
        return false;
    }
  }

  Term list() {
    if (at_punct("]")) {
      shift();
      return Term::atom("[]");
    }
    std::vector<Term> items{expr(999)};
    while (at_punct(",")) {
      shift();
      items.push_back(expr(999));
    }
    std::optional<Term> tail;
    if (at_punct("|")) {
      shift();
      tail = expr(999);
    }
    expect_punct("]");
    return Term::list(std::move(items), std::move(tail));
  }

  Term variable(const std::string& name) {
    if (name == "_") {
      const VarId id = next_var_++;
      names_[id] = "_G" + std::to_string(id);
      return Term::var(id);
    }
    ++occurrences_[name];
    auto [it, inserted] = vars_.try_emplace(name, 0);
    if (inserted) {
      it->second = next_var_++;
      names_[it->second] = name;
    }
    return Term::var(it->second);
  }

  Lexer lex_;
  Token tok_;
  Program program_;
  std::map<std::string, VarId> vars_;
  std::map<VarId, std::string> names_;
  std::map<std::string, int> occurrences_;
  VarId next_var_ = 0;
};

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  std::string s = os.str();
  return s;
}

bool plain_atom(const std::string& name) {
  if (name.empty()) return false;
  if (name == "[]" || name == "!") return true;
  if (std::islower(static_cast<unsigned char>(name[0]))) {
    for (char c : name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
  }
  for (char c : name) {
    if (!is_symbol_char(c)) return false;
  }
  return name != ".";
}

std::string atom_text(const std::string& name) {
  if (plain_atom(name)) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

}  // namespace

Program parse_program(std::string_view text) { return ProgramParser(text).run(); }

Program load_program(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

std::string format_term(const Term& t, const std::map<VarId, std::string>& names) {
  if (t.is_var()) {
    auto it = names.find(t.var_id());
    return it != names.end() && it->second.rfind("_G", 0) != 0 ? it->second : "_";
  }
  if (t.is_number()) return format_number(std::get<Number>(t.node).value);
  const Functor& f = t.functor();
  if (f == cons_functor()) {
    std::string out = "[" + format_term(t.args()[0], names);
    const Term* rest = &t.args()[1];
    while (rest->is_compound() && rest->functor() == cons_functor()) {
      out += "," + format_term(rest->args()[0], names);
      rest = &rest->args()[1];
    }
    if (!(rest->is_compound() && rest->functor() == nil_functor())) out += "|" + format_term(*rest, names);
    return out + "]";
  }
  if (f.arity == 0) return atom_text(f.name);
  if (f.arity == 2 && infix_ops().contains(f.name)) {
    return "(" + format_term(t.args()[0], names) + " " + f.name + " " + format_term(t.args()[1], names) + ")";
  }
  std::string out = atom_text(f.name) + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ",";
    out += format_term(t.args()[i], names);
  }
  return out + ")";
}

std::string format_program(const Program& p) {
  std::string out;
  for (const auto& key : p.order) {
    for (const auto& c : p.predicates.at(key)) {
      out += format_term(c.head, c.var_names);
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        out += i == 0 ? " :-\n    " : ",\n    ";
        out += format_term(c.body[i].goal, c.var_names);
      }
      out += ".\n";
    }
  }
  return out;
}

}  // namespace regtype
