// Copyright 2026 The qfab Authors
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

#include "qfab/ir/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qfab/common/error.hpp"

namespace qfab::ir {

namespace {

constexpr int kMaxMacroDepth = 16;

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Number, String, Punct, Arrow, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  double number = 0.0;
  bool integral = false;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        t.type = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        t.type = Tok::Ident;
        t.text = std::string(src_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        std::size_t start = pos_;
        bool integral = true;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
          integral = false;
          advance();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
          integral = false;
          advance();
          if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
          if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw ParseError("malformed number exponent", line_, col_);
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        }
        t.type = Tok::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
        t.number = std::strtod(t.text.c_str(), nullptr);
        t.integral = integral;
      } else if (c == '"') {
        advance();
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
        if (pos_ >= src_.size() || src_[pos_] != '"')
          throw ParseError("unterminated string", t.line, t.col);
        t.type = Tok::String;
        t.text = std::string(src_.substr(start, pos_ - start));
        advance();
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        t.type = Tok::Arrow;
        t.text = "->";
      } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
        advance();
        t.type = Tok::Punct;
        t.text = std::string(1, c);
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '*') {
        advance();
        advance();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= src_.size()) throw ParseError("unterminated comment", line_, col_);
        advance();
        advance();
        continue;
      }
      return;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// AST

struct Expr {
  enum class Type { Number, Ident, Neg, Binary, Call } type = Type::Number;
  double value = 0.0;
  std::string name;  // identifier or function name
  char op = 0;
  std::vector<Expr> kids;
  int line = 0;
  int col = 0;
};

struct Arg {
  std::string name;
  std::optional<int> index;
  int line = 0;
  int col = 0;
};

struct Call {
  std::string name;
  std::vector<Expr> params;
  std::vector<Arg> args;
  bool is_barrier = false;
  int line = 0;
  int col = 0;
};

struct Macro {
  std::vector<std::string> params;
  std::vector<std::string> wires;
  std::vector<Call> body;
};

double eval(const Expr& e, const std::unordered_map<std::string, double>& env) {
  switch (e.type) {
    case Expr::Type::Number:
      return e.value;
    case Expr::Type::Ident: {
      if (e.name == "pi") return std::numbers::pi;
      auto it = env.find(e.name);
      if (it == env.end()) throw ParseError("unknown identifier '" + e.name + "'", e.line, e.col);
      return it->second;
    }
    case Expr::Type::Neg:
      return -eval(e.kids[0], env);
    case Expr::Type::Binary: {
      const double a = eval(e.kids[0], env), b = eval(e.kids[1], env);
      switch (e.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
        default: break;
      }
      throw ParseError("bad operator", e.line, e.col);
    }
    case Expr::Type::Call: {
      const double a = eval(e.kids[0], env);
      if (e.name == "sin") return std::sin(a);
      if (e.name == "cos") return std::cos(a);
      if (e.name == "tan") return std::tan(a);
      if (e.name == "exp") return std::exp(a);
      if (e.name == "ln") return std::log(a);
      if (e.name == "sqrt") return std::sqrt(a);
      throw ParseError("unknown function '" + e.name + "'", e.line, e.col);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<std::string>* warnings)
      : toks_(std::move(toks)), warnings_(warnings) {}

  CircuitDag run() {
    if (peek_ident("OPENQASM")) {
      next();
      const Token& v = next();
      if (v.type != Tok::Number) throw error_at(v, "expected version number");
      expect(";");
    }
    while (cur().type != Tok::End) statement();
    if (!qreg_) throw ParseError("no quantum register declared", 1, 1);
    return CircuitDag(qreg_size_, std::move(out_));
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool peek_punct(const char* p) const {
    return cur().type == Tok::Punct && cur().text == p;
  }
  bool peek_ident(const char* s) const {
    return cur().type == Tok::Ident && cur().text == s;
  }
  static ParseError error_at(const Token& t, const std::string& msg) {
    return ParseError(msg, t.line, t.col);
  }
  void expect(const char* p) {
    if (!peek_punct(p))
      throw error_at(cur(), std::string("expected '") + p + "' but found '" +
                                (cur().type == Tok::End ? "end of input" : cur().text) + "'");
    next();
  }
  std::string ident(const char* what) {
    if (cur().type != Tok::Ident) throw error_at(cur(), std::string("expected ") + what);
    return next().text;
  }
  int integer(const char* what) {
    const Token& t = cur();
    if (t.type != Tok::Number || !t.integral) throw error_at(t, std::string("expected ") + what);
    next();
    return static_cast<int>(t.number);
  }

  void statement() {
    const Token& t = cur();
    if (t.type != Tok::Ident) throw error_at(t, "expected a statement");
    const std::string& kw = t.text;
    if (kw == "include") {
      next();
      if (cur().type != Tok::String) throw error_at(cur(), "expected file name");
      next();
      expect(";");
    } else if (kw == "qreg") {
      next();
      const Token& nt = cur();
      const std::string name = ident("register name");
      expect("[");
      const int size = integer("register size");
      expect("]");
      expect(";");
      if (qreg_) throw error_at(nt, "register redeclaration: '" + name + "' (only one qreg is supported)");
      if (size <= 0) throw error_at(nt, "register size must be positive");
      qreg_ = name;
      qreg_size_ = size;
    } else if (kw == "creg") {
      next();
      ident("register name");
      expect("[");
      integer("register size");
      expect("]");
      expect(";");
    } else if (kw == "gate") {
      gate_definition();
    } else if (kw == "measure") {
      next();
      parse_arg();
      if (cur().type != Tok::Arrow) throw error_at(cur(), "expected '->'");
      next();
      parse_arg();
      expect(";");
      if (warnings_)
        warnings_->push_back("line " + std::to_string(t.line) + ": measurement stripped");
    } else if (kw == "opaque" || kw == "reset" || kw == "if") {
      throw error_at(t, "unsupported statement '" + kw + "'");
    } else {
      Call c = parse_call();
      expand_top(c);
    }
  }

  Arg parse_arg() {
    Arg a;
    a.line = cur().line;
    a.col = cur().col;
    a.name = ident("qubit argument");
    if (peek_punct("[")) {
      next();
      a.index = integer("qubit index");
      expect("]");
    }
    return a;
  }

  Call parse_call() {
    Call c;
    c.line = cur().line;
    c.col = cur().col;
    c.name = ident("gate name");
    c.is_barrier = c.name == "barrier";
    if (peek_punct("(")) {
      next();
      if (!peek_punct(")")) {
        c.params.push_back(expr());
        while (peek_punct(",")) {
          next();
          c.params.push_back(expr());
        }
      }
      expect(")");
    }
    c.args.push_back(parse_arg());
    while (peek_punct(",")) {
      next();
      c.args.push_back(parse_arg());
    }
    expect(";");
    return c;
  }

  void gate_definition() {
    const Token& kwt = next();
    const std::string name = ident("gate name");
    Macro m;
    if (peek_punct("(")) {
      next();
      if (!peek_punct(")")) {
        m.params.push_back(ident("parameter name"));
        while (peek_punct(",")) {
          next();
          m.params.push_back(ident("parameter name"));
        }
      }
      expect(")");
    }
    m.wires.push_back(ident("qubit name"));
    while (peek_punct(",")) {
      next();
      m.wires.push_back(ident("qubit name"));
    }
    expect("{");
    while (!peek_punct("}")) {
      if (cur().type == Tok::End) throw error_at(cur(), "unterminated gate body");
      m.body.push_back(parse_call());
    }
    expect("}");
    // Natively understood names keep their builtin meaning.
    if (native_name(name)) return;
    if (macros_.count(name)) throw error_at(kwt, "gate redefinition: '" + name + "'");
    macros_.emplace(name, std::move(m));
  }

  Expr expr() { return additive(); }
  Expr additive() {
    Expr lhs = multiplicative();
    while (peek_punct("+") || peek_punct("-")) {
      const Token& t = next();
      Expr e;
      e.type = Expr::Type::Binary;
      e.op = t.text[0];
      e.line = t.line;
      e.col = t.col;
      e.kids = {std::move(lhs), multiplicative()};
      lhs = std::move(e);
    }
    return lhs;
  }
  Expr multiplicative() {
    Expr lhs = unary();
    while (peek_punct("*") || peek_punct("/")) {
      const Token& t = next();
      Expr e;
      e.type = Expr::Type::Binary;
      e.op = t.text[0];
      e.line = t.line;
      e.col = t.col;
      e.kids = {std::move(lhs), unary()};
      lhs = std::move(e);
    }
    return lhs;
  }
  Expr unary() {
    if (peek_punct("-")) {
      const Token& t = next();
      Expr e;
      e.type = Expr::Type::Neg;
      e.line = t.line;
      e.col = t.col;
      e.kids = {unary()};
      return e;
    }
    if (peek_punct("+")) {
      next();
      return unary();
    }
    return power();
  }
  Expr power() {
    Expr base = primary();
    if (peek_punct("^")) {
      const Token& t = next();
      Expr e;
      e.type = Expr::Type::Binary;
      e.op = '^';
      e.line = t.line;
      e.col = t.col;
      e.kids = {std::move(base), unary()};
      return e;
    }
    return base;
  }
  Expr primary() {
    const Token& t = cur();
    Expr e;
    e.line = t.line;
    e.col = t.col;
    if (t.type == Tok::Number) {
      next();
      e.type = Expr::Type::Number;
      e.value = t.number;
      return e;
    }
    if (t.type == Tok::Ident) {
      next();
      if (peek_punct("(")) {
        next();
        e.type = Expr::Type::Call;
        e.name = t.text;
        e.kids.push_back(expr());
        expect(")");
        return e;
      }
      e.type = Expr::Type::Ident;
      e.name = t.text;
      return e;
    }
    if (peek_punct("(")) {
      next();
      Expr inner = expr();
      expect(")");
      return inner;
    }
    throw error_at(t, "expected an expression");
  }

  // Resolution of gate names ------------------------------------------------

  struct Native {
    GateKind kind;
    int root = 0;
    bool mirrored = false;
  };

  static std::optional<Native> native_name(std::string_view name) {
    bool mirrored = false;
    if (name.starts_with("mirror_")) {
      mirrored = true;
      name.remove_prefix(7);
    }
    std::optional<Native> out;
    if (name.starts_with("riswap_")) {
      std::string_view digits = name.substr(7);
      if (digits.empty() || digits.size() > 6) return std::nullopt;
      for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      const int n = std::atoi(std::string(digits).c_str());
      if (n < 1) return std::nullopt;
      out = Native{GateKind::RootISwap, n, false};
    } else if (name == "siswap") {
      out = Native{GateKind::RootISwap, 2, false};
    } else if (name == "CX") {
      out = Native{GateKind::CX};
    } else if (name == "U") {
      out = Native{GateKind::U};
    } else if (auto k = kind_from_name(name); k && *k != GateKind::Barrier) {
      out = Native{*k};
    }
    if (!out) return std::nullopt;
    if (mirrored) {
      if (!is_two_qubit_kind(out->kind)) return std::nullopt;
      out->mirrored = true;
    }
    return out;
  }

  // Expansion ---------------------------------------------------------------

  using Env = std::unordered_map<std::string, double>;
  using WireEnv = std::unordered_map<std::string, int>;

  void expand_top(const Call& c) {
    if (!qreg_) throw ParseError("gate used before qreg declaration", c.line, c.col);
    // Broadcast whole-register arguments.
    int width = 1;
    bool any_register = false;
    for (const Arg& a : c.args) {
      if (a.name != *qreg_) throw ParseError("unknown register '" + a.name + "'", a.line, a.col);
      if (!a.index) {
        any_register = true;
        width = qreg_size_;
      } else if (*a.index < 0 || *a.index >= qreg_size_) {
        throw ParseError("qubit index " + std::to_string(*a.index) + " out of range", a.line, a.col);
      }
    }
    if (c.is_barrier) {
      std::vector<int> wires;
      if (any_register) {
        for (int i = 0; i < qreg_size_; ++i) wires.push_back(i);
      } else {
        for (const Arg& a : c.args) wires.push_back(*a.index);
      }
      emit_barrier(std::move(wires), c);
      return;
    }
    const Env env;
    for (int k = 0; k < width; ++k) {
      std::vector<int> wires;
      for (const Arg& a : c.args) wires.push_back(a.index ? *a.index : k);
      apply(c, env, wires, 0);
    }
  }

  void emit_barrier(std::vector<int> wires, const Call& c) {
    std::set<int> uniq(wires.begin(), wires.end());
    if (uniq.size() != wires.size()) throw ParseError("barrier repeats a qubit", c.line, c.col);
    out_.push_back(gates::barrier(std::move(wires)));
  }

  void apply(const Call& c, const Env& env, const std::vector<int>& wires, int depth) {
    std::vector<double> params;
    params.reserve(c.params.size());
    for (const Expr& e : c.params) params.push_back(eval(e, env));

    if (auto nat = native_name(c.name)) {
      const bool two = is_two_qubit_kind(nat->kind);
      if (wires.size() >= 3)
        throw ParseError(std::to_string(wires.size()) + "-qubit gate '" + c.name +
                             "' unsupported (gates on three or more qubits are rejected)",
                         c.line, c.col);
      if (wires.size() != (two ? 2u : 1u))
        throw ParseError("gate '" + c.name + "' applied to wrong number of qubits", c.line, c.col);
      if (params.size() != static_cast<std::size_t>(param_count(nat->kind)))
        throw ParseError("gate '" + c.name + "' expects " +
                             std::to_string(param_count(nat->kind)) + " parameter(s)",
                         c.line, c.col);
      if (wires.size() == 2 && wires[0] == wires[1])
        throw ParseError("gate '" + c.name + "' repeats a qubit", c.line, c.col);
      Gate g;
      g.kind = nat->kind;
      g.root = nat->root;
      g.mirrored = nat->mirrored;
      g.wires = wires;
      g.params = std::move(params);
      out_.push_back(std::move(g));
      return;
    }
    auto it = macros_.find(c.name);
    if (it == macros_.end()) {
      if (wires.size() >= 3)
        throw ParseError(std::to_string(wires.size()) + "-qubit gate '" + c.name +
                             "' unsupported (gates on three or more qubits are rejected)",
                         c.line, c.col);
      throw ParseError("unsupported gate '" + c.name + "'", c.line, c.col);
    }
    const Macro& m = it->second;
    if (depth >= kMaxMacroDepth)
      throw ParseError("gate macro nesting deeper than " + std::to_string(kMaxMacroDepth), c.line,
                       c.col);
    if (m.wires.size() != wires.size() || m.params.size() != params.size())
      throw ParseError("gate '" + c.name + "' called with wrong arity", c.line, c.col);
    {
      std::set<int> uniq(wires.begin(), wires.end());
      if (uniq.size() != wires.size())
        throw ParseError("gate '" + c.name + "' repeats a qubit", c.line, c.col);
    }
    Env inner;
    for (std::size_t i = 0; i < params.size(); ++i) inner[m.params[i]] = params[i];
    WireEnv wenv;
    for (std::size_t i = 0; i < wires.size(); ++i) wenv[m.wires[i]] = wires[i];
    for (const Call& sub : m.body) {
      std::vector<int> sw;
      for (const Arg& a : sub.args) {
        if (a.index) throw ParseError("indexed argument inside gate body", a.line, a.col);
        auto w = wenv.find(a.name);
        if (w == wenv.end()) throw ParseError("unknown qubit '" + a.name + "'", a.line, a.col);
        sw.push_back(w->second);
      }
      if (sub.is_barrier) {
        emit_barrier(std::move(sw), sub);
      } else {
        apply(sub, inner, sw, depth + 1);
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string>* warnings_;
  std::optional<std::string> qreg_;
  int qreg_size_ = 0;
  std::unordered_map<std::string, Macro> macros_;
  std::vector<Gate> out_;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string root_iswap_body(int n) {
  // n-th root of iSWAP = exp(i*phi*XX) exp(i*phi*YY) with phi = pi/(4n).
  const std::string angle = "-pi/" + std::to_string(2 * n);
  std::ostringstream os;
  os << "h a; h b; cx a,b; rz(" << angle << ") b; cx a,b; h a; h b; "
     << "sdg a; sdg b; h a; h b; cx a,b; rz(" << angle << ") b; cx a,b; h a; h b; s a; s b;";
  return os.str();
}

}  // namespace

CircuitDag parse_qasm(std::string_view text, std::vector<std::string>* warnings) {
  Lexer lex(text);
  Parser p(lex.run(), warnings);
  return p.run();
}

std::map<std::string, std::string> read_qasm_metadata(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    constexpr std::string_view prefix = "// qfab-";
    if (!line.starts_with(prefix)) continue;
    line.remove_prefix(prefix.size());
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    std::string key(line.substr(0, colon));
    std::string_view value = line.substr(colon + 1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\r')) value.remove_suffix(1);
    out[key] = std::string(value);
  }
  return out;
}

std::string serialize_qasm(const CircuitDag& dag, const std::map<std::string, std::string>& metadata) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  for (const auto& [k, v] : metadata) os << "// qfab-" << k << ": " << v << "\n";

  std::set<int> roots;
  std::set<std::string> mirrors;
  for (const Gate& g : dag.gates()) {
    if (g.kind == GateKind::Unitary)
      throw ValidationError("opaque unitary gates cannot be serialized to OpenQASM 2");
    if (g.kind == GateKind::RootISwap) roots.insert(g.root);
    if (g.mirrored) {
      Gate base = g;
      base.mirrored = false;
      mirrors.insert(base.qasm_name());
    }
  }
  for (int n : roots) {
    os << "// qfab: root_iswap riswap_" << n << " n=" << n << "\n";
    os << "gate riswap_" << n << " a,b { " << root_iswap_body(n) << " }\n";
  }
  for (const std::string& base : mirrors)
    os << "gate mirror_" << base << " a,b { " << base << " a,b; swap a,b; }\n";

  os << "qreg q[" << dag.num_qubits() << "];\n";
  for (const Gate& g : dag.gates()) {
    os << (g.is_barrier() ? std::string("barrier") : g.qasm_name());
    if (!g.params.empty()) {
      os << "(";
      for (std::size_t i = 0; i < g.params.size(); ++i)
        os << (i ? "," : "") << format_double(g.params[i]);
      os << ")";
    }
    os << " ";
    for (std::size_t i = 0; i < g.wires.size(); ++i)
      os << (i ? "," : "") << "q[" << g.wires[i] << "]";
    os << ";\n";
  }
  return os.str();
}

}  // namespace qfab::ir
