// Copyright 2026 The MIRAGE Transpiler Authors
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

#include "mirage/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "mirage/ansatz.hpp"
#include "mirage/errors.hpp"
#include "mirage/gates.hpp"

namespace mirage {

int QasmProgram::num_qubits() const {
  int n = 0;
  for (const auto& r : qregs) n += r.size;
  return n;
}

namespace {

enum class Tok { Ident, Number, String, Symbol, Arrow, Pragma, PragmaEnd, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double value = 0.0;
  bool integer = false;
  std::size_t line = 1;
  std::size_t col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space(out);
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        if (in_pragma_) out.push_back(Token{Tok::PragmaEnd, "", 0, false, line_, col_});
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          t.text += advance();
        t.kind = Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        lex_number(t);
      } else if (c == '"') {
        advance();
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') t.text += advance();
        if (pos_ >= src_.size() || src_[pos_] != '"')
          throw SyntaxError(t.line, t.col, "unterminated string");
        advance();
        t.kind = Tok::String;
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        t.kind = Tok::Arrow;
        t.text = "->";
      } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        advance();
        advance();
        t.kind = Tok::Symbol;
        t.text = "==";
      } else if (std::string_view(";,()[]{}+-*/^").find(c) != std::string_view::npos) {
        t.text = std::string(1, advance());
        t.kind = Tok::Symbol;
      } else {
        throw SyntaxError(t.line, t.col, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space(std::vector<Token>& out) {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n' && in_pragma_) {
        out.push_back(Token{Tok::PragmaEnd, "", 0, false, line_, col_});
        in_pragma_ = false;
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        constexpr std::string_view kTag = "// @unitary";
        if (!in_pragma_ && src_.substr(pos_, kTag.size()) == kTag) {
          out.push_back(Token{Tok::Pragma, "unitary", 0, false, line_, col_});
          for (std::size_t i = 0; i < kTag.size(); ++i) advance();
          in_pragma_ = true;
          continue;
        }
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        const std::size_t l = line_, co = col_;
        advance();
        advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) throw SyntaxError(l, co, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    bool integer = true;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      integer = false;
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      integer = false;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        throw SyntaxError(t.line, t.col, "malformed exponent");
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    t.kind = Tok::Number;
    t.integer = integer;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
    if (ec != std::errc()) throw SyntaxError(t.line, t.col, "bad number '" + t.text + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  bool in_pragma_ = false;
};

struct Expr {
  enum class Op { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Op op = Op::Num;
  double value = 0.0;
  std::string name;
  std::vector<std::shared_ptr<Expr>> args;
  std::size_t line = 0, col = 0;
};
using ExprPtr = std::shared_ptr<Expr>;
using Env = std::map<std::string, double, std::less<>>;

double eval(const Expr& e, const Env& env) {
  switch (e.op) {
    case Expr::Op::Num:
      return e.value;
    case Expr::Op::Var: {
      if (e.name == "pi") return kPi;
      const auto it = env.find(e.name);
      if (it == env.end()) throw SyntaxError(e.line, e.col, "unknown parameter '" + e.name + "'");
      return it->second;
    }
    case Expr::Op::Neg:
      return -eval(*e.args[0], env);
    case Expr::Op::Add:
      return eval(*e.args[0], env) + eval(*e.args[1], env);
    case Expr::Op::Sub:
      return eval(*e.args[0], env) - eval(*e.args[1], env);
    case Expr::Op::Mul:
      return eval(*e.args[0], env) * eval(*e.args[1], env);
    case Expr::Op::Div:
      return eval(*e.args[0], env) / eval(*e.args[1], env);
    case Expr::Op::Pow:
      return std::pow(eval(*e.args[0], env), eval(*e.args[1], env));
    case Expr::Op::Call: {
      const double x = eval(*e.args[0], env);
      if (e.name == "sin") return std::sin(x);
      if (e.name == "cos") return std::cos(x);
      if (e.name == "tan") return std::tan(x);
      if (e.name == "exp") return std::exp(x);
      if (e.name == "ln") return std::log(x);
      if (e.name == "sqrt") return std::sqrt(x);
      if (e.name == "asin") return std::asin(x);
      if (e.name == "acos") return std::acos(x);
      if (e.name == "atan") return std::atan(x);
      throw SyntaxError(e.line, e.col, "unknown function '" + e.name + "'");
    }
  }
  return 0.0;
}

struct Operand {
  std::string reg;
  std::optional<int> index;
  std::size_t line = 0, col = 0;
};

struct GateCall {
  std::string name;
  std::vector<ExprPtr> params;
  std::vector<Operand> args;
  std::size_t line = 0, col = 0;
};

struct GateDef {
  std::vector<std::string> params;
  std::vector<std::string> args;
  std::vector<GateCall> body;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  QasmProgram run() {
    if (peek().kind == Tok::Ident && peek().text == "OPENQASM") {
      next();
      const Token v = expect(Tok::Number, "version number");
      if (v.value < 2.0 || v.value >= 3.0)
        throw SyntaxError(v.line, v.col, "only OpenQASM 2 is supported");
      expect_symbol(";");
    }
    while (peek().kind != Tok::End) statement();
    return std::move(prog_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw SyntaxError(t.line, t.col, msg);
  }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
    return next();
  }

  void expect_symbol(const char* s) {
    if (peek().kind != Tok::Symbol || peek().text != s)
      fail(peek(), std::string("expected '") + s + "'");
    next();
  }

  bool accept_symbol(const char* s) {
    if (peek().kind == Tok::Symbol && peek().text == s) {
      next();
      return true;
    }
    return false;
  }

  int expect_int() {
    const Token t = expect(Tok::Number, "integer");
    if (!t.integer) fail(t, "expected integer");
    return static_cast<int>(t.value);
  }

  void statement() {
    const Token t = peek();
    if (t.kind == Tok::Pragma) return pragma();
    if (t.kind != Tok::Ident) fail(t, "expected statement");
    const std::string& kw = t.text;
    if (kw == "include") {
      next();
      expect(Tok::String, "file name");
      expect_symbol(";");
    } else if (kw == "qreg" || kw == "creg") {
      next();
      const Token name = expect(Tok::Ident, "register name");
      expect_symbol("[");
      const int size = expect_int();
      expect_symbol("]");
      expect_symbol(";");
      if (find_reg(prog_.qregs, name.text) || find_reg(prog_.cregs, name.text))
        fail(name, "register '" + name.text + "' redeclared");
      auto& regs = kw == "qreg" ? prog_.qregs : prog_.cregs;
      int offset = 0;
      for (const auto& r : regs) offset += r.size;
      regs.push_back({name.text, size, offset});
    } else if (kw == "gate") {
      gate_definition();
    } else if (kw == "opaque" || kw == "reset" || kw == "if") {
      throw Error(ErrorCode::UnsupportedGate, location(t) + "unsupported statement '" + kw + "'");
    } else if (kw == "barrier") {
      next();
      const std::vector<Operand> ops = operands();
      expect_symbol(";");
      QasmStatement s;
      s.kind = QasmStatement::Kind::Barrier;
      s.name = "barrier";
      s.line = t.line;
      for (const auto& o : ops)
        for (int q : resolve_all(o)) s.qubits.push_back(q);
      prog_.statements.push_back(std::move(s));
    } else if (kw == "measure") {
      next();
      const Operand q = operand();
      expect(Tok::Arrow, "'->'");
      const Operand c = operand();
      expect_symbol(";");
      const std::vector<int> qs = resolve_all(q);
      const std::vector<int> cs = resolve_all(c, /*classical=*/true);
      if (qs.size() != cs.size()) fail(t, "measure operand sizes differ");
      for (int qb : qs) {
        QasmStatement s;
        s.kind = QasmStatement::Kind::Measure;
        s.name = "measure";
        s.qubits = {qb};
        s.line = t.line;
        prog_.statements.push_back(std::move(s));
      }
    } else {
      GateCall call = gate_call();
      apply(call, Env{}, nullptr, 0);
    }
  }

  static std::string location(const Token& t) {
    return "line " + std::to_string(t.line) + ":" + std::to_string(t.col) + ": ";
  }

  static const QasmRegister* find_reg(const std::vector<QasmRegister>& regs,
                                      const std::string& name) {
    for (const auto& r : regs)
      if (r.name == name) return &r;
    return nullptr;
  }

  Operand operand() {
    const Token name = expect(Tok::Ident, "operand");
    Operand o{name.text, std::nullopt, name.line, name.col};
    if (accept_symbol("[")) {
      o.index = expect_int();
      expect_symbol("]");
    }
    return o;
  }

  std::vector<Operand> operands() {
    std::vector<Operand> out{operand()};
    while (accept_symbol(",")) out.push_back(operand());
    return out;
  }

  std::vector<int> resolve_all(const Operand& o, bool classical = false) const {
    const QasmRegister* r = find_reg(classical ? prog_.cregs : prog_.qregs, o.reg);
    if (!r) throw SyntaxError(o.line, o.col, "undeclared register '" + o.reg + "'");
    if (o.index) {
      if (*o.index < 0 || *o.index >= r->size)
        throw Error(ErrorCode::IndexOutOfRange,
                    "line " + std::to_string(o.line) + ":" + std::to_string(o.col) + ": " +
                        o.reg + "[" + std::to_string(*o.index) + "] out of range");
      return {r->offset + *o.index};
    }
    std::vector<int> out;
    for (int i = 0; i < r->size; ++i) out.push_back(r->offset + i);
    return out;
  }

  ExprPtr primary() {
    const Token t = next();
    auto e = std::make_shared<Expr>();
    e->line = t.line;
    e->col = t.col;
    if (t.kind == Tok::Number) {
      e->value = t.value;
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (accept_symbol("(")) {
        e->op = Expr::Op::Call;
        e->name = t.text;
        e->args.push_back(expression());
        expect_symbol(")");
        return e;
      }
      e->op = Expr::Op::Var;
      e->name = t.text;
      return e;
    }
    if (t.kind == Tok::Symbol && t.text == "(") {
      ExprPtr inner = expression();
      expect_symbol(")");
      return inner;
    }
    if (t.kind == Tok::Symbol && t.text == "-") {
      e->op = Expr::Op::Neg;
      e->args.push_back(unary());
      return e;
    }
    if (t.kind == Tok::Symbol && t.text == "+") return unary();
    fail(t, "expected expression");
  }

  ExprPtr binary(Expr::Op op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->line = l->line;
    e->col = l->col;
    e->args = {std::move(l), std::move(r)};
    return e;
  }

  // Right-associative power binds tighter than unary minus on its left.
  ExprPtr power() {
    ExprPtr base = primary();
    if (accept_symbol("^")) return binary(Expr::Op::Pow, base, unary());
    return base;
  }

  ExprPtr unary() { return power(); }

  ExprPtr term() {
    ExprPtr e = unary();
    while (true) {
      if (accept_symbol("*")) {
        e = binary(Expr::Op::Mul, e, unary());
      } else if (accept_symbol("/")) {
        e = binary(Expr::Op::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr expression() {
    ExprPtr e = term();
    while (true) {
      if (accept_symbol("+")) {
        e = binary(Expr::Op::Add, e, term());
      } else if (accept_symbol("-")) {
        e = binary(Expr::Op::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  GateCall gate_call() {
    const Token name = expect(Tok::Ident, "gate name");
    GateCall call;
    call.name = name.text == "U" ? "u3" : name.text == "CX" ? "cx" : name.text;
    call.line = name.line;
    call.col = name.col;
    if (accept_symbol("(")) {
      if (!accept_symbol(")")) {
        call.params.push_back(expression());
        while (accept_symbol(",")) call.params.push_back(expression());
        expect_symbol(")");
      }
    }
    call.args = operands();
    expect_symbol(";");
    return call;
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> out{expect(Tok::Ident, "identifier").text};
    while (accept_symbol(",")) out.push_back(expect(Tok::Ident, "identifier").text);
    return out;
  }

  void gate_definition() {
    next();
    const Token name = expect(Tok::Ident, "gate name");
    GateDef def;
    if (accept_symbol("(")) {
      if (!accept_symbol(")")) {
        def.params = ident_list();
        expect_symbol(")");
      }
    }
    def.args = ident_list();
    expect_symbol("{");
    while (!accept_symbol("}")) {
      if (peek().kind == Tok::End) fail(peek(), "unterminated gate body");
      if (peek().kind == Tok::Ident && peek().text == "barrier") {
        next();
        operands();
        expect_symbol(";");
        continue;
      }
      GateCall call = gate_call();
      for (const auto& a : call.args) {
        if (a.index) throw SyntaxError(a.line, a.col, "indexed operand inside gate body");
        if (std::find(def.args.begin(), def.args.end(), a.reg) == def.args.end())
          throw SyntaxError(a.line, a.col, "unknown gate argument '" + a.reg + "'");
      }
      def.body.push_back(std::move(call));
    }
    defs_[name.text] = std::move(def);
  }

  // `bound` maps gate-body argument names to global qubits when inlining.
  void apply(const GateCall& call, const Env& env,
             const std::map<std::string, int>* bound, int depth) {
    if (depth > 64) throw SyntaxError(call.line, call.col, "gate definitions nest too deeply");
    std::vector<double> params;
    for (const auto& e : call.params) params.push_back(eval(*e, env));

    std::vector<std::vector<int>> groups;
    std::size_t width = 1;
    for (const auto& a : call.args) {
      if (bound) {
        groups.push_back({bound->at(a.reg)});
        continue;
      }
      groups.push_back(resolve_all(a));
      if (!a.index) {
        if (width != 1 && groups.back().size() != width)
          throw SyntaxError(a.line, a.col, "register sizes differ in broadcast");
        width = groups.back().size();
      }
    }

    const auto info = lookup_gate(call.name);
    const auto def = defs_.find(call.name);
    if (!info && def == defs_.end())
      throw Error(ErrorCode::UnsupportedGate, "line " + std::to_string(call.line) + ":" +
                                                  std::to_string(call.col) +
                                                  ": unsupported gate '" + call.name + "'");
    if (info && call.name == "unitary")
      throw Error(ErrorCode::UnsupportedGate,
                  "line " + std::to_string(call.line) + ": 'unitary' needs the comment form");
    const std::size_t want_params = info ? static_cast<std::size_t>(info->params)
                                         : def->second.params.size();
    const std::size_t want_args = info ? static_cast<std::size_t>(info->qubits)
                                       : def->second.args.size();
    if (params.size() != want_params)
      throw SyntaxError(call.line, call.col,
                        "gate '" + call.name + "' takes " + std::to_string(want_params) +
                            " parameter(s)");
    if (call.args.size() != want_args)
      throw SyntaxError(call.line, call.col,
                        "gate '" + call.name + "' takes " + std::to_string(want_args) +
                            " operand(s)");

    for (std::size_t i = 0; i < width; ++i) {
      std::vector<int> qubits;
      for (const auto& g : groups) qubits.push_back(g.size() == 1 ? g[0] : g[i]);
      for (std::size_t a = 0; a < qubits.size(); ++a)
        for (std::size_t b = a + 1; b < qubits.size(); ++b)
          if (qubits[a] == qubits[b])
            throw SyntaxError(call.line, call.col, "repeated operand in '" + call.name + "'");
      if (info) {
        QasmStatement s;
        s.name = call.name;
        s.params = params;
        s.qubits = std::move(qubits);
        s.line = call.line;
        prog_.statements.push_back(std::move(s));
        continue;
      }
      const GateDef& d = def->second;
      Env inner;
      for (std::size_t p = 0; p < d.params.size(); ++p) inner[d.params[p]] = params[p];
      std::map<std::string, int> args;
      for (std::size_t a = 0; a < d.args.size(); ++a) args[d.args[a]] = qubits[a];
      for (const GateCall& c : d.body) apply(c, inner, &args, depth + 1);
    }
  }

  double signed_number() {
    const bool neg = accept_symbol("-");
    if (!neg) accept_symbol("+");
    const Token t = expect(Tok::Number, "number");
    return neg ? -t.value : t.value;
  }

  void pragma() {
    const Token t = next();
    const Operand a = operand();
    expect_symbol(",");
    const Operand b = operand();
    const std::vector<int> qa = resolve_all(a);
    const std::vector<int> qb = resolve_all(b);
    if (qa.size() != 1 || qb.size() != 1 || qa[0] == qb[0])
      fail(t, "@unitary needs two distinct single qubits");
    Mat4 m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const double re = signed_number();
        const double im = signed_number();
        m(r, c) = Complex(re, im);
      }
    expect(Tok::PragmaEnd, "end of @unitary line");
    QasmStatement s;
    s.name = "unitary";
    s.qubits = {qa[0], qb[0]};
    s.unitary = m;
    s.line = t.line;
    prog_.statements.push_back(std::move(s));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  QasmProgram prog_;
  std::map<std::string, GateDef> defs_;
};

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string qubit_ref(int q) { return "q[" + std::to_string(q) + "]"; }

void emit_gate(std::ostringstream& os, std::string_view name, std::span<const double> params,
               const std::vector<int>& qubits) {
  os << name;
  if (!params.empty()) {
    os << '(';
    for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << fmt_double(params[i]);
    os << ')';
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) os << (i ? "," : " ") << qubit_ref(qubits[i]);
  os << ";\n";
}

bool is_unitary_payload(const GateNode& n) {
  return n.name == "unitary" || (n.block.has_value() && n.name != "swap");
}

int pick_k(const GateNode& n, const BasisGateSpec& basis, const SerializeOptions& opts) {
  if (n.cost) return n.cost->k;
  if (opts.lookup) return opts.lookup->operator()(n.weyl()).k;
  // No coverage available: smallest depth that synthesizes exactly.
  const Unitary2Q target = Unitary2Q::trusted(n.matrix2q());
  for (int k = 0; k <= 3 * basis.n; ++k) {
    if (synthesize(target, basis, k, opts.settings).fidelity >= opts.min_fidelity) return k;
  }
  throw Error(ErrorCode::OptimizerDiverged, "no depth synthesizes the block");
}

}  // namespace

QasmProgram parse_qasm(std::string_view text) { return Parser(Lexer(text).run()).run(); }

QasmProgram parse_qasm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_qasm(ss.str());
}

CircuitDag lower(const QasmProgram& program) {
  CircuitDag dag(program.num_qubits());
  for (const auto& s : program.statements) {
    if (s.kind != QasmStatement::Kind::Gate) continue;
    if (s.unitary) {
      dag.add(GateNode::unitary(s.qubits, *s.unitary));
    } else {
      dag.add(GateNode::named(s.name, s.qubits, s.params));
    }
  }
  return unroll_3q(dag);
}

std::string basis_gate_name(const BasisGateSpec& basis) {
  if (basis.n == 1) return "iswap";
  if (basis.n == 2) return "sqiswap";
  return "iswap_root" + std::to_string(basis.n);
}

std::string serialize_qasm(const CircuitDag& dag, const BasisGateSpec& basis,
                           const SerializeOptions& options) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  if (dag.empty()) return os.str();
  const std::string bname = basis_gate_name(basis);
  if (options.synth && dag.two_qubit_count() > 0) {
    // exp(i t/2 (XX+YY)) with t = pi/(2n), as an XX then a YY rotation.
    const std::string angle = "-pi/" + std::to_string(2 * basis.n);
    os << "gate " << bname << " a,b { h a; h b; cx a,b; rz(" << angle
       << ") b; cx a,b; h a; h b; sdg a; sdg b; h a; h b; cx a,b; rz(" << angle
       << ") b; cx a,b; h a; h b; s a; s b; }\n";
  }
  os << "qreg q[" << dag.num_qubits() << "];\n";
  for (const GateNode& n : dag.nodes()) {
    if (n.arity() == 1) {
      if (n.block1q) {
        const auto a = u3_angles(*n.block1q);
        emit_gate(os, "u3", a, n.qubits);
      } else {
        emit_gate(os, n.name, n.params, n.qubits);
      }
      continue;
    }
    if (!options.synth) {
      if (!is_unitary_payload(n)) {
        emit_gate(os, n.name, n.params, n.qubits);
        continue;
      }
      const Mat4 m = n.matrix2q();
      os << "// @unitary " << qubit_ref(n.qubits[0]) << "," << qubit_ref(n.qubits[1]);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          os << ' ' << fmt_double(m(r, c).real()) << ' ' << fmt_double(m(r, c).imag());
      os << '\n';
      continue;
    }
    const int k = pick_k(n, basis, options);
    const SynthesisResult syn =
        synthesize(Unitary2Q::trusted(n.matrix2q()), basis, k, options.settings);
    if (syn.fidelity < options.min_fidelity)
      throw Error(ErrorCode::OptimizerDiverged,
                  "block on " + qubit_ref(n.qubits[0]) + "," + qubit_ref(n.qubits[1]) +
                      " synthesized at fidelity " + fmt_double(syn.fidelity));
    for (int layer = 0; layer <= k; ++layer) {
      if (layer > 0) emit_gate(os, bname, {}, n.qubits);
      for (int j = 0; j < 2; ++j)
        emit_gate(os, "u3", syn.angles[static_cast<std::size_t>(2 * layer + j)],
                  {n.qubits[static_cast<std::size_t>(j)]});
    }
  }
  return os.str();
}

}  // namespace mirage
