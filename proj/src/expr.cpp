#include "paramode/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace paramode::expr {

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = v;
  return n;
}

NodePtr make_var(Op op) {
  auto n = std::make_shared<Node>();
  n->op = op;
  return n;
}

NodePtr make_unary(Op op, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args.push_back(std::move(a));
  return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args.push_back(std::move(a));
  n->args.push_back(std::move(b));
  return n;
}

NodePtr make_pow(NodePtr a, int k) {
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->exponent = k;
  n->args.push_back(std::move(a));
  return n;
}

NodePtr make_call(Func f, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->op = Op::Call;
  n->func = f;
  n->args.push_back(std::move(a));
  return n;
}

bool is_bool_op(Op op) {
  switch (op) {
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: case Op::Eq: case Op::Ne:
    case Op::And: case Op::Or: case Op::Not:
      return true;
    default:
      return false;
  }
}

struct FuncName {
  std::string_view name;
  Func func;
};

constexpr std::array<FuncName, 8> kFuncs{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"atan", Func::Atan},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
    {"sgn", Func::Sgn},
}};

std::string_view func_name(Func f) {
  for (const auto& fn : kFuncs)
    if (fn.func == f) return fn.name;
  return "?";
}

enum class Tok {
  Number, Ident, LParen, RParen, Plus, Minus, Star, Slash, Caret,
  Lt, Le, Gt, Ge, EqEq, Ne, AndAnd, OrOr, Bang, End, Bad
};

struct Token {
  Tok kind;
  std::size_t pos;  // 0-based
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
    std::size_t start = i_;
    if (i_ >= s_.size()) return {Tok::End, start, {}};
    char c = s_[i_];
    auto one = [&](Tok k) {
      ++i_;
      return Token{k, start, s_.substr(start, 1)};
    };
    auto two = [&](Tok k) {
      i_ += 2;
      return Token{k, start, s_.substr(start, 2)};
    };
    auto peek = [&](char d) { return i_ + 1 < s_.size() && s_[i_ + 1] == d; };
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < s_.size() &&
                                                        std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ < s_.size() && s_[i_] == '.') {
        ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
      if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
        std::size_t j = i_ + 1;
        if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
        if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
          i_ = j;
          while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        }
      }
      Token t{Tok::Number, start, s_.substr(start, i_ - start)};
      const char* b = s_.data() + start;
      std::string tmp;
      if (*b == '.') {  // from_chars accepts ".5" but be explicit
        tmp = "0" + std::string(t.text);
        std::from_chars(tmp.data(), tmp.data() + tmp.size(), t.number);
      } else {
        std::from_chars(b, s_.data() + i_, t.number);
      }
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return {Tok::Ident, start, s_.substr(start, i_ - start)};
    }
    switch (c) {
      case '(': return one(Tok::LParen);
      case ')': return one(Tok::RParen);
      case '+': return one(Tok::Plus);
      case '-': return one(Tok::Minus);
      case '*': return one(Tok::Star);
      case '/': return one(Tok::Slash);
      case '^': return one(Tok::Caret);
      case '<': return peek('=') ? two(Tok::Le) : one(Tok::Lt);
      case '>': return peek('=') ? two(Tok::Ge) : one(Tok::Gt);
      case '=':
        if (peek('=')) return two(Tok::EqEq);
        return one(Tok::Bad);
      case '!': return peek('=') ? two(Tok::Ne) : one(Tok::Bang);
      case '&':
        if (peek('&')) return two(Tok::AndAnd);
        return one(Tok::Bad);
      case '|':
        if (peek('|')) return two(Tok::OrOr);
        return one(Tok::Bad);
      default:
        return one(Tok::Bad);
    }
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

struct Typed {
  NodePtr node;
  bool boolean;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { tok_ = lex_.next(); }

  NodePtr run() {
    Typed r = parse_or();
    if (tok_.kind != Tok::End) fail({"operator", "end of input"});
    if (unknown_) throw ParseError(unknown_pos_ + 1, "unknown identifier '" + unknown_name_ + "'",
                                   {"t", "x", "pi", "e", "function name"});
    return r.node;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = tok_.kind == Tok::End ? "end of input" : "'" + std::string(tok_.text) + "'";
    throw ParseError(tok_.pos + 1, "unexpected " + found, std::move(expected));
  }

  [[noreturn]] void type_fail(std::size_t pos, const std::string& what) {
    throw ParseError(pos + 1, what, {});
  }

  void advance() { tok_ = lex_.next(); }

  void need_numeric(const Typed& v, std::size_t pos) {
    if (v.boolean) type_fail(pos, "numeric operand required");
  }
  void need_bool(const Typed& v, std::size_t pos) {
    if (!v.boolean) type_fail(pos, "boolean operand required");
  }

  Typed parse_or() {
    Typed lhs = parse_and();
    while (tok_.kind == Tok::OrOr) {
      std::size_t pos = tok_.pos;
      advance();
      Typed rhs = parse_and();
      need_bool(lhs, pos);
      need_bool(rhs, pos);
      lhs = {make_binary(Op::Or, lhs.node, rhs.node), true};
    }
    return lhs;
  }

  Typed parse_and() {
    Typed lhs = parse_cmp();
    while (tok_.kind == Tok::AndAnd) {
      std::size_t pos = tok_.pos;
      advance();
      Typed rhs = parse_cmp();
      need_bool(lhs, pos);
      need_bool(rhs, pos);
      lhs = {make_binary(Op::And, lhs.node, rhs.node), true};
    }
    return lhs;
  }

  Typed parse_cmp() {
    Typed lhs = parse_sum();
    Op op;
    switch (tok_.kind) {
      case Tok::Lt: op = Op::Lt; break;
      case Tok::Le: op = Op::Le; break;
      case Tok::Gt: op = Op::Gt; break;
      case Tok::Ge: op = Op::Ge; break;
      case Tok::EqEq: op = Op::Eq; break;
      case Tok::Ne: op = Op::Ne; break;
      default: return lhs;
    }
    std::size_t pos = tok_.pos;
    advance();
    Typed rhs = parse_sum();
    need_numeric(lhs, pos);
    need_numeric(rhs, pos);
    switch (tok_.kind) {
      case Tok::Lt: case Tok::Le: case Tok::Gt: case Tok::Ge: case Tok::EqEq: case Tok::Ne:
        type_fail(tok_.pos, "comparisons do not chain");
      default:
        break;
    }
    return {make_binary(op, lhs.node, rhs.node), true};
  }

  Typed parse_sum() {
    Typed lhs = parse_term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      Op op = tok_.kind == Tok::Plus ? Op::Add : Op::Sub;
      std::size_t pos = tok_.pos;
      advance();
      Typed rhs = parse_term();
      need_numeric(lhs, pos);
      need_numeric(rhs, pos);
      lhs = {make_binary(op, lhs.node, rhs.node), false};
    }
    return lhs;
  }

  Typed parse_term() {
    Typed lhs = parse_unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      Op op = tok_.kind == Tok::Star ? Op::Mul : Op::Div;
      std::size_t pos = tok_.pos;
      advance();
      Typed rhs = parse_unary();
      need_numeric(lhs, pos);
      need_numeric(rhs, pos);
      lhs = {make_binary(op, lhs.node, rhs.node), false};
    }
    return lhs;
  }

  Typed parse_unary() {
    if (tok_.kind == Tok::Minus || tok_.kind == Tok::Plus || tok_.kind == Tok::Bang) {
      Tok k = tok_.kind;
      std::size_t pos = tok_.pos;
      advance();
      Typed a = parse_unary();
      if (k == Tok::Plus) {
        need_numeric(a, pos);
        return a;
      }
      if (k == Tok::Minus) {
        need_numeric(a, pos);
        return {make_unary(Op::Neg, a.node), false};
      }
      need_bool(a, pos);
      return {make_unary(Op::Not, a.node), true};
    }
    return parse_power();
  }

  int parse_int_exponent() {
    bool paren = false;
    if (tok_.kind == Tok::LParen) {
      paren = true;
      advance();
    }
    bool neg = false;
    if (tok_.kind == Tok::Minus) {
      neg = true;
      advance();
    }
    if (tok_.kind != Tok::Number) fail({"integer exponent"});
    for (char c : tok_.text)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail({"integer exponent"});
    int k = 0;
    auto [p, ec] = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), k);
    if (ec != std::errc{} || k > 1024) type_fail(tok_.pos, "exponent out of range");
    advance();
    if (paren) {
      if (tok_.kind != Tok::RParen) fail({"')'"});
      advance();
    }
    return neg ? -k : k;
  }

  Typed parse_power() {
    Typed base = parse_primary();
    while (tok_.kind == Tok::Caret) {
      std::size_t pos = tok_.pos;
      advance();
      int k = parse_int_exponent();
      need_numeric(base, pos);
      base = {make_pow(base.node, k), false};
    }
    return base;
  }

  Typed parse_primary() {
    switch (tok_.kind) {
      case Tok::Number: {
        double v = tok_.number;
        advance();
        return {make_const(v), false};
      }
      case Tok::LParen: {
        advance();
        Typed inner = parse_or();
        if (tok_.kind != Tok::RParen) fail({"')'", "operator"});
        advance();
        return inner;
      }
      case Tok::Ident: {
        std::string_view name = tok_.text;
        std::size_t pos = tok_.pos;
        advance();
        if (name == "t") return {make_var(Op::VarT), false};
        if (name == "x") return {make_var(Op::VarX), false};
        if (name == "pi") return {make_const(std::numbers::pi), false};
        if (name == "e") return {make_const(std::numbers::e), false};
        const FuncName* fn = nullptr;
        for (const auto& f : kFuncs)
          if (f.name == name) fn = &f;
        if (fn || tok_.kind == Tok::LParen) {
          if (tok_.kind != Tok::LParen) fail({"'('"});
          advance();
          Typed arg = parse_or();
          if (tok_.kind != Tok::RParen) fail({"')'", "operator"});
          advance();
          need_numeric(arg, pos);
          if (!fn) {
            note_unknown(name, pos);
            return {make_const(0.0), false};
          }
          return {make_call(fn->func, arg.node), false};
        }
        note_unknown(name, pos);
        return {make_const(0.0), false};
      }
      default:
        fail({"number", "t", "x", "pi", "e", "function name", "'('", "'-'", "'!'"});
    }
  }

  void note_unknown(std::string_view name, std::size_t pos) {
    if (unknown_) return;
    unknown_ = true;
    unknown_name_ = std::string(name);
    unknown_pos_ = pos;
  }

  Lexer lex_;
  Token tok_{Tok::End, 0, {}};
  bool unknown_ = false;
  std::string unknown_name_;
  std::size_t unknown_pos_ = 0;
};

int precedence(const Node& n) {
  switch (n.op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: case Op::Eq: case Op::Ne: return 3;
    case Op::Add: case Op::Sub: return 4;
    case Op::Mul: case Op::Div: return 5;
    case Op::Neg: case Op::Not: return 6;
    case Op::Pow: return 7;
    case Op::Const: return n.value < 0 || std::signbit(n.value) ? 6 : 8;
    default: return 8;
  }
}

std::string_view op_text(Op op) {
  switch (op) {
    case Op::Or: return "||";
    case Op::And: return "&&";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    default: return "?";
  }
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool paren, std::string& out) {
  if (paren) out += '(';
  print(n, out);
  if (paren) out += ')';
}

void print(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::Const:
      out += format_number(n.value);
      return;
    case Op::VarT:
      out += 't';
      return;
    case Op::VarX:
      out += 'x';
      return;
    case Op::Neg:
    case Op::Not:
      out += n.op == Op::Neg ? '-' : '!';
      print_wrapped(*n.args[0], precedence(*n.args[0]) < 6, out);
      return;
    case Op::Pow:
      print_wrapped(*n.args[0], precedence(*n.args[0]) < 7, out);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    case Op::Call:
      out += func_name(n.func);
      out += '(';
      print(*n.args[0], out);
      out += ')';
      return;
    default: {
      int p = precedence(n);
      const Node& a = *n.args[0];
      const Node& b = *n.args[1];
      bool cmp = p == 3;
      print_wrapped(a, cmp ? precedence(a) <= p : precedence(a) < p, out);
      out += ' ';
      out += op_text(n.op);
      out += ' ';
      print_wrapped(b, precedence(b) <= p, out);
      return;
    }
  }
}

int compile_node(const Node& n, std::vector<Instr>& prog) {
  int depth = 1;
  int k = 0;
  for (const auto& a : n.args) {
    depth = std::max(depth, k + compile_node(*a, prog));
    ++k;
  }
  prog.push_back({n.op, n.func, n.exponent, n.value});
  return depth;
}

bool node_partial(const Node& n) {
  if (n.op == Op::Div) return true;
  if (n.op == Op::Pow && n.exponent < 0) return true;
  if (n.op == Op::Call && (n.func == Func::Log || n.func == Func::Sqrt)) return true;
  for (const auto& a : n.args)
    if (node_partial(*a)) return true;
  return false;
}

double ipow(double x, int k) {
  bool inv = k < 0;
  unsigned m = static_cast<unsigned>(inv ? -k : k);
  double r = 1.0;
  double b = x;
  while (m) {
    if (m & 1u) r *= b;
    b *= b;
    m >>= 1;
  }
  return inv ? 1.0 / r : r;
}

double apply(Func f, double a) {
  switch (f) {
    case Func::Sin: return std::sin(a);
    case Func::Cos: return std::cos(a);
    case Func::Exp: return std::exp(a);
    case Func::Log: return a > 0 ? std::log(a) : (a == 0 ? -HUGE_VAL : std::nan(""));
    case Func::Atan: return std::atan(a);
    case Func::Sqrt: return a >= 0 ? std::sqrt(a) : std::nan("");
    case Func::Abs: return std::fabs(a);
    case Func::Sgn: return std::isnan(a) ? a : (a > 0 ? 1.0 : (a < 0 ? -1.0 : 0.0));
  }
  return std::nan("");
}

double run(const std::vector<Instr>& prog, double* st, double t, double x) noexcept {
  int sp = 0;
  for (const Instr& in : prog) {
    switch (in.op) {
      case Op::Const: st[sp++] = in.value; break;
      case Op::VarT: st[sp++] = t; break;
      case Op::VarX: st[sp++] = x; break;
      case Op::Neg: st[sp - 1] = -st[sp - 1]; break;
      case Op::Not: st[sp - 1] = st[sp - 1] == 0.0 ? 1.0 : 0.0; break;
      case Op::Pow: st[sp - 1] = ipow(st[sp - 1], in.exponent); break;
      case Op::Call: st[sp - 1] = apply(in.func, st[sp - 1]); break;
      default: {
        double b = st[--sp];
        double a = st[sp - 1];
        double r;
        switch (in.op) {
          case Op::Add: r = a + b; break;
          case Op::Sub: r = a - b; break;
          case Op::Mul: r = a * b; break;
          case Op::Div: r = a / b; break;
          case Op::Lt: r = a < b; break;
          case Op::Le: r = a <= b; break;
          case Op::Gt: r = a > b; break;
          case Op::Ge: r = a >= b; break;
          case Op::Eq: r = a == b; break;
          case Op::Ne: r = a != b; break;
          case Op::And: r = (a != 0.0 && b != 0.0); break;
          case Op::Or: r = (a != 0.0 || b != 0.0); break;
          default: r = std::nan(""); break;
        }
        st[sp - 1] = r;
      }
    }
  }
  return st[0];
}

}  // namespace

bool operator==(const Node& a, const Node& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::Const:
      if (!(a.value == b.value) && !(std::isnan(a.value) && std::isnan(b.value))) return false;
      if (std::signbit(a.value) != std::signbit(b.value)) return false;
      break;
    case Op::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    case Op::Call:
      if (a.func != b.func) return false;
      break;
    default:
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(*a.args[i] == *b.args[i])) return false;
  return true;
}

ParseError::ParseError(std::size_t offset, std::string message, std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::string m = "offset " + std::to_string(offset) + ": " + message;
        if (!expected.empty()) {
          m += " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) m += ", ";
            m += expected[i];
          }
          m += ")";
        }
        return m;
      }()),
      offset_(offset),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

Expr::Expr() : Expr(make_const(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) { compile(); }

Expr Expr::parse(std::string_view src) { return Expr(Parser(src).run()); }

Expr Expr::constant(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("non-finite constant");
  if (std::signbit(c) && c != 0.0) return Expr(make_unary(Op::Neg, make_const(-c)));
  return Expr(make_const(c == 0.0 ? 0.0 : c));
}

Expr Expr::from_node(std::shared_ptr<const Node> root) {
  if (!root) throw std::invalid_argument("null expression node");
  return Expr(std::move(root));
}

void Expr::compile() {
  auto prog = std::make_shared<std::vector<Instr>>();
  stack_depth_ = compile_node(*root_, *prog);
  program_ = std::move(prog);
  predicate_ = is_bool_op(root_->op);
  partial_ = node_partial(*root_);
}

double Expr::operator()(double t, double x) const noexcept {
  if (stack_depth_ <= 32) {
    double st[32];
    return run(*program_, st, t, x);
  }
  std::vector<double> st(static_cast<std::size_t>(stack_depth_));
  return run(*program_, st.data(), t, x);
}

bool Expr::is_constant() const noexcept { return constant_value().has_value(); }

namespace {
bool has_variable(const Node& n) {
  if (n.op == Op::VarT || n.op == Op::VarX) return true;
  for (const auto& a : n.args)
    if (has_variable(*a)) return true;
  return false;
}
}  // namespace

std::optional<double> Expr::constant_value() const noexcept {
  const Node* n = root_.get();
  if (n->op == Op::Const) return n->value;
  if (n->op == Op::Neg && n->args[0]->op == Op::Const) return -n->args[0]->value;
  if (has_variable(*n)) return std::nullopt;
  double v = (*this)(0, 0);
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::string Expr::str() const {
  std::string out;
  print(*root_, out);
  return out;
}

std::optional<double> eval(const Expr& e, double t, double x) noexcept {
  double v = e(t, x);
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

namespace {
bool is_zero(const Expr& e) {
  auto c = e.constant_value();
  return c && *c == 0.0;
}
bool is_one(const Expr& e) {
  auto c = e.constant_value();
  return c && *c == 1.0;
}
}  // namespace

Expr operator-(const Expr& a) {
  if (auto c = a.constant_value()) return Expr::constant(-*c);
  if (a.root().op == Op::Neg) return Expr::from_node(a.root().args[0]);
  return Expr::from_node(make_unary(Op::Neg, a.node()));
}

Expr operator+(const Expr& a, const Expr& b) {
  auto ca = a.constant_value();
  auto cb = b.constant_value();
  if (ca && cb) return Expr::constant(*ca + *cb);
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (b.root().op == Op::Neg) return Expr::from_node(make_binary(Op::Sub, a.node(), b.root().args[0]));
  return Expr::from_node(make_binary(Op::Add, a.node(), b.node()));
}

Expr operator-(const Expr& a, const Expr& b) {
  auto ca = a.constant_value();
  auto cb = b.constant_value();
  if (ca && cb) return Expr::constant(*ca - *cb);
  if (is_zero(b)) return a;
  if (is_zero(a)) return -b;
  if (b.root().op == Op::Neg) return Expr::from_node(make_binary(Op::Add, a.node(), b.root().args[0]));
  return Expr::from_node(make_binary(Op::Sub, a.node(), b.node()));
}

Expr operator*(const Expr& a, const Expr& b) {
  auto ca = a.constant_value();
  auto cb = b.constant_value();
  if (ca && cb) return Expr::constant(*ca * *cb);
  if (is_zero(a) || is_zero(b)) return Expr::constant(0.0);
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  if (a.root().op == Op::Neg) return -(Expr::from_node(a.root().args[0]) * b);
  if (b.root().op == Op::Neg) return -(a * Expr::from_node(b.root().args[0]));
  return Expr::from_node(make_binary(Op::Mul, a.node(), b.node()));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (is_zero(a) && !is_zero(b)) return Expr::constant(0.0);
  if (is_one(b)) return a;
  if (a.root().op == Op::Neg) return -(Expr::from_node(a.root().args[0]) / b);
  if (b.root().op == Op::Neg) return -(a / Expr::from_node(b.root().args[0]));
  return Expr::from_node(make_binary(Op::Div, a.node(), b.node()));
}

}  // namespace paramode::expr
