#pragma once
// Small expression language for coefficient fields g(t,x), right-hand sides
// f(t,x) and region membership predicates.
//
// Grammar (lowest to highest precedence):
//   or      := and ('||' and)*
//   and     := cmp ('&&' cmp)*
//   cmp     := sum (('<'|'<='|'>'|'>='|'=='|'!=') sum)?
//   sum     := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := ('-'|'+'|'!') unary | power
//   power   := primary ('^' int)*          int := '-'? digits | '(' '-'? digits ')'
//   primary := number | 't' | 'x' | 'pi' | 'e' | func '(' or ')' | '(' or ')'
//   func    := sin cos exp log atan sqrt abs sgn
//
// Binary operators are left-associative. Comparisons do not chain.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace paramode::expr {

enum class Op : std::uint8_t {
  Const,
  VarT,
  VarX,
  Neg,
  Not,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  And,
  Or,
  Call,
};

enum class Func : std::uint8_t { Sin, Cos, Exp, Log, Atan, Sqrt, Abs, Sgn };

struct Node {
  Op op = Op::Const;
  double value = 0.0;  // Const
  int exponent = 0;    // Pow
  Func func = Func::Sin;
  std::vector<std::shared_ptr<const Node>> args;
};

bool operator==(const Node& a, const Node& b);

/// Syntax or type error. `offset` is the 1-based byte column of the offending
/// token; end of input reports `size + 1`.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string message, std::vector<std::string> expected);
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
  std::vector<std::string> expected_;
};

struct Instr {
  Op op;
  Func func;
  int exponent;
  double value;
};

/// Immutable parsed expression. Copies share the tree and the compiled
/// program; evaluation is pure and reentrant.
class Expr {
 public:
  Expr();  // the constant 0
  static Expr parse(std::string_view src);
  static Expr constant(double c);
  static Expr from_node(std::shared_ptr<const Node> root);

  /// IEEE evaluation: division by zero, log of nonpositive numbers and the like
  /// yield inf/nan, never a trap. Predicates evaluate to 1.0 or 0.0.
  double operator()(double t, double x) const noexcept;
  bool test(double t, double x) const noexcept { return (*this)(t, x) != 0.0; }

  bool is_predicate() const noexcept { return predicate_; }
  bool is_constant() const noexcept;
  std::optional<double> constant_value() const noexcept;
  /// Contains division, log, sqrt or a negative power.
  bool is_partial() const noexcept { return partial_; }

  /// Canonical text: minimal parentheses, shortest round-trip numerals.
  std::string str() const;
  const Node& root() const noexcept { return *root_; }
  std::shared_ptr<const Node> node() const noexcept { return root_; }

  friend bool operator==(const Expr& a, const Expr& b) { return *a.root_ == *b.root_; }

 private:
  explicit Expr(std::shared_ptr<const Node> root);
  void compile();

  std::shared_ptr<const Node> root_;
  std::shared_ptr<const std::vector<Instr>> program_;
  int stack_depth_ = 0;
  bool predicate_ = false;
  bool partial_ = false;
};

/// Null when the value is not finite.
std::optional<double> eval(const Expr& e, double t, double x) noexcept;

// Builders with light simplification; used when operators are assembled
// from other expressions (companion matrices, generated counterexamples).
Expr operator-(const Expr& a);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

/// Formats a double as the shortest decimal string that parses back exactly.
std::string format_number(double v);

}  // namespace paramode::expr
