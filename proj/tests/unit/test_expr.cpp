#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "paramode/expr.hpp"

using namespace paramode::expr;

TEST_SUITE("expr") {
  TEST_CASE("inverse square parses and evaluates") {
    Expr e = Expr::parse("1/(x^2+t^2)");
    CHECK(e(0, 1) == doctest::Approx(1.0));
    CHECK(e(0.5, 0.5) == doctest::Approx(2.0));
    CHECK_FALSE(eval(e, 0, 0).has_value());
    CHECK(e.is_partial());
  }

  TEST_CASE("atan(x/t)/t") {
    Expr e = Expr::parse("atan(x/t)/t");
    CHECK(std::fabs(e(1, 1) - std::numbers::pi / 4) < 1e-15);
    CHECK(std::fabs(e(1, 1) - 0.7853981634) < 1e-10);
  }

  TEST_CASE("unbalanced parenthesis reports the end of input") {
    try {
      Expr::parse("u/(x^2+t^2");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 11);
      bool paren = false;
      for (const auto& s : e.expected()) paren = paren || s == "')'";
      CHECK(paren);
    }
  }

  TEST_CASE("error offsets point at the offending token") {
    auto offset = [](const char* s) {
      try {
        Expr::parse(s);
      } catch (const ParseError& e) {
        return e.offset();
      }
      return std::size_t{0};
    };
    CHECK(offset("x + * t") == 5);
    CHECK(offset("foo(x)") == 1);
    CHECK(offset("x < t < 1") == 7);
    CHECK(offset("") == 1);
    CHECK(offset("x^1.5") > 0);
  }

  TEST_CASE("precedence and associativity") {
    CHECK(Expr::parse("2+3*4")(0, 0) == 14);
    CHECK(Expr::parse("2-3-4")(0, 0) == -5);
    CHECK(Expr::parse("8/4/2")(0, 0) == 1);
    CHECK(Expr::parse("-x^2")(0, 3) == -9);
    CHECK(Expr::parse("x^-1")(0, 4) == 0.25);
    CHECK(Expr::parse("x^(-2)")(0, 2) == 0.25);
    CHECK(Expr::parse("t < x && x < 1")(0, 0.5) == 1);
    CHECK(Expr::parse("t < x && x < 1")(0, 2) == 0);
    CHECK(Expr::parse("x > 1 || !(t == 0)")(0, 0) == 0);
    CHECK(Expr::parse("sgn(x) * abs(x)")(0, -3) == -3);
    CHECK(Expr::parse("exp(log(x))")(0, 2.5) == doctest::Approx(2.5));
    CHECK(Expr::parse("pi")(0, 0) == std::numbers::pi);
    CHECK(Expr::parse("e")(0, 0) == std::numbers::e);
  }

  TEST_CASE("predicates and constants") {
    CHECK(Expr::parse("x^2 + t^2 < 1").is_predicate());
    CHECK_FALSE(Expr::parse("x + 1").is_predicate());
    CHECK(Expr::parse("2*pi").is_constant());
    CHECK(*Expr::parse("3-1").constant_value() == 2);
    CHECK_FALSE(Expr::parse("x").constant_value());
    CHECK_FALSE(Expr::parse("sin(x)+1").is_partial());
    CHECK(Expr::parse("sqrt(x)").is_partial());
  }

  TEST_CASE("non-finite values are flagged, never trapped") {
    CHECK_FALSE(eval(Expr::parse("log(x)"), 0, -1).has_value());
    CHECK_FALSE(eval(Expr::parse("1/x"), 0, 0).has_value());
    CHECK_FALSE(eval(Expr::parse("sqrt(x)"), 0, -1).has_value());
    CHECK(eval(Expr::parse("atan(1/x)"), 0, 0).has_value());
  }

  TEST_CASE("format_number round-trips") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
      double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
      CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(3) == "3");
  }

  // Random trees over the whole grammar.
  std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 11);
    int k = depth <= 0 ? static_cast<int>(rng() % 4) : pick(rng);
    auto sub = [&] { return random_expr(rng, depth - 1); };
    static const char* funcs[] = {"sin", "cos", "exp", "log", "atan", "sqrt", "abs", "sgn"};
    static const char* bin[] = {"+", "-", "*", "/"};
    switch (k) {
      case 0: return "t";
      case 1: return "x";
      case 2: return format_number(static_cast<double>(rng() % 1000) / 8.0);
      case 3: return "pi";
      case 4: return "-" + sub();
      case 5: return "(" + sub() + ")^" + std::to_string(static_cast<int>(rng() % 7) - 3);
      case 6: return std::string(funcs[rng() % 8]) + "(" + sub() + ")";
      case 7:
      case 8:
      case 9: return "(" + sub() + ")" + bin[rng() % 4] + "(" + sub() + ")";
      case 10: return sub() + " " + bin[rng() % 4] + " " + sub();
      default: return "(" + sub() + " < " + sub() + ") && (" + sub() + " >= 1)";
    }
  }

  TEST_CASE("parse . print . parse is the identity on ASTs") {
    std::mt19937 rng(11);
    for (int i = 0; i < 1500; ++i) {
      std::string src = random_expr(rng, 5);
      Expr a;
      try {
        a = Expr::parse(src);
      } catch (const ParseError&) {
        continue;  // e.g. a comparison applied to a comparison
      }
      Expr b = Expr::parse(a.str());
      CAPTURE(src);
      CAPTURE(a.str());
      CHECK(a == b);
      CHECK(b.str() == a.str());
    }
  }

  TEST_CASE("builders evaluate like the parsed form") {
    Expr x = Expr::parse("x"), t = Expr::parse("t");
    Expr e = (x * x + t) / (Expr::constant(2) - x);
    CHECK(e(1.5, 0.5) == doctest::Approx(Expr::parse("(x^2+t)/(2-x)")(1.5, 0.5)));
    CHECK((Expr::constant(0) + x) == x);
    CHECK((Expr::constant(1) * x) == x);
  }

  TEST_CASE("copies share state and evaluate concurrently") {
    Expr e = Expr::parse("sin(x)*cos(t) + x^3");
    double sum = 0;
#pragma omp parallel for reduction(+ : sum)
    for (int i = 0; i < 1000; ++i) {
      Expr c = e;
      sum += c(0.001 * i, 0.002 * i);
    }
    double ref = 0;
    for (int i = 0; i < 1000; ++i) ref += e(0.001 * i, 0.002 * i);
    CHECK(sum == doctest::Approx(ref));
  }
}
