#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace paramode;
namespace fx = paramode::fixtures;

TEST_SUITE("operators") {
  TEST_CASE("companion of u_xx + u") {
    LinearSystem s = companion(th::op(fx::rectangle(0, 1, 0, 1), {"1", "0", "1"}));
    REQUIRE(s.p == 2);
    CHECK(s.A[0][0](0.3, 0.4) == 0);
    CHECK(s.A[0][1](0.3, 0.4) == 1);
    CHECK(s.A[1][0](0.3, 0.4) == -1);
    CHECK(s.A[1][1](0.3, 0.4) == 0);
    CHECK(s.homogeneous());
  }

  TEST_CASE("companion of the first-order puncture operator") {
    LinearSystem s = companion(th::op(fx::punctured_plane(1), {"-1/(x^2+t^2)", "1"}));
    REQUIRE(s.p == 1);
    CHECK(s.A[0][0](0.5, 0.5) == doctest::Approx(2.0));
    CHECK(s.A[0][0](1, 2) == doctest::Approx(0.2));
  }

  TEST_CASE("companion last row for p = 3") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, 0, 1), {"t+x", "sin(x)", "2", "1+x^2"}, "exp(t)");
    LinearSystem s = companion(o);
    const double t = 0.3, x = 0.7, g3 = 1 + x * x;
    CHECK(s.A[0][1](t, x) == 1);
    CHECK(s.A[1][2](t, x) == 1);
    CHECK(s.A[0][0](t, x) == 0);
    CHECK(s.A[2][0](t, x) == doctest::Approx(-(t + x) / g3));
    CHECK(s.A[2][1](t, x) == doctest::Approx(-std::sin(x) / g3));
    CHECK(s.A[2][2](t, x) == doctest::Approx(-2 / g3));
    CHECK(s.F[2](t, x) == doctest::Approx(std::exp(t) / g3));
    CHECK(s.F[0](t, x) == 0);
    CHECK(s.trace(t, x) == doctest::Approx(-2 / g3));
  }

  TEST_CASE("arity and order are validated") {
    Region r = fx::rectangle(0, 1, 0, 1);
    CHECK_THROWS(ScalarOperator::parse(r, {"1"}));
    CHECK_THROWS(LinearSystem::make(r, {{expr::Expr::constant(1), expr::Expr::constant(0)}}));
  }

  TEST_CASE("leading coefficient checks") {
    CHECK(check_leading(th::op(fx::rectangle(0, 1, 0, 1, 1e-2), {"0", "1+x^2"})).ok);
    LeadingCheck bad = check_leading(th::op(fx::rectangle(0, 1, -1, 1, 1e-2), {"0", "x"}));
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.message.empty());
    // sign may differ between components
    CHECK(check_leading(th::op(fx::stacked_rectangles(1e-2), {"0", "x-1.5"})).ok);
  }

  TEST_CASE("residual of sin x for u_xx + u at step 1e-3") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, 0, 1), {"1", "0", "1"});
    SampledField f;
    for (double t : {0.1, 0.5, 0.9}) {
      f.t.push_back(t);
      auto x = numeric::linspace(0, 1, 1001);
      std::vector<double> u;
      for (double xx : x) u.push_back(std::sin(xx));
      f.x.push_back(x);
      f.u.push_back(u);
    }
    CHECK(residual(o, f) <= 1e-4);
  }

  TEST_CASE("residual is zero for the zero field and exact for linear u") {
    ScalarOperator o0 = th::op(fx::rectangle(0, 1, 0, 1), {"1", "0", "1"});
    ScalarOperator o1 = th::op(fx::rectangle(0, 1, 0, 1), {"0", "1"}, "1");
    SampledField z, lin;
    z.t = lin.t = {0.5};
    z.x = lin.x = {numeric::linspace(0, 1, 51)};
    z.u = {std::vector<double>(51, 0.0)};
    lin.u = {z.x[0]};
    CHECK(residual(o0, z) == 0);
    CHECK(residual(o1, lin) <= 1e-12);
  }

  TEST_CASE("residual needs enough nodes") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, 0, 1), {"1", "0", "1"});
    SampledField f;
    f.t = {0.5};
    f.x = {{0.0, 0.5}};
    f.u = {{1.0, 1.0}};
    CHECK_THROWS_AS(residual(o, f), std::invalid_argument);
  }

  TEST_CASE("evaluator fills A and F") {
    LinearSystem s = th::sys(fx::rectangle(0, 1, 0, 1), {{"0", "1"}, {"-t", "x"}}, {"0", "1"});
    SystemEvaluator ev(s);
    double A[4], F[2], v[2] = {2, 3}, dv[2], scratch[8];
    ev(0.5, 0.25, A, F);
    CHECK(A[2] == -0.5);
    CHECK(A[3] == 0.25);
    CHECK(F[1] == 1);
    ev.rhs(0.5, 0.25, v, dv, scratch);
    CHECK(dv[0] == 3);
    CHECK(dv[1] == doctest::Approx(-1 + 0.75 + 1));
    SystemEvaluator hom(s, false);
    CHECK_FALSE(hom.forced());
  }
}
