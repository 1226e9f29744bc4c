#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"

using namespace paramode;
namespace fx = paramode::fixtures;

TEST_SUITE("integrate") {
  TEST_CASE("v_x = v gives e at 1") {
    LinearSystem s = th::sys(fx::strip(-1, 1, -2, 2), {{"1"}});
    SliceSolution sol = solve_slice(s, 0.3, 0, {1.0});
    CHECK(sol.status() != SliceStatus::blowup);
    CHECK(sol.right.status == SliceStatus::left_domain);  // stopped at the boundary margin
    CHECK(sol.right.x_end > 2 - 1e-8);
    CHECK(std::fabs(sol.value(1) - std::numbers::e) < 1e-8);
    CHECK(std::fabs(sol.value(-1) - std::exp(-1.0)) < 1e-8);
    CHECK(sol.value(0) == 1);
  }

  TEST_CASE("harmonic oscillator at pi/2") {
    LinearSystem s = th::sys(fx::strip(-1, 1, -2, 2), {{"0", "1"}, {"-1", "0"}});
    SliceSolution sol = solve_slice(s, 0, 0, {1.0, 0.0});
    double v[2];
    REQUIRE(sol.eval(std::numbers::pi / 2, v));
    CHECK(std::fabs(v[0]) < 1e-8);
    CHECK(std::fabs(v[1] + 1) < 1e-8);
  }

  TEST_CASE("first-order puncture operator at t = 1") {
    LinearSystem s = companion(th::op(fx::punctured_plane(2), {"-1/(x^2+t^2)", "1"}));
    SliceSolution sol = solve_slice(s, 1, 0, {1.0});
    CHECK(std::fabs(sol.value(1) - std::exp(std::numbers::pi / 4)) < 1e-6);
    CHECK(std::fabs(sol.value(1) - 2.193280) < 1e-6);
  }

  TEST_CASE("x0 outside the slice is rejected") {
    LinearSystem s = th::sys(fx::rectangle(0, 1, 0, 1), {{"1"}});
    CHECK_THROWS_AS(solve_slice(s, 0.5, 2, {1.0}), std::invalid_argument);
  }

  TEST_CASE("integration stops short of a puncture") {
    LinearSystem s = companion(th::op(fx::punctured_plane(1), {"0", "1"}, "1/(x^2+t^2)"));
    SliceSolution sol = solve_slice(s, 0, -0.5, {0.0});
    CHECK(sol.right.x_end < 0);
    CHECK(sol.right.x_end > -1e-6);
  }

  TEST_CASE("exponential growth trips the blow-up bound") {
    LinearSystem s = th::sys(fx::strip(-1, 1, 0, 100), {{"1"}});
    SolverOptions o;
    o.blowup = 1e12;
    SliceSolution sol = solve_slice(s, 0, 0.5, {1.0}, o);
    CHECK(sol.right.status == SliceStatus::blowup);
    CHECK(std::fabs(sol.right.x_star - (0.5 + std::log(1e12))) < 0.1);
    CHECK(sol.status() == SliceStatus::blowup);
  }

  TEST_CASE("singular coefficient ends in a status, not a crash") {
    LinearSystem s = th::sys(fx::strip(-1, 1, -1, 1), {{"1/x^2"}});
    SliceSolution sol = solve_slice(s, 0, -0.5, {1.0});
    CHECK(sol.status() != SliceStatus::ok);
  }

  TEST_CASE("tightening the tolerance reduces the error") {
    LinearSystem s = th::sys(fx::strip(-1, 1, -3, 3), {{"0", "1"}, {"-1-x^2/4", "0"}});
    SliceSolution ref = solve_slice(s, 0, 0, {1.0, 0.0}, SolverOptions{.rtol = 1e-13, .atol = 1e-15});
    double prev = INFINITY;
    for (double tol : {1e-5, 1e-7, 1e-9}) {
      SliceSolution sol = solve_slice(s, 0, 0, {1.0, 0.0}, SolverOptions{.rtol = tol, .atol = tol * 1e-3});
      double e = std::fabs(sol.value(2.5) - ref.value(2.5));
      CHECK(e < prev);
      prev = e;
    }
  }

  TEST_CASE("dense output is continuous at step joints") {
    LinearSystem s = th::sys(fx::strip(-1, 1, -3, 3), {{"0", "1"}, {"-4", "0"}});
    SliceSolution sol = solve_slice(s, 0, 0, {1.0, 0.0});
    const auto& seg = sol.right.seg;
    REQUIRE(seg.size() > 3);
    for (std::size_t k = 1; k < seg.size(); ++k) {
      double xj = seg[k].xa;
      double a = sol.value(std::nextafter(xj, -INFINITY)), b = sol.value(xj);
      CHECK(std::fabs(a - b) <= 1e-12);
      CHECK(std::fabs(b - std::cos(2 * xj)) < 1e-8);
    }
  }

  TEST_CASE("both branches share the initial value") {
    LinearSystem s = th::sys(fx::strip(-1, 1, -3, 3), {{"0", "1"}, {"-1", "0"}});
    SliceSolution sol = solve_slice(s, 0, 0.7, {0.3, -0.2});
    double l[2], r[2];
    REQUIRE(sol.eval(0.7, l));
    CHECK(l[0] == 0.3);
    REQUIRE(sol.left.seg.size() > 0);
    REQUIRE(sol.right.seg.size() > 0);
    CHECK(sol.left.seg.front().xa == 0.7);
    CHECK(sol.right.seg.front().xa == 0.7);
    sol.eval(std::nextafter(0.7, -1.0), l);
    sol.eval(std::nextafter(0.7, 2.0), r);
    CHECK(std::fabs(l[0] - r[0]) < 1e-14);
  }

  TEST_CASE("sweep of u_x = u on a strip") {
    LinearSystem s = th::sys(fx::strip(-1, 1, -1, 1), {{"1"}});
    std::vector<double> t = numeric::linspace(-0.9, 0.9, 19);
    ParamSolution u = sweep(s, constant_fn(0), [](double) { return std::vector<double>{1}; }, t);
    CHECK(u.all_ok());
    CHECK(th::sup_error(u, 41, [](double, double x) { return std::exp(x); }) <= 1e-8);
  }

  TEST_CASE("sweep of the first-order puncture operator") {
    ScalarOperator o = th::op(fx::punctured_plane(1), {"-1/(x^2+t^2)", "1"});
    ParamSolution u = sweep(companion(o), constant_fn(0), [](double) { return std::vector<double>{1}; },
                            {-0.5, -0.1, 0.1, 0.5, 0.9}, SolverOptions{.log_domain = true});
    CHECK(u.all_ok());
    double rel = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (double x : common_nodes({&u}, i, 41))
        rel = std::max(rel, std::fabs(u.value(i, x) / std::exp(std::atan(x / u.t[i]) / u.t[i]) - 1));
    CHECK(rel <= 1e-6);
  }

  TEST_CASE("inverse-square forcing across the gap at t = 1e-3") {
    ScalarOperator o = th::op(fx::punctured_plane(2), {"0", "1"}, "1/(x^2+t^2)");
    const double t = 1e-3;
    ParamSolution u =
        sweep(companion(o), constant_fn(-1), [](double) { return std::vector<double>{0}; }, {t});
    double delta = u.value(0, 1) - u.value(0, -1);
    CHECK(std::fabs(t * delta - 2 * std::atan(1 / t)) <= 1e-4);
  }

  TEST_CASE("sweep keeps going past bad slices") {
    LinearSystem s = th::sys(fx::punctured_plane(1), {{"1"}});
    ParamSolution u = sweep(s, [](double t) { return t == 0 ? 0.0 : 0.5; },
                            [](double) { return std::vector<double>{1}; }, {-0.5, 0.0, 0.5});
    CHECK_FALSE(u.slices[1].error.empty());
    CHECK(u.slices[0].error.empty());
    CHECK(u.slices[2].error.empty());
    CHECK_FALSE(u.all_ok());
  }

  TEST_CASE("serial and OpenMP kernels agree bit for bit") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, 0, 1), {"1", "t+sin(x)", "1"});
    LinearSystem s = companion(o);
    SweepRequest req{&s, constant_fn(0.5), [](double t) { return std::vector<double>{1, t}; },
                     numeric::linspace(0.01, 0.99, 64), {}, 0};
    ParamSolution a = kernels::sweep_serial(req), b = kernels::sweep_omp(req);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.t[i] == b.t[i]);
      for (double x : numeric::linspace(0, 1, 17)) {
        CHECK(a.value(i, x) == b.value(i, x));
        CHECK(a.value(i, x, 1) == b.value(i, x, 1));
      }
    }
  }

  TEST_CASE("log domain matches the direct route") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, 0, 1), {"-(1+t*x)", "1"});
    LinearSystem s = companion(o);
    SliceSolution a = solve_slice(s, 0.5, 0.5, {2.0});
    SliceSolution b = solve_slice(s, 0.5, 0.5, {2.0}, SolverOptions{.log_domain = true});
    for (double x : {0.0, 0.2, 0.9, 1.0}) CHECK(std::fabs(a.value(x) - b.value(x)) < 1e-8 * a.value(x));
  }
}
