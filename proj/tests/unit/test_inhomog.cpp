#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace paramode;
namespace fx = paramode::fixtures;

namespace {

struct Setup {
  ScalarOperator op;
  FundamentalSet set;
  ParticularSolution psi;
};

Setup make(const Region& r, std::vector<std::string> g, std::string f, double theta, std::size_t nt = 11) {
  ScalarOperator o = th::op(r, g, f);
  Piece p = as_piece(r);
  FundamentalSet s = build_fundamental(o, p, constant_fn(theta), piece_t_samples(p, nt));
  ParticularSolution psi = particular(o, s);
  return {o, s, psi};
}

}  // namespace

TEST_SUITE("inhomog") {
  TEST_CASE("u_x = 1 gives x") {
    Setup s = make(fx::rectangle(0, 1, -1, 1), {"0", "1"}, "1", 0);
    CHECK(th::sup_error(s.psi.psi, 41, [](double, double x) { return x; }) <= 1e-10);
  }

  TEST_CASE("u_xx + u = 1 gives 1 - cos x") {
    Setup s = make(fx::rectangle(0, 1, -1.5, 1.5), {"1", "0", "1"}, "1", 0);
    CHECK(th::sup_error(s.psi.psi, 41, [](double, double x) { return 1 - std::cos(x); }) <= 1e-8);
    CHECK(th::sup_error(s.psi.psi, 41, [](double, double x) { return std::sin(x); }, 1) <= 1e-8);
    CHECK(s.psi.cross_check_dev <= 1e-5);
  }

  TEST_CASE("inverse-square forcing on t in (0.5, 1)") {
    Setup s = make(fx::strip(0.5, 1, -2, 2), {"0", "1"}, "1/(x^2+t^2)", 0);
    CHECK(th::sup_error(s.psi.psi, 41, [](double t, double x) { return std::atan(x / t) / t; }) <= 1e-7);
  }

  TEST_CASE("zero data at the section") {
    Setup s = make(fx::rectangle(0, 1, 0, 2), {"t", "x", "1+x^2", "1"}, "exp(x)*t", 0.7);
    for (std::size_t i = 0; i < s.psi.psi.size(); ++i)
      for (int c = 0; c < 3; ++c) CHECK(std::fabs(s.psi.psi.value(i, 0.7, c)) <= 1e-10);
  }

  TEST_CASE("companion and literal variation of constants agree") {
    for (auto g : std::vector<std::vector<std::string>>{{"1", "0", "1"}, {"0", "1"}, {"t", "x", "1+x^2", "1"}}) {
      Setup s = make(fx::rectangle(0, 1, 0, 1.5), g, "1+x*t", 0.75);
      CAPTURE(g.size());
      CHECK(s.psi.cross_check_dev <= 1e-5);
      CHECK_FALSE(s.psi.rows.empty());
    }
  }

  TEST_CASE("integrand signs for p = 1 and p = 2") {
    // p = 1: psi^1 = f / (g^1 phi)
    Setup a = make(fx::rectangle(0, 1, 0, 1), {"-1", "1"}, "1", 0.5, 3);
    CHECK(variation_integrand(a.set, 1, 0.8, 1) == doctest::Approx(std::exp(-0.3)));
    // p = 2 with cos, sin from 0: psi^1 = -f sin, psi^2 = f cos
    Setup b = make(fx::rectangle(0, 1, -1, 1), {"1", "0", "1"}, "1", 0, 3);
    CHECK(variation_integrand(b.set, 1, 0.4, 1) == doctest::Approx(-std::sin(0.4)).epsilon(1e-8));
    CHECK(variation_integrand(b.set, 1, 0.4, 2) == doctest::Approx(std::cos(0.4)).epsilon(1e-8));
  }

  TEST_CASE("general solution") {
    Setup s = make(fx::rectangle(0, 1, -1.5, 1.5), {"1", "0", "1"}, "1", 0);
    SampledField zero = general(s.set, s.psi, Zeta::make({0.5}, {{0.0}, {0.0}}), 21);
    SampledField psi = sample(s.psi.psi, zero.x);
    CHECK(zero.u == psi.u);
    SampledField one = general(s.set, s.psi, Zeta::make({0.5}, {{1.0}, {0.0}}), 21);
    for (const auto& row : one.u)
      for (double v : row) CHECK(std::fabs(v - 1) <= 1e-8);
  }

  TEST_CASE("random zeta keeps the residual small") {
    Setup s = make(fx::rectangle(0, 1, 0, 1), {"1", "0", "1"}, "1", 0.5, 21);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<double> zt = numeric::linspace(0, 1, 6);
    std::vector<std::vector<double>> zz(2);
    for (int k = 0; k < 6; ++k) {
      zz[0].push_back(u(rng));
      zz[1].push_back(u(rng));
    }
    SampledField f = general(s.set, s.psi, Zeta::make(zt, zz), 1001);
    CHECK(residual(s.op, f) <= 1e-4);
  }

  TEST_CASE("grid mismatch and missing f are errors") {
    Setup s = make(fx::rectangle(0, 1, 0, 1), {"1", "0", "1"}, "1", 0.5);
    ParticularSolution bad = s.psi;
    bad.psi.t.pop_back();
    CHECK_THROWS_AS(general(s.set, bad, Zeta::make({0.5}, {{0.0}, {0.0}}), 5), std::invalid_argument);
    ScalarOperator nof = th::op(s.op.region, {"1", "0", "1"});
    CHECK_THROWS_AS(particular(nof, s.set), std::invalid_argument);
  }

  TEST_CASE("non-simple regions are refused") {
    Region r = fx::punctured_plane(1, 1e-2);
    ScalarOperator o = th::op(r, {"0", "1"}, "1");
    Classification c = classify(r);
    const Piece& p = c.pieces.front();
    FundamentalSet s = build_fundamental(o, p, section_fn(smooth_section(p)), piece_t_samples(p, 5));
    try {
      particular(o, s);
      FAIL("expected a refusal");
    } catch (const NotXSimpleError& e) {
      CHECK(std::string(e.what()).find("x-simple") != std::string::npos);
    }
    InhomOptions per_piece;
    per_piece.require_x_simple = false;
    CHECK(particular(o, s, per_piece).psi.all_ok());
  }

  TEST_CASE("solvability verdicts") {
    CHECK(solvability(fx::rectangle(0, 1, 0, 1, 1e-2)).solvable);
    CHECK(solvability(fx::stacked_rectangles(1e-2)).solvable);
    Solvability s = solvability(fx::punctured_plane(1, 1e-3));
    CHECK_FALSE(s.solvable);
    REQUIRE(s.components.size() == 1);
    REQUIRE(s.components[0].witness);
    CHECK(std::fabs(s.components[0].witness->t0) < 2e-3);
    CHECK(std::fabs(s.components[0].witness->x1) < 2e-3);
    REQUIRE(s.components[0].instance);
    CHECK(s.components[0].instance->f->str() == "1 / (x^2 + t^2)");
  }

  TEST_CASE("disjoint rectangles are solvable") {
    Region r;
    r.bbox = {0, 3, 0, 1};
    r.shapes = {Shape::make_rect(0, 1, 0, 1), Shape::make_rect(2, 3, 0, 1)};
    r.resolution = 1e-2;
    r.finalize();
    Solvability s = solvability(r);
    CHECK(s.solvable);
    CHECK(s.components.size() == 2);
  }
}
