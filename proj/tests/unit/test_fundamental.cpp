#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace paramode;
namespace fx = paramode::fixtures;

namespace {

FundamentalSet set_on(const ScalarOperator& o, double theta, std::size_t nt = 21) {
  Piece p = as_piece(o.region);
  return build_fundamental(o, p, constant_fn(theta), piece_t_samples(p, nt));
}

}  // namespace

TEST_SUITE("fundamental") {
  TEST_CASE("u_xx + u: cos and sin, unit Wronskian") {
    FundamentalSet s = set_on(th::op(fx::rectangle(0, 1, -1, 1), {"1", "0", "1"}), 0);
    CHECK(th::sup_error(s.phi(0), 41, [](double, double x) { return std::cos(x); }) <= 1e-8);
    CHECK(th::sup_error(s.phi(1), 41, [](double, double x) { return std::sin(x); }) <= 1e-8);
    WronskianField w = wronskian(s, 41);
    for (const auto& row : w.det)
      for (double v : row) CHECK(std::fabs(v - 1) <= 1e-8);
    CHECK(w.max_rel_dev <= 1e-8);
    CHECK(w.max_theta_dev <= 1e-12);
  }

  TEST_CASE("first-order puncture operator on t > 0.1") {
    Region r = fx::rectangle(0.1, 1, -2, 2);
    FundamentalSet s = set_on(th::op(r, {"-1/(x^2+t^2)", "1"}), 0);
    double rel = 0;
    for (std::size_t i = 0; i < s.t().size(); ++i)
      for (double x : common_nodes({&s.phi(0)}, i, 41)) {
        const double t = s.t()[i];
        rel = std::max(rel, std::fabs(s.phi(0).value(i, x) / std::exp(std::atan(x / t) / t) - 1));
      }
    CHECK(rel <= 1e-6);
  }

  TEST_CASE("u_xx = 0: 1 and x") {
    FundamentalSet s = set_on(th::op(fx::rectangle(0, 1, -1, 1), {"0", "0", "1"}), 0);
    CHECK(th::sup_error(s.phi(0), 21, [](double, double) { return 1.0; }) <= 1e-12);
    CHECK(th::sup_error(s.phi(1), 21, [](double, double x) { return x; }) <= 1e-12);
    WronskianField w = wronskian(s, 21);
    CHECK(w.max_rel_dev <= 1e-12);
  }

  TEST_CASE("delta data at the section") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, 0, 2), {"x", "t", "1+x", "1"});
    Section sec = smooth_section(as_piece(o.region));
    Piece p = as_piece(o.region);
    FundamentalSet s = build_fundamental(o, p, section_fn(sec), piece_t_samples(p, 9));
    for (std::size_t i = 0; i < s.t().size(); ++i) {
      const double th0 = sec(s.t()[i]);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(s.phi(a).value(i, th0, b) == (a == b ? 1.0 : 0.0));
    }
    WronskianField w = wronskian(s, 21);
    CHECK(w.max_theta_dev <= 1e-12);
    CHECK(w.max_rel_dev <= 1e-6);
  }

  TEST_CASE("u_xx + u_x: W = exp(-(x - theta))") {
    FundamentalSet s = set_on(th::op(fx::rectangle(0, 1, -1, 1), {"0", "1", "1"}), 0.2);
    WronskianField w = wronskian(s, 31);
    for (std::size_t i = 0; i < w.t.size(); ++i)
      for (std::size_t k = 0; k < w.x[i].size(); ++k)
        CHECK(std::fabs(w.det[i][k] - std::exp(-(w.x[i][k] - 0.2))) <= 1e-7);
  }

  TEST_CASE("verdicts") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, -1, 1), {"1", "0", "1"});
    FundamentalSet s = set_on(o, 0);
    WronskianField w = wronskian(s, 21);
    Verdict v = is_fundamental(s, w, o.region);
    CHECK(v.kind == VerdictKind::fundamental);
    CHECK(v.explanation.find("Wronskian") != std::string::npos);

    WronskianField z = w;
    z.nonvanishing = false;
    CHECK(is_fundamental(s, z, o.region).kind == VerdictKind::not_fundamental);
  }

  TEST_CASE("stacked rectangles: nonvanishing only") {
    Region r = fx::stacked_rectangles(1e-2);
    ScalarOperator o = th::op(r, {"1", "0", "1"});
    Classification c = classify(r);
    std::vector<FundamentalSet> sets;
    std::vector<WronskianField> ws;
    for (std::size_t k = 0; k < c.pieces.size(); ++k) {
      const Piece& p = c.pieces[k];
      sets.push_back(build_fundamental(o, p, section_fn(smooth_section(p)), piece_t_samples(p, 9), {},
                                       static_cast<int>(k)));
      ws.push_back(wronskian(sets.back(), 11));
    }
    std::vector<const FundamentalSet*> sp;
    std::vector<const WronskianField*> wp;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      sp.push_back(&sets[k]);
      wp.push_back(&ws[k]);
    }
    REQUIRE(sets.size() == 2);
    Verdict v = is_fundamental(sp, wp, r);
    CHECK(v.kind == VerdictKind::nonvanishing_only);
    CHECK(v.reason == Reason::components_overlap);
  }

  TEST_CASE("expansion of cos + 2 sin") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, -1, 1), {"1", "0", "1"});
    FundamentalSet s = set_on(o, 0);
    ParamSolution u = sweep(s.sys, constant_fn(0), [](double) { return std::vector<double>{1, 2}; }, s.t());
    Zeta z = expand(u, s);
    for (std::size_t i = 0; i < z.t.size(); ++i) {
      CHECK(std::fabs(z.z[0][i] - 1) <= 1e-8);
      CHECK(std::fabs(z.z[1][i] - 2) <= 1e-8);
    }
    Zeta e1 = expand(s.phi(0), s);
    for (std::size_t i = 0; i < e1.t.size(); ++i) {
      CHECK(e1.z[0][i] == 1);
      CHECK(e1.z[1][i] == 0);
    }
  }

  TEST_CASE("expansion with t-dependent coefficients") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, 0, 1), {"t", "x", "1"});
    FundamentalSet s = set_on(o, 0.3);
    std::vector<std::vector<double>> z(2);
    for (double t : s.t()) {
      z[0].push_back(std::sin(t));
      z[1].push_back(t * t);
    }
    Zeta zeta = Zeta::make(s.t(), z);
    ParamSolution u = combine(s, zeta);
    Zeta back = expand(u, s);
    for (std::size_t i = 0; i < back.t.size(); ++i) {
      CHECK(std::fabs(back.z[0][i] - std::sin(back.t[i])) <= 1e-7);
      CHECK(std::fabs(back.z[1][i] - back.t[i] * back.t[i]) <= 1e-7);
    }
    CHECK(reconstruction_error(u, s, zeta, 21) <= 1e-7);
  }

  TEST_CASE("Zeta interpolates and validates") {
    Zeta z = Zeta::make({0, 1, 2}, {{0, 1, 4}});
    CHECK(z(1)[0] == 1);
    CHECK(z(0.5)[0] > 0);
    CHECK(z(0.5)[0] < 1);
    CHECK_THROWS(Zeta::make({0, 1}, {{0, 1, 2}}));
  }

  TEST_CASE("leading coefficient must not vanish") {
    ScalarOperator o = th::op(fx::rectangle(0, 1, -1, 1, 1e-2), {"1", "x"});
    CHECK_THROWS(build_fundamental(o, 9));
  }
}
