#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "helpers.hpp"
#include "paramode/io.hpp"
#include "paramode/reproduce.hpp"

using namespace paramode;
namespace fx = paramode::fixtures;

namespace {

std::string failure(const std::string& text) {
  try {
    io::region_from_json(io::parse_json(text, "in.json"), "in.json");
  } catch (const io::InputError& e) {
    return e.what();
  } catch (const expr::ParseError& e) {
    return std::string("expr: ") + e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("region round trip") {
    Region r = fx::annulus(1, 0.4, 2e-3);
    r.exclude_points.push_back({0.9, 0.1});
    r.exclude_vsegments.push_back({0.5, 0.5, 0.7});
    r.exclude_segments.push_back({-0.9, -0.1, -0.5, 0.1});
    r.shapes.push_back(Shape::make_predicate("x > 0.9 && t < -0.9"));
    r.finalize();
    io::json j = io::region_to_json(r);
    Region b = io::region_from_json(io::parse_json(io::dump(j), "mem"), "mem");
    CHECK(io::dump(io::region_to_json(b)) == io::dump(j));
    for (double t : {-0.95, -0.3, 0.0, 0.5, 0.9})
      for (double x : {-0.5, 0.0, 0.1, 0.6, 0.95}) CHECK(r.contains(t, x) == b.contains(t, x));
  }

  TEST_CASE("dyadic punctures from JSON") {
    Region a = io::region_from_json(
        io::parse_json(R"({"bbox":[0,1,0,1],"dyadic_punctures":3,"resolution":0.002})", "m"), "m");
    CHECK_FALSE(a.contains(0.25, 0.75));
    CHECK(a.exclude_points.size() == 1 + 3 + 7);
    Region b = io::region_from_json(
        io::parse_json(R"({"bbox":[0,1,0,1],"dyadic_punctures":"auto","resolution":0.002})", "m"), "m");
    CHECK(classify(b).pieces.empty());
  }

  TEST_CASE("diagnostics carry positions") {
    std::string e = failure("{\"bbox\": [0, 1, 0, 1],\n \"shapes\": [\n");
    CHECK(e.rfind("in.json:3:", 0) == 0);
    CHECK(failure(R"({"bbox": [0, 1, 0]})").find("bbox") != std::string::npos);
    CHECK(failure(R"({"bbox": [1, 0, 0, 1]})").find("bbox") != std::string::npos);
    CHECK(failure(R"({"bbox": [0, 1, 0, 1], "shapes": [{"expr": "x <"}]})").find("offset 4") != std::string::npos);
    CHECK(failure(R"({"bbox": [0, 1, 0, 1], "resolution": -1})").find("resolution") != std::string::npos);
    CHECK(failure(R"({"bbox": [0, 1, 0, 1], "shapes": [{"blob": 1}]})").find("shapes") != std::string::npos);
    CHECK(failure(R"({"bbox": [0, 1, 0, 1], "schema": "other/9"})").find("schema") != std::string::npos);
  }

  TEST_CASE("problem files") {
    io::Problem p = io::problem_from_json(
        io::parse_json(R"({"region": {"bbox": [0,1,0,1]}, "order": 2, "g": ["1","0","1"], "f": "x", "theta": 0.5})", "m"),
        ".", "m");
    CHECK(p.op.p == 2);
    CHECK(*p.theta == 0.5);
    CHECK(p.op.f->str() == "x");
    CHECK_THROWS_AS(io::problem_from_json(io::parse_json(R"({"region": {"bbox": [0,1,0,1]}, "order": 3, "g": ["1","0","1"]})", "m"), ".", "m"),
                    io::InputError);
    CHECK_THROWS_AS(io::problem_from_json(io::parse_json(R"({"region": "missing.json", "order": 1, "g": ["1","1"]})", "m"), ".", "m"),
                    io::InputError);
  }

  TEST_CASE("system files") {
    Region r = fx::rectangle(0, 1, 0, 1, 1e-2);
    LinearSystem s = th::sys(r, {{"0", "1"}, {"-t", "x^2"}}, {"0", "sin(x)"});
    io::json j = io::system_to_json(s, 0.25);
    io::SystemProblem b = io::system_from_json(io::parse_json(io::dump(j), "m"), ".", "m");
    CHECK(b.sys.A[1][1] == s.A[1][1]);
    CHECK(b.sys.F[1] == s.F[1]);
    CHECK(*b.theta == 0.25);
    CHECK(io::dump(io::system_to_json(b.sys, b.theta)) == io::dump(j));
  }

  TEST_CASE("zeta files") {
    Zeta z = Zeta::make({0, 0.5, 1}, {{1, 2, 3}, {0, 0, 1.5}});
    Zeta b = io::zeta_from_json(io::parse_json(io::dump(io::zeta_to_json(z)), "m"), "m");
    CHECK(b.t == z.t);
    CHECK(b.z == z.z);
    CHECK_THROWS_AS(io::zeta_from_json(io::parse_json(R"({"t": [0, 0], "zeta": [[1, 2]]})", "m"), "m"), io::InputError);
  }

  TEST_CASE("CSV numbers round-trip") {
    for (double v : {0.1, 1.0 / 3, -2.5e-300, 6.02e23}) CHECK(std::stod(io::csv_number(v)) == v);
    io::Csv c({"a", "b"});
    c.row({1, 0.5});
    CHECK(c.str() == "a,b\n1,0.5\n");
    CHECK_THROWS(c.row({1}));
  }

  TEST_CASE("configuration validation") {
    io::RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.rtol = 0;
    CHECK_THROWS_AS(c.validate(), io::InputError);
    c.rtol = 1e-9;
    c.h = -1;
    CHECK_THROWS_AS(c.validate(), io::InputError);
    c.h.reset();
    c.nx = 0;
    CHECK_THROWS_AS(c.validate(), io::InputError);
  }

  TEST_CASE("classification JSON") {
    io::json j = io::classification_to_json(classify(fx::rectangle(0, 1, 0, 1, 1e-2)));
    CHECK(j["x_simple"] == true);
    CHECK(j["components"] == 1);
    CHECK(j["schema"] == io::kSchema);
  }

  TEST_CASE("reports are deterministic") {
    reproduce::Result a = reproduce::run("ex4.1"), b = reproduce::run("ex4.1");
    CHECK(io::dump(a.report) == io::dump(b.report));
    CHECK(a.csv == b.csv);
    CHECK_THROWS_AS(reproduce::run("ex9.9"), std::invalid_argument);
  }
}
