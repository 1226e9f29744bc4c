#include "paramode/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace paramode::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw InputError(where + ": " + msg); }

std::string sub(const std::string& where, const std::string& key) { return where + "." + key; }
std::string sub(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "number must be finite");
  return v;
}

std::vector<double> numbers(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) fail(where, "expected an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(number(j[i], sub(where, i)));
  return out;
}

const json& array_at(const json& j, const char* key, const std::string& where) {
  const json& a = j.at(key);
  if (!a.is_array()) fail(sub(where, key), "expected an array");
  return a;
}

expr::Expr expression(const json& j, const std::string& where) {
  if (j.is_number()) return expr::Expr::constant(number(j, where));
  if (!j.is_string()) fail(where, "expected an expression string");
  try {
    return expr::Expr::parse(j.get<std::string>());
  } catch (const expr::ParseError& e) {
    fail(where, e.what());
  }
}

void check_schema(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a JSON object");
  if (j.contains("schema") && j["schema"] != kSchema)
    fail(sub(where, "schema"), "unsupported schema " + j["schema"].dump() + ", expected \"" + kSchema + "\"");
}

Shape shape_from_json(const json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) fail(where, "shape must be one of {\"rect\":..}, {\"disk\":..}, {\"expr\":..}");
  try {
    if (j.contains("rect")) {
      auto v = numbers(j["rect"], 4, sub(where, "rect"));
      return Shape::make_rect(v[0], v[1], v[2], v[3]);
    }
    if (j.contains("disk")) {
      auto v = numbers(j["disk"], 3, sub(where, "disk"));
      return Shape::make_disk(v[0], v[1], v[2]);
    }
    if (j.contains("expr")) {
      if (!j["expr"].is_string()) fail(sub(where, "expr"), "expected a predicate string");
      return Shape::make_predicate(j["expr"].get<std::string>());
    }
  } catch (const expr::ParseError& e) {
    fail(sub(where, "expr"), e.what());
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  fail(where, "unknown shape kind " + j.begin().key());
}

json shape_to_json(const Shape& s) {
  switch (s.kind) {
    case Shape::Kind::Rect: return {{"rect", {s.rect.t0, s.rect.t1, s.rect.x0, s.rect.x1}}};
    case Shape::Kind::Disk: return {{"disk", {s.disk.tc, s.disk.xc, s.disk.r}}};
    case Shape::Kind::Predicate: return {{"expr", s.pred_src}};
  }
  return {};
}

std::string dir_of(const std::string& path) {
  auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? "." : p.string();
}

Region region_field(const json& j, const std::string& base_dir, const std::string& where) {
  if (!j.contains("region")) fail(where, "missing \"region\"");
  const json& r = j["region"];
  if (r.is_string()) {
    std::filesystem::path p(r.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return load_region(p.string());
  }
  return region_from_json(r, sub(where, "region"));
}

std::optional<double> theta_field(const json& j, const std::string& where) {
  if (!j.contains("theta") || j["theta"].is_null()) return std::nullopt;
  return number(j["theta"], sub(where, "theta"));
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json parse_json(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw InputError(name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                     (pos == std::string::npos ? what : what.substr(pos)));
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write file");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json region_to_json(const Region& r) {
  json j;
  j["schema"] = kSchema;
  j["bbox"] = {r.bbox.t0, r.bbox.t1, r.bbox.x0, r.bbox.x1};
  j["shapes"] = json::array();
  for (const auto& s : r.shapes) j["shapes"].push_back(shape_to_json(s));
  j["exclude_shapes"] = json::array();
  for (const auto& s : r.exclude_shapes) j["exclude_shapes"].push_back(shape_to_json(s));
  j["exclude_points"] = json::array();
  for (const auto& p : r.exclude_points) j["exclude_points"].push_back({p.t, p.x});
  j["exclude_vsegments"] = json::array();
  for (const auto& s : r.exclude_vsegments) j["exclude_vsegments"].push_back({s.t, s.x_lo, s.x_hi});
  j["exclude_segments"] = json::array();
  for (const auto& s : r.exclude_segments) j["exclude_segments"].push_back({s.t0, s.x0, s.t1, s.x1});
  j["resolution"] = r.resolution;
  return j;
}

Region region_from_json(const json& j, const std::string& where) {
  check_schema(j, where);
  Region r;
  if (!j.contains("bbox")) fail(where, "missing \"bbox\"");
  auto b = numbers(j["bbox"], 4, sub(where, "bbox"));
  r.bbox = Rect{b[0], b[1], b[2], b[3]};
  if (!(r.bbox.t0 < r.bbox.t1 && r.bbox.x0 < r.bbox.x1)) fail(sub(where, "bbox"), "need t0 < t1 and x0 < x1");
  if (j.contains("shapes")) {
    const json& a = array_at(j, "shapes", where);
    for (std::size_t i = 0; i < a.size(); ++i) r.shapes.push_back(shape_from_json(a[i], sub(sub(where, "shapes"), i)));
  }
  if (j.contains("exclude_shapes")) {
    const json& a = array_at(j, "exclude_shapes", where);
    for (std::size_t i = 0; i < a.size(); ++i)
      r.exclude_shapes.push_back(shape_from_json(a[i], sub(sub(where, "exclude_shapes"), i)));
  }
  if (j.contains("exclude_points")) {
    const json& a = array_at(j, "exclude_points", where);
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto v = numbers(a[i], 2, sub(sub(where, "exclude_points"), i));
      r.exclude_points.push_back({v[0], v[1]});
    }
  }
  if (j.contains("exclude_vsegments")) {
    const json& a = array_at(j, "exclude_vsegments", where);
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto v = numbers(a[i], 3, sub(sub(where, "exclude_vsegments"), i));
      r.exclude_vsegments.push_back({v[0], v[1], v[2]});
    }
  }
  if (j.contains("exclude_segments")) {
    const json& a = array_at(j, "exclude_segments", where);
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto v = numbers(a[i], 4, sub(sub(where, "exclude_segments"), i));
      r.exclude_segments.push_back({v[0], v[1], v[2], v[3]});
    }
  }
  if (j.contains("resolution")) {
    r.resolution = number(j["resolution"], sub(where, "resolution"));
    if (!(r.resolution > 0)) fail(sub(where, "resolution"), "must be positive");
  }
  try {
    r.finalize();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  if (j.contains("dyadic_punctures")) {
    const json& d = j["dyadic_punctures"];
    int depth = 0;
    if (d.is_string() && d.get<std::string>() == "auto") depth = r.auto_dyadic_depth();
    else if (d.is_number_integer() && d.get<int>() >= 1 && d.get<int>() <= 24) depth = d.get<int>();
    else fail(sub(where, "dyadic_punctures"), "expected an integer in 1..24 or \"auto\"");
    r.add_dyadic_punctures(depth);
  }
  return r;
}

Region load_region(const std::string& path) {
  json j = read_json_file(path);
  // a problem file may be passed where a region is expected
  if (j.is_object() && j.contains("region") && !j.contains("bbox"))
    return region_field(j, dir_of(path), path);
  return region_from_json(j, path);
}

json problem_to_json(const ScalarOperator& op, std::optional<double> theta) {
  json j;
  j["schema"] = kSchema;
  j["region"] = region_to_json(op.region);
  j["region"].erase("schema");
  j["order"] = op.p;
  j["g"] = json::array();
  for (const auto& g : op.g) j["g"].push_back(g.str());
  if (op.f) j["f"] = op.f->str();
  if (theta) j["theta"] = *theta;
  return j;
}

Problem problem_from_json(const json& j, const std::string& base_dir, const std::string& where) {
  check_schema(j, where);
  Problem pr;
  Region region = region_field(j, base_dir, where);
  if (!j.contains("g")) fail(where, "missing \"g\"");
  const json& g = array_at(j, "g", where);
  if (g.size() < 2) fail(sub(where, "g"), "need at least g^0 and g^1");
  std::vector<expr::Expr> coeffs;
  for (std::size_t i = 0; i < g.size(); ++i) coeffs.push_back(expression(g[i], sub(sub(where, "g"), i)));
  if (j.contains("order")) {
    if (!j["order"].is_number_integer()) fail(sub(where, "order"), "expected an integer");
    if (j["order"].get<long>() + 1 != static_cast<long>(g.size()))
      fail(sub(where, "order"), "order p needs p+1 coefficients in g, got " + std::to_string(g.size()));
  }
  std::optional<expr::Expr> f;
  if (j.contains("f") && !j["f"].is_null()) f = expression(j["f"], sub(where, "f"));
  try {
    pr.op = ScalarOperator::make(std::move(region), std::move(coeffs), f);
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  pr.theta = theta_field(j, where);
  return pr;
}

Problem load_problem(const std::string& path) { return problem_from_json(read_json_file(path), dir_of(path), path); }

json system_to_json(const LinearSystem& sys, std::optional<double> theta) {
  json j;
  j["schema"] = kSchema;
  j["region"] = region_to_json(sys.region);
  j["region"].erase("schema");
  j["A"] = json::array();
  for (const auto& row : sys.A) {
    json r = json::array();
    for (const auto& e : row) r.push_back(e.str());
    j["A"].push_back(r);
  }
  j["F"] = json::array();
  for (const auto& e : sys.F) j["F"].push_back(e.str());
  if (theta) j["theta"] = *theta;
  return j;
}

SystemProblem system_from_json(const json& j, const std::string& base_dir, const std::string& where) {
  check_schema(j, where);
  SystemProblem sp;
  Region region = region_field(j, base_dir, where);
  if (!j.contains("A")) fail(where, "missing \"A\"");
  const json& A = array_at(j, "A", where);
  std::vector<std::vector<expr::Expr>> a;
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::string w = sub(sub(where, "A"), i);
    if (!A[i].is_array() || A[i].size() != A.size()) fail(w, "A must be a square array of expressions");
    std::vector<expr::Expr> row;
    for (std::size_t k = 0; k < A[i].size(); ++k) row.push_back(expression(A[i][k], sub(w, k)));
    a.push_back(std::move(row));
  }
  std::vector<expr::Expr> F;
  if (j.contains("F")) {
    const json& f = array_at(j, "F", where);
    if (f.size() != A.size()) fail(sub(where, "F"), "F must have one entry per row of A");
    for (std::size_t i = 0; i < f.size(); ++i) F.push_back(expression(f[i], sub(sub(where, "F"), i)));
  }
  try {
    sp.sys = LinearSystem::make(std::move(region), std::move(a), std::move(F));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  sp.theta = theta_field(j, where);
  return sp;
}

SystemProblem load_system(const std::string& path) { return system_from_json(read_json_file(path), dir_of(path), path); }

json zeta_to_json(const Zeta& z) { return {{"schema", kSchema}, {"t", z.t}, {"zeta", z.z}}; }

Zeta zeta_from_json(const json& j, const std::string& where) {
  check_schema(j, where);
  if (!j.contains("t") || !j.contains("zeta")) fail(where, "need \"t\" and \"zeta\"");
  const json& t = array_at(j, "t", where);
  const json& z = array_at(j, "zeta", where);
  std::vector<double> tt = numbers(t, t.size(), sub(where, "t"));
  for (std::size_t i = 1; i < tt.size(); ++i)
    if (!(tt[i] > tt[i - 1])) fail(sub(where, "t"), "samples must increase strictly");
  if (tt.empty()) fail(sub(where, "t"), "need at least one sample");
  std::vector<std::vector<double>> zz;
  for (std::size_t s = 0; s < z.size(); ++s) zz.push_back(numbers(z[s], tt.size(), sub(sub(where, "zeta"), s)));
  return Zeta::make(std::move(tt), std::move(zz));
}

Zeta load_zeta(const std::string& path) { return zeta_from_json(read_json_file(path), path); }

json witness_to_json(const Witness& w) {
  json u = json::array();
  for (const auto& p : w.upsilon) u.push_back({p.t, p.x});
  return {{"t0", w.t0}, {"eps", w.eps}, {"x1", w.x1}, {"x2", w.x2}, {"reflected", w.reflected}, {"upsilon", u}};
}

json classification_to_json(const Classification& c) {
  json j;
  j["schema"] = kSchema;
  j["x_simple"] = c.x_simple;
  j["components"] = c.components.size();
  j["component_list"] = json::array();
  for (const auto& k : c.components)
    j["component_list"].push_back({{"id", k.id},
                                   {"t_lo", k.t_lo},
                                   {"t_hi", k.t_hi},
                                   {"x_lo", k.x_lo},
                                   {"x_hi", k.x_hi},
                                   {"x_simple", k.x_simple},
                                   {"max_intervals", k.max_intervals}});
  j["pieces"] = json::array();
  for (const auto& p : c.pieces)
    j["pieces"].push_back({{"component", p.component}, {"t_lo", p.t_lo}, {"t_hi", p.t_hi}, {"columns", p.t.size()}});
  j["witness"] = c.witness ? witness_to_json(*c.witness) : json(nullptr);
  j["warnings"] = c.warnings;
  j["n_columns"] = c.n_columns;
  j["max_intervals"] = c.max_intervals;
  return j;
}

json verdict_to_json(const Verdict& v) {
  return {{"verdict", to_string(v.kind)}, {"reason", to_string(v.reason)}, {"explanation", v.explanation}};
}

json report_to_json(const pathology::PathologyReport& r) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = pathology::to_string(r.kind);
  j["pass"] = r.pass;
  j["measurements"] = json::array();
  for (const auto& m : r.measurements)
    j["measurements"].push_back({{"name", m.name},
                                 {"param", m.param},
                                 {"value", finite_or_null(m.value)},
                                 {"expected", finite_or_null(m.expected)},
                                 {"error", finite_or_null(m.error)},
                                 {"tolerance", finite_or_null(m.tolerance)},
                                 {"pass", m.pass}});
  j["notes"] = r.notes;
  return j;
}

json solver_to_json(const SolverOptions& o) {
  return {{"rtol", o.rtol}, {"atol", o.atol}, {"blowup", o.blowup}, {"min_step", o.min_step}, {"log_domain", o.log_domain}};
}

json status_counts(const ParamSolution& u) {
  std::size_t err = 0;
  for (const auto& s : u.slices) err += s.error.empty() ? 0 : 1;
  return {{"ok", u.count(SliceStatus::ok) - err},
          {"blowup", u.count(SliceStatus::blowup)},
          {"left_domain", u.count(SliceStatus::left_domain)},
          {"error", err}};
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Csv::Csv(std::vector<std::string> header) : cols_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
  text_ += "\n";
}

void Csv::row(const std::vector<double>& values) {
  if (values.size() != cols_) throw std::logic_error("csv row has the wrong width");
  for (std::size_t i = 0; i < values.size(); ++i) text_ += (i ? "," : "") + csv_number(values[i]);
  text_ += "\n";
}

std::string grid_csv(const ParamSolution& u, std::size_t nx) {
  std::vector<std::string> header = {"t", "x", "u"};
  for (int k = 1; k < u.p; ++k) header.push_back("u_" + std::to_string(k));
  Csv csv(header);
  std::vector<double> v(static_cast<std::size_t>(u.p));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (double x : common_nodes({&u}, i, nx)) {
      if (!u.eval(i, x, v.data())) continue;
      std::vector<double> r = {u.t[i], x};
      r.insert(r.end(), v.begin(), v.end());
      csv.row(r);
    }
  return csv.str();
}

std::string field_csv(const SampledField& f, const std::string& name) {
  Csv csv({"t", "x", name});
  for (std::size_t i = 0; i < f.t.size(); ++i)
    for (std::size_t k = 0; k < f.x[i].size(); ++k) csv.row({f.t[i], f.x[i][k], f.u[i][k]});
  return csv.str();
}

void RunConfig::validate() const {
  auto pos = [](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) throw InputError(std::string("--") + name + " must be positive");
  };
  if (h) pos(*h, "h");
  pos(rtol, "rtol");
  pos(atol, "atol");
  pos(blowup, "blowup");
  if (nt < 1) throw InputError("--nt must be positive");
  if (nx < 2) throw InputError("--nx must be at least 2");
}

SolverOptions RunConfig::solver() const {
  SolverOptions o;
  o.rtol = rtol;
  o.atol = atol;
  o.blowup = blowup;
  return o;
}

json RunConfig::to_json() const {
  return {{"h", h ? json(*h) : json(nullptr)}, {"rtol", rtol}, {"atol", atol}, {"blowup", blowup},
          {"nt", nt},                          {"nx", nx},     {"seed", seed}};
}

}  // namespace paramode::io
