// paramode: command-line front end.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "paramode/io.hpp"
#include "paramode/reproduce.hpp"

using namespace paramode;
using io::json;

namespace {

struct Slot {
  Piece piece;
  SectionFn theta;
  std::vector<double> t;
};

void apply_resolution(Region& r, const io::RunConfig& cfg) {
  if (cfg.h) {
    r.resolution = *cfg.h;
    r.finalize();
  }
}

// every x-simple piece of the region with its section and t samples
std::vector<Slot> plan(const Region& region, const Classification& cls, std::optional<double> theta, std::size_t nt) {
  if (cls.pieces.empty())
    throw io::InputError("region has no x-simple piece at resolution " + expr::format_number(region.h()) +
                         "; refine --h or change the region");
  std::vector<Slot> out;
  for (const Piece& p : cls.pieces) {
    Slot s;
    s.piece = p;
    if (theta) {
      Section sec = constant_section(*theta, p);
      if (!(section_margin(sec, p) > 0))
        throw io::InputError("theta = " + expr::format_number(*theta) + " leaves a piece of the region");
      s.theta = constant_fn(*theta);
    } else {
      s.theta = section_fn(smooth_section(p));
    }
    s.t = piece_t_samples(p, nt);
    out.push_back(std::move(s));
  }
  return out;
}

json grid_json(const ParamSolution& u, std::size_t nx) {
  json t = u.t, x = json::array(), v = json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto nodes = common_nodes({&u}, i, nx);
    json row = json::array();
    for (double xx : nodes) row.push_back(u.value(i, xx));
    x.push_back(nodes);
    v.push_back(row);
  }
  return {{"t", t}, {"x", x}, {"u", v}};
}

void emit(const std::string& path, const json& j) { io::write_text(path.empty() ? "-" : path, io::dump(j)); }

int cmd_analyze(const std::string& file, bool csv, const io::RunConfig& cfg) {
  Region r = io::load_region(file);
  apply_resolution(r, cfg);
  Classification cls = classify(r);
  if (csv) {
    Raster ras = rasterize(r);
    io::Csv out({"t", "lo", "hi", "component"});
    for (std::size_t i = 0; i < ras.columns.size(); ++i)
      for (std::size_t k = 0; k < ras.columns[i].intervals.size(); ++k) {
        const Interval& iv = ras.columns[i].intervals[k];
        out.row({ras.columns[i].t, iv.lo, iv.hi, static_cast<double>(ras.label[i][k])});
      }
    io::write_text(cfg.out.empty() ? "-" : cfg.out, out.str());
  } else {
    emit(cfg.out, io::classification_to_json(cls));
  }
  return 0;
}

int cmd_fundamental(const std::string& file, const io::RunConfig& cfg, bool check_only, double tol) {
  io::Problem pr = io::load_problem(file);
  apply_resolution(pr.op.region, cfg);
  Classification cls = classify(pr.op.region);
  auto slots = plan(pr.op.region, cls, pr.theta, cfg.nt);
  std::vector<FundamentalSet> sets;
  std::vector<WronskianField> ws;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    sets.push_back(build_fundamental(pr.op, slots[k].piece, slots[k].theta, slots[k].t, cfg.solver(),
                                     static_cast<int>(k)));
    ws.push_back(wronskian(sets.back(), cfg.nx));
  }
  std::vector<const FundamentalSet*> sp;
  std::vector<const WronskianField*> wp;
  double rel = 0, at_theta = 0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    sp.push_back(&sets[k]);
    wp.push_back(&ws[k]);
    rel = std::max(rel, ws[k].max_rel_dev);
    at_theta = std::max(at_theta, ws[k].max_theta_dev);
  }
  Verdict v = is_fundamental(sp, wp, pr.op.region);
  bool ok = at_theta <= 1e-12 && rel <= tol;
  json j;
  j["schema"] = io::kSchema;
  j["verdict"] = io::verdict_to_json(v);
  j["max_rel_dev"] = rel;
  j["max_theta_dev"] = at_theta;
  j["tolerance"] = tol;
  j["pass"] = ok;
  j["config"] = cfg.to_json();
  if (!check_only) {
    j["pieces"] = json::array();
    for (std::size_t k = 0; k < sets.size(); ++k) {
      json p;
      p["piece"] = k;
      p["t_range"] = {slots[k].piece.t_lo, slots[k].piece.t_hi};
      json th = json::array();
      for (double t : sets[k].t()) th.push_back(slots[k].theta(t));
      p["theta"] = th;
      p["phi"] = json::array();
      for (int s = 0; s < sets[k].p(); ++s) {
        json g = grid_json(sets[k].phi(s), cfg.nx);
        g["status"] = io::status_counts(sets[k].phi(s));
        p["phi"].push_back(g);
      }
      p["wronskian"] = {{"x", ws[k].x}, {"W", ws[k].det}, {"predicted", ws[k].predicted}};
      j["pieces"].push_back(p);
    }
  }
  emit(cfg.out, j);
  return ok ? 0 : 1;
}

std::vector<double> default_init(int p) {
  std::vector<double> v(static_cast<std::size_t>(p), 0.0);
  v[0] = 1;
  return v;
}

int cmd_solve(const std::string& file, const io::RunConfig& cfg, const std::vector<double>& init_in) {
  io::Problem pr = io::load_problem(file);
  apply_resolution(pr.op.region, cfg);
  std::vector<double> init = init_in.empty() ? default_init(pr.op.p) : init_in;
  if (static_cast<int>(init.size()) != pr.op.p) throw io::InputError("--init needs one value per order");
  Classification cls = classify(pr.op.region);
  auto slots = plan(pr.op.region, cls, pr.theta, cfg.nt);
  LinearSystem sys = companion(pr.op);
  std::string csv;
  json rep;
  rep["schema"] = io::kSchema;
  rep["pieces"] = json::array();
  bool ok = true;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    ParamSolution u = sweep(sys, slots[k].theta, [&init](double) { return init; }, slots[k].t, cfg.solver(),
                            static_cast<int>(k));
    std::string part = io::grid_csv(u, cfg.nx);
    csv += k == 0 ? part : part.substr(part.find('\n') + 1);
    json st = io::status_counts(u);
    rep["pieces"].push_back({{"piece", k}, {"status", st}});
    ok = ok && st["error"] == 0;
  }
  rep["config"] = cfg.to_json();
  io::write_text(cfg.out.empty() ? "-" : cfg.out, csv);
  if (!cfg.report.empty()) emit(cfg.report, rep);
  return ok ? 0 : 1;
}

int cmd_solve_inhom(const std::string& file, const std::string& zeta_file, const io::RunConfig& cfg) {
  io::Problem pr = io::load_problem(file);
  apply_resolution(pr.op.region, cfg);
  if (!pr.op.f) throw io::InputError(file + ": solve-inhom needs \"f\"");
  Classification cls = classify(pr.op.region);
  if (!cls.x_simple)
    throw NotXSimpleError("region is not x-simple; P u = f has continuous solutions for every continuous f only "
                          "when each connected component is x-simple");
  Piece piece = as_piece(pr.op.region);
  Section sec = smooth_section(piece);
  SectionFn theta = pr.theta ? constant_fn(*pr.theta) : section_fn(sec);
  auto t = piece_t_samples(piece, cfg.nt);
  FundamentalSet set = build_fundamental(pr.op, piece, theta, t, cfg.solver());
  ParticularSolution psi = particular(pr.op, set, InhomOptions{cfg.solver()});
  Zeta zeta = zeta_file.empty()
                  ? Zeta::make({t.front()}, std::vector<std::vector<double>>(static_cast<std::size_t>(pr.op.p), {0.0}))
                  : io::load_zeta(zeta_file);
  if (zeta.p() != pr.op.p) throw io::InputError(zeta_file + ": zeta needs one row per order");
  SampledField u = general(set, psi, zeta, cfg.nx);
  json res = nullptr;  // needs enough nodes for the stencils
  try {
    res = residual(pr.op, u);
  } catch (const std::invalid_argument&) {
  }
  io::write_text(cfg.out.empty() ? "-" : cfg.out, io::field_csv(u, "u"));
  json rep = {{"schema", io::kSchema},
              {"cross_check_dev", psi.cross_check_dev},
              {"quad_error", psi.quad_error},
              {"residual", res},
              {"status", io::status_counts(psi.psi)},
              {"config", cfg.to_json()}};
  bool ok = psi.cross_check_dev <= 1e-5 && psi.psi.all_ok();
  rep["pass"] = ok;
  if (!cfg.report.empty()) emit(cfg.report, rep);
  return ok ? 0 : 1;
}

int cmd_system(const std::string& file, const io::RunConfig& cfg) {
  io::SystemProblem sp = io::load_system(file);
  apply_resolution(sp.sys.region, cfg);
  Classification cls = classify(sp.sys.region);
  auto slots = plan(sp.sys.region, cls, sp.theta, cfg.nt);
  json rep;
  rep["schema"] = io::kSchema;
  rep["pieces"] = json::array();
  bool nonvanishing = true, complete = true, ok = true;
  std::string csv;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    FundamentalMatrix fm = build_fundamental_matrix(sp.sys, slots[k].theta, slots[k].t, cfg.solver(),
                                                    static_cast<int>(k));
    DeterminantField d = determinant_field(fm, sp.sys, cfg.nx);
    nonvanishing = nonvanishing && d.nonvanishing;
    complete = complete && fm.complete();
    ok = ok && d.max_theta_dev <= 1e-12 && d.max_rel_dev <= 1e-6;
    json p = {{"piece", k}, {"max_rel_dev", d.max_rel_dev}, {"max_theta_dev", d.max_theta_dev}};
    if (!sp.sys.homogeneous()) {
      InhomOptions io_opt{cfg.solver()};
      io_opt.require_x_simple = false;  // each piece on its own
      SystemParticular v = solve_system_inhom(sp.sys, fm, io_opt);
      p["cross_check_dev"] = v.cross_check_dev;
      ok = ok && v.cross_check_dev <= 1e-6;
      std::string part = io::grid_csv(v.v, cfg.nx);
      csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
    } else {
      io::Csv c({"t", "x", "det"});
      for (std::size_t i = 0; i < d.t.size(); ++i)
        for (std::size_t m = 0; m < d.x[i].size(); ++m) c.row({d.t[i], d.x[i][m], d.det[i][m]});
      csv += csv.empty() ? c.str() : c.str().substr(c.str().find('\n') + 1);
    }
    rep["pieces"].push_back(p);
  }
  Verdict v = fundamentality_verdict(nonvanishing, complete, cls, "determinant");
  rep["verdict"] = io::verdict_to_json(v);
  rep["pass"] = ok;
  rep["config"] = cfg.to_json();
  if (!cfg.out.empty()) io::write_text(cfg.out, csv);
  emit(cfg.report, rep);
  return ok ? 0 : 1;
}

struct PathologyArgs {
  std::string kind = "hom";
  int p = 2;
  double c = 1;
  int K = 3;
  int k_max = 10;
  std::string h1 = "1", h0 = "0";
};

int cmd_pathology(const std::string& file, const PathologyArgs& a, const io::RunConfig& cfg) {
  Region r = io::load_region(file);
  apply_resolution(r, cfg);
  json problem;
  pathology::PathologyReport rep;
  if (a.kind == "punctured-square") {
    auto H = pathology::punctured_square_H(a.K);
    ScalarOperator op = H.op(r);
    problem = io::problem_to_json(op);
    pathology::CrossingOptions co;
    co.solver = cfg.solver();
    rep = pathology::verify_forced_vanishing(H, r, co);
  } else {
    Witness w = find_witness(r);
    if (a.kind == "hom") {
      auto ce = pathology::gen_hom_counterexample(r, w, a.p, a.c);
      problem = io::problem_to_json(ce.op);
      pathology::DecayOptions d;
      d.solver = cfg.solver();
      rep = pathology::verify_wronskian_vanishing(ce, d);
    } else if (a.kind == "inhom") {
      auto ce = pathology::gen_inhom_counterexample(r, w);
      problem = io::problem_to_json(ce.op);
      rep = pathology::verify_no_global_solution(ce, {1e-1, 1e-2, 1e-3}, cfg.solver());
    } else {
      ScalarOperator op = ScalarOperator::parse(r, {a.h0, a.h1});
      auto rc = pathology::gen_nonsolvable_rhs_first_order(op, w, a.k_max);
      problem = io::problem_to_json(rc.op);
      rep = pathology::verify_nonsolvable_rhs(rc, cfg.solver());
    }
    problem["witness"] = io::witness_to_json(w);
  }
  emit(cfg.out, problem);
  json rj = io::report_to_json(rep);
  rj["config"] = cfg.to_json();
  if (!cfg.report.empty()) emit(cfg.report, rj);
  else std::cerr << "pathology " << pathology::to_string(rep.kind) << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_reproduce(const std::string& id, const io::RunConfig& cfg) {
  reproduce::Result res = reproduce::run(id, cfg.solver());
  res.report["config"] = cfg.to_json();
  if (!cfg.out.empty()) io::write_text(cfg.out, res.csv);
  emit(cfg.report, res.report);
  for (const auto& c : res.report["checks"])
    std::cerr << (c["pass"].get<bool>() ? "  ok   " : "  FAIL ") << c["name"].get<std::string>() << "\n";
  std::cerr << id << ": " << (res.pass ? "pass" : "FAIL") << "\n";
  return res.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear ODEs in x with a parameter t on planar regions"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  io::RunConfig cfg;
  double h = 0;
  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--h", h, "resolution (default 1e-3 of the bbox diagonal)");
    sc->add_option("--rtol", cfg.rtol, "relative tolerance")->capture_default_str();
    sc->add_option("--atol", cfg.atol, "absolute tolerance")->capture_default_str();
    sc->add_option("--blowup", cfg.blowup, "blow-up bound on |v|")->capture_default_str();
    sc->add_option("--nt", cfg.nt, "t samples per piece")->capture_default_str();
    sc->add_option("--nx", cfg.nx, "x nodes per slice in outputs")->capture_default_str();
    sc->add_option("--seed", cfg.seed, "seed for randomized fixtures")->capture_default_str();
    sc->add_option("--out", cfg.out, "output file (default stdout)");
  };

  std::string file, zeta_file, id;
  bool as_json = false, as_csv = false;
  double tol = 1e-6;
  std::string grid;
  std::vector<double> init;
  PathologyArgs pa;

  auto* analyze = app.add_subcommand("analyze", "classify a region");
  analyze->add_option("region", file, "region JSON")->required();
  analyze->add_flag("--json", as_json, "JSON output (default)");
  analyze->add_flag("--csv", as_csv, "per-column intervals as CSV");
  add_common(analyze);

  auto* fund = app.add_subcommand("fundamental", "build fundamental sets per x-simple piece");
  fund->add_option("problem", file, "problem JSON")->required();
  fund->add_option("--tol", tol, "tolerance on the Liouville-Ostrogradski deviation")->capture_default_str();
  add_common(fund);

  auto* wcheck = app.add_subcommand("wronskian-check", "Wronskian against the Liouville-Ostrogradski prediction");
  wcheck->add_option("problem", file, "problem JSON")->required();
  wcheck->add_option("--tol", tol, "tolerance on the relative deviation")->capture_default_str();
  add_common(wcheck);

  auto* solve = app.add_subcommand("solve", "sweep slice solutions with constant initial data at the section");
  solve->add_option("problem", file, "problem JSON")->required();
  solve->add_option("--grid", grid, "nt,nx");
  solve->add_option("--init", init, "initial data u, u_x, ... at the section")->delimiter(',');
  solve->add_option("--report", cfg.report, "JSON report");
  add_common(solve);

  auto* inhom = app.add_subcommand("solve-inhom", "particular plus general solution of P u = f");
  inhom->add_option("problem", file, "problem JSON with f")->required();
  inhom->add_option("--zeta", zeta_file, "zeta JSON (default zero)");
  inhom->add_option("--grid", grid, "nt,nx");
  inhom->add_option("--report", cfg.report, "JSON report");
  add_common(inhom);

  auto* system = app.add_subcommand("system", "fundamental matrix and inhomogeneous solve for v_x = A v + F");
  system->add_option("problem", file, "system JSON")->required();
  system->add_option("--grid", grid, "nt,nx");
  system->add_option("--report", cfg.report, "JSON report (default stdout)");
  add_common(system);

  auto* path = app.add_subcommand("pathology", "generate and check counterexample instances");
  path->add_option("region", file, "region JSON")->required();
  path->add_option("--kind", pa.kind, "hom | inhom | punctured-square | rhs")
      ->check(CLI::IsMember({"hom", "inhom", "punctured-square", "rhs"}))
      ->capture_default_str();
  path->add_option("--p", pa.p, "order for --kind hom")->capture_default_str();
  path->add_option("--c", pa.c, "coefficient for --kind hom")->capture_default_str();
  path->add_option("--K", pa.K, "truncation depth for --kind punctured-square")->capture_default_str();
  path->add_option("--kmax", pa.k_max, "number of bumps for --kind rhs")->capture_default_str();
  path->add_option("--h1", pa.h1, "first-order coefficient for --kind rhs")->capture_default_str();
  path->add_option("--h0", pa.h0, "zeroth-order coefficient for --kind rhs")->capture_default_str();
  path->add_option("--report", cfg.report, "JSON report");
  add_common(path);

  auto* repro = app.add_subcommand("reproduce", "run a named example end to end");
  repro->add_option("example", id, "ex3.1 | ex3.9 | ex4.1 | ex4.2 | thm3.3-counter | thm4.3-rhs")
      ->required()
      ->check(CLI::IsMember(reproduce::ids()));
  repro->add_option("--report", cfg.report, "JSON report (default stdout)");
  add_common(repro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (h != 0) cfg.h = h;
    if (!grid.empty()) {
      auto comma = grid.find(',');
      if (comma == std::string::npos) throw io::InputError("--grid expects nt,nx");
      cfg.nt = std::stoul(grid.substr(0, comma));
      cfg.nx = std::stoul(grid.substr(comma + 1));
    }
    cfg.validate();
    if (*analyze) return cmd_analyze(file, as_csv && !as_json, cfg);
    if (*fund) return cmd_fundamental(file, cfg, false, tol);
    if (*wcheck) return cmd_fundamental(file, cfg, true, tol);
    if (*solve) return cmd_solve(file, cfg, init);
    if (*inhom) return cmd_solve_inhom(file, zeta_file, cfg);
    if (*system) return cmd_system(file, cfg);
    if (*path) return cmd_pathology(file, pa, cfg);
    if (*repro) return cmd_reproduce(id, cfg);
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const expr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
