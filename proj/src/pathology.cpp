#include "paramode/pathology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "paramode/numeric.hpp"

namespace paramode::pathology {

namespace {

std::string num(double v) {
  std::string s = expr::format_number(v);
  return v < 0 ? "(" + s + ")" : s;
}

// "(var - a)" with the sign folded in
std::string shifted(const char* var, double a) {
  if (a == 0) return var;
  if (a > 0) return std::string("(") + var + "-" + expr::format_number(a) + ")";
  return std::string("(") + var + "+" + expr::format_number(-a) + ")";
}

std::string inverse_square(double t0, double x1) {
  return "1/(" + shifted("x", x1) + "^2+" + shifted("t", t0) + "^2)";
}

double side(const Witness& w) { return w.reflected ? 1.0 : -1.0; }

Interval closed(double lo, double hi) { return Interval{lo, hi, EndKind::Clip, EndKind::Clip}; }

LinearSystem homogeneous_part(const ScalarOperator& op) {
  LinearSystem s = companion(op);
  s.F.assign(static_cast<std::size_t>(s.p), expr::Expr::constant(0.0));
  return s;
}

std::vector<double> geometric(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = n == 1 ? a : a * std::pow(b / a, static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

}  // namespace

const char* to_string(ReportKind k) {
  switch (k) {
    case ReportKind::wronskian_vanishing: return "wronskian_vanishing";
    case ReportKind::no_global_solution: return "no_global_solution";
    case ReportKind::only_zero_solution: return "only_zero_solution";
    case ReportKind::nonsolvable_rhs: return "nonsolvable_rhs";
  }
  return "?";
}

double HomCounterexample::G(double t) const {
  double d = std::fabs(t - w.t0);
  if (d == 0) return -INFINITY;
  return -(c / d) * (std::atan((w.x2 + w.eps - w.x1) / d) + std::atan(w.eps / d));
}

HomCounterexample gen_hom_counterexample(const Region& region, const Witness& w, int p, double c) {
  if (p < 1) throw std::invalid_argument("order must be >= 1");
  if (!(c > 0)) throw std::invalid_argument("c must be positive");
  std::vector<std::string> g(static_cast<std::size_t>(p + 1), "0");
  g[static_cast<std::size_t>(p)] = "1";
  g[static_cast<std::size_t>(p - 1)] = "-" + num(c) + "*" + inverse_square(w.t0, w.x1);
  HomCounterexample ce;
  ce.op = ScalarOperator::parse(region, g);
  ce.w = w;
  ce.c = c;
  return ce;
}

PathologyReport verify_wronskian_vanishing(const HomCounterexample& ce, const DecayOptions& opt) {
  PathologyReport rep;
  rep.kind = ReportKind::wronskian_vanishing;
  const Witness& w = ce.w;
  const int p = ce.op.p;
  LinearSystem sys = homogeneous_part(ce.op);
  SystemEvaluator ev(sys);
  SolverOptions so = opt.solver;
  if (p == 1) so.log_domain = true;
  else so.atol = 0;  // W is far below any useful absolute floor
  const double xa = w.x1 - w.eps, xb = w.x2 + w.eps;
  auto ds = geometric(opt.d_max * w.eps, opt.d_min * w.eps, opt.samples);
  std::vector<double> Ws;
  for (double d : ds) {
    double t = w.t0 + side(w) * d;
    Eigen::MatrixXd M(p, p);
    bool ok = true;
    for (int s = 0; s < p; ++s) {
      std::vector<double> e(static_cast<std::size_t>(p), 0.0);
      e[static_cast<std::size_t>(s)] = 1.0;
      SliceSolution sol = solve_on_interval(ev, t, xb, e, closed(xa, xb), so);
      std::vector<double> v(static_cast<std::size_t>(p));
      if (!sol.eval(xa, v.data())) {
        ok = false;
        break;
      }
      for (int r = 0; r < p; ++r) M(r, s) = v[static_cast<std::size_t>(r)];
    }
    Measurement m;
    m.name = "W(t, x1-eps)";
    m.param = t;
    m.tolerance = 1e-6;
    if (!ok) {
      m.value = NAN;
      m.pass = false;
      rep.notes.push_back("slice at t=" + expr::format_number(t) + " did not reach x1-eps");
    } else {
      double W = p == 1 ? M(0, 0) : M.determinant();
      double G = ce.G(t);
      m.value = W;
      m.expected = std::exp(G);
      m.error = std::fabs(std::log(std::fabs(W)) - G) / std::max(1.0, std::fabs(G));
      m.pass = W > 0 && m.error <= m.tolerance;
    }
    Ws.push_back(m.value);
    rep.add(m);
  }
  bool mono = true;
  for (std::size_t i = 1; i < Ws.size(); ++i) mono = mono && std::fabs(Ws[i]) < std::fabs(Ws[i - 1]);
  Measurement mono_m;
  mono_m.name = "monotone decrease toward t0";
  mono_m.value = mono ? 1 : 0;
  mono_m.expected = 1;
  mono_m.pass = mono;
  rep.add(mono_m);
  Measurement last;
  last.name = "|W| at the closest sample";
  last.param = w.t0 + side(w) * ds.back();
  last.value = Ws.empty() ? NAN : std::fabs(Ws.back());
  last.tolerance = 1e-8;
  last.pass = last.value < 1e-8;
  rep.add(last);
  rep.notes.push_back("set anchored at x2+eps; W(t, x1-eps) = exp(G(t)) must vanish at t0");
  return rep;
}

double InhomCounterexample::defect_closed(double t) const {
  double d = std::fabs(t - w.t0);
  if (d == 0) return INFINITY;
  return (std::atan((w.x2 + w.eps - w.x1) / d) + std::atan(w.eps / d)) / d;
}

InhomCounterexample gen_inhom_counterexample(const Region& region, const Witness& w) {
  InhomCounterexample ce;
  ce.op = ScalarOperator::parse(region, {"0", "1"}, inverse_square(w.t0, w.x1));
  ce.w = w;
  return ce;
}

double measure_defect(const InhomCounterexample& ce, double t, const SolverOptions& opt) {
  LinearSystem sys = companion(ce.op);
  SystemEvaluator ev(sys);
  const double xa = ce.w.x1 - ce.w.eps, xb = ce.w.x2 + ce.w.eps;
  SolverOptions so = opt;
  so.log_domain = false;
  SliceSolution s = solve_on_interval(ev, t, xa, {0.0}, closed(xa, xb), so);
  return s.value(xb);
}

PathologyReport verify_no_global_solution(const InhomCounterexample& ce, const std::vector<double>& ds,
                                          const SolverOptions& opt) {
  PathologyReport rep;
  rep.kind = ReportKind::no_global_solution;
  double dmin = INFINITY, at_dmin = NAN;
  for (double d : ds) {
    double t = ce.w.t0 + side(ce.w) * d;
    Measurement m;
    m.name = "d*Delta(t)";
    m.param = t;
    m.value = d * measure_defect(ce, t, opt);
    m.expected = d * ce.defect_closed(t);
    m.error = std::fabs(m.value - m.expected);
    m.tolerance = 1e-3;
    m.pass = m.error <= m.tolerance;
    if (d < dmin) {
      dmin = d;
      at_dmin = m.value;
    }
    rep.add(m);
  }
  if (std::isfinite(dmin)) {
    Measurement lim;
    lim.name = "d*Delta -> pi";
    lim.param = ce.w.t0 + side(ce.w) * dmin;
    lim.value = at_dmin;
    lim.expected = std::numbers::pi;
    lim.error = std::fabs(at_dmin - std::numbers::pi) / std::numbers::pi;
    lim.tolerance = 2e-3;
    lim.pass = lim.error <= lim.tolerance;
    rep.add(lim);
  }
  rep.notes.push_back("zero data at x1-eps; the value at x2+eps diverges like pi/d, so no continuous solution "
                      "takes finite values on both sides of the removed top edge");
  return rep;
}

double PuncturedSquareH::coefficient(int k, int l) const {
  return c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(l - 1)];
}

double PuncturedSquareH::operator()(double t, double x) const {
  double s = 0;
  for (int k = 1; k <= K; ++k) {
    const double h = std::ldexp(1.0, -k);
    const double a = std::ldexp(1.0, -2 * k);
    const double dx = x - 1 + h;
    const int n = (1 << k) - 1;
    for (int l = 1; l <= n; ++l) {
      double dt = t - h * l;
      s += a * coefficient(k, l) / (dx * dx + dt * dt);
    }
  }
  return s;
}

expr::Expr PuncturedSquareH::expression() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 1; k <= K; ++k) {
    const double h = std::ldexp(1.0, -k);
    const double a = std::ldexp(1.0, -2 * k);
    const int n = (1 << k) - 1;
    for (int l = 1; l <= n; ++l) {
      if (!first) os << "+";
      first = false;
      os << expr::format_number(a * coefficient(k, l)) << "/(" << shifted("x", 1 - h) << "^2+"
         << shifted("t", h * l) << "^2)";
    }
  }
  return expr::Expr::parse(os.str());
}

ScalarOperator PuncturedSquareH::op(const Region& region) const {
  return ScalarOperator::make(region, {-expression(), expr::Expr::constant(1.0)});
}

double PuncturedSquareH::tail_bound(double delta) const {
  return C / (delta * delta) * (std::ldexp(1.0, -K) - std::ldexp(1.0, -2 * K) / 3.0);
}

double PuncturedSquareH::domination_bound(double delta) const { return C / (delta * delta) * (2.0 / 3.0); }

PuncturedSquareH punctured_square_H(int K, double C) {
  if (K < 1 || K > 20) throw std::invalid_argument("truncation depth must be in 1..20");
  if (!(C > 0)) throw std::invalid_argument("coefficient bound must be positive");
  std::vector<std::vector<double>> c;
  for (int k = 1; k <= K; ++k) c.emplace_back(static_cast<std::size_t>((1 << k) - 1), C);
  PuncturedSquareH H;
  H.K = K;
  H.C = C;
  H.c = std::move(c);
  return H;
}

PuncturedSquareH punctured_square_H(int K, std::vector<std::vector<double>> c) {
  if (K < 1 || K > 20) throw std::invalid_argument("truncation depth must be in 1..20");
  if (static_cast<int>(c.size()) != K) throw std::invalid_argument("coefficient table needs K rows");
  double C = 0;
  for (int k = 1; k <= K; ++k) {
    const auto& row = c[static_cast<std::size_t>(k - 1)];
    if (static_cast<int>(row.size()) != (1 << k) - 1)
      throw std::invalid_argument("row " + std::to_string(k) + " needs 2^k - 1 coefficients");
    for (double v : row) {
      if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument("coefficients must be positive and finite");
      C = std::max(C, v);
    }
  }
  PuncturedSquareH H;
  H.K = K;
  H.C = C;
  H.c = std::move(c);
  return H;
}

namespace {

void check_puncture(const PuncturedSquareH& H, int k, int l) {
  if (k < 1 || k > H.K)
    throw std::out_of_range("puncture depth " + std::to_string(k) + " is beyond the truncation K=" +
                            std::to_string(H.K));
  if (l < 1 || l >= (1 << k)) throw std::out_of_range("puncture index out of range");
}

double crossing_with(const SystemEvaluator& ev, const PuncturedSquareH& H, int k, int l, double d,
                     const SolverOptions& opt) {
  check_puncture(H, k, l);
  const double tp = std::ldexp(static_cast<double>(l), -k), xp = 1 - std::ldexp(1.0, -k);
  const double w = crossing_window(H, k, l);
  SolverOptions so = opt;
  so.log_domain = true;
  SliceSolution s = solve_on_interval(ev, tp + d, xp - w, {1.0}, closed(xp - w, xp + w), so);
  double out = NAN;
  if (!s.eval_raw(xp + w, &out)) return NAN;
  return out;
}

}  // namespace

double crossing_window(const PuncturedSquareH& H, int k, int l) {
  check_puncture(H, k, l);
  const double tp = std::ldexp(static_cast<double>(l), -k), xp = 1 - std::ldexp(1.0, -k);
  double gap = INFINITY;
  for (int kk = 1; kk <= H.K; ++kk) {
    if (kk == k) continue;
    double ll = std::ldexp(tp, kk);
    if (ll != std::floor(ll) || ll < 1 || ll >= std::ldexp(1.0, kk)) continue;
    gap = std::min(gap, std::fabs(1 - std::ldexp(1.0, -kk) - xp));
  }
  return std::min({0.5 * gap, xp, 1 - xp, 0.25});
}

double crossing_integral(const PuncturedSquareH& H, int k, int l, double d, const SolverOptions& opt) {
  check_puncture(H, k, l);
  LinearSystem sys = LinearSystem::make(Region{}, {{H.expression()}});
  SystemEvaluator ev(sys);
  return crossing_with(ev, H, k, l, d, opt);
}

PathologyReport verify_forced_vanishing(const PuncturedSquareH& H, const Region& region, const CrossingOptions& opt) {
  PathologyReport rep;
  rep.kind = ReportKind::only_zero_solution;
  LinearSystem sys = LinearSystem::make(region, {{H.expression()}});
  SystemEvaluator ev(sys);

  struct Job {
    int k, l;
  };
  std::vector<Job> jobs;
  for (int k = 1; k <= H.K; ++k)
    for (int l = 1; l < (1 << k); ++l) jobs.push_back({k, l});
  std::vector<std::vector<Measurement>> out(jobs.size());
  std::vector<std::vector<std::string>> notes(jobs.size());
  const long nj = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long j = 0; j < nj; ++j) {
    const auto [k, l] = jobs[static_cast<std::size_t>(j)];
    const double a = std::ldexp(1.0, -2 * k) * H.coefficient(k, l);
    const double w = crossing_window(H, k, l);
    const std::string tag = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
    for (double d : opt.d) {
      if (d > w * opt.resolve) {
        notes[static_cast<std::size_t>(j)].push_back("puncture " + tag + ": d=" + expr::format_number(d) +
                                                     " is not small against the window " +
                                                     expr::format_number(w) + ", skipped");
        continue;
      }
      double g1 = crossing_with(ev, H, k, l, d, opt.solver);
      double g2 = crossing_with(ev, H, k, l, 0.5 * d, opt.solver);
      Measurement m;
      m.name = "log-growth across " + tag;
      m.param = d;
      m.value = g1;
      m.expected = a * std::numbers::pi / d;
      m.error = std::fabs(g1 - m.expected) / m.expected;
      m.tolerance = opt.tolerance;
      m.pass = std::isfinite(g1) && m.error <= m.tolerance;
      out[static_cast<std::size_t>(j)].push_back(m);
      Measurement r;
      r.name = "growth ratio d/2 vs d " + tag;
      r.param = d;
      r.value = g2 / g1;
      r.expected = 2;
      r.error = std::fabs(r.value - 2) / 2;
      r.tolerance = opt.tolerance;
      r.pass = std::isfinite(r.value) && r.error <= r.tolerance;
      out[static_cast<std::size_t>(j)].push_back(r);
    }
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (auto& m : out[j]) rep.add(m);
    for (auto& n : notes[j]) rep.notes.push_back(n);
  }

  // lines halfway between the deepest puncture lines carry no puncture
  const int n = 1 << H.K;
  std::vector<int> picks = {0, n / 2 - (n > 1 ? 1 : 0), n - 1};
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  const double delta = std::ldexp(1.0, -(H.K + 1));
  for (int j : picks) {
    double t = (2 * j + 1) * delta;
    Slice sl = region.slice(t);
    double total = 0, length = 0;
    for (const Interval& iv : sl.intervals) {
      SolverOptions so = opt.solver;
      so.log_domain = true;
      SliceSolution s = solve_on_interval(ev, t, iv.lo, {1.0}, closed(iv.lo, iv.hi), so);
      double g = NAN;
      s.eval_raw(iv.hi, &g);
      total += g;
      length += iv.width();
    }
    Measurement m;
    m.name = "unconstrained line";
    m.param = t;
    m.value = total;
    m.expected = H.domination_bound(delta) * length;  // upper bound
    m.pass = std::isfinite(total) && total <= m.expected;
    rep.add(m);
  }
  rep.notes.push_back("truncated certification: series cut at K=" + std::to_string(H.K) +
                      "; omitted terms are at most " + expr::format_number(H.tail_bound(0.1)) +
                      " at distance 0.1 from their punctures");
  rep.notes.push_back("unconstrained lines pass no puncture; their growth is bounded by the domination bound");
  return rep;
}

Region xi_region(const Witness& w, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const double e = w.eps, d1 = 0.5 * e, s = w.reflected ? -1.0 : 1.0;
  // t measured toward t0 from the approach side, mapped back through s
  auto tt = [&](double u) { return w.t0 + s * u; };
  auto rect = [&](double u0, double u1, double x0, double x1) {
    double a = tt(u0), b = tt(u1);
    return Shape::make_rect(std::min(a, b), std::max(a, b), x0, x1);
  };
  Region r;
  const double xlo = w.x1 - e - d1;
  r.shapes.push_back(rect(-e - d1, 0, xlo, w.x2 + e + d1));
  for (int k = 1; k <= depth; ++k) r.shapes.push_back(rect(-e - d1, d1 / k, xlo, w.x1 - e / (k + 1)));
  const double pad = 0.1 * d1;
  double a = tt(-e - d1 - pad), b = tt(d1 + pad);
  r.bbox = Rect{std::min(a, b), std::max(a, b), xlo - pad, w.x2 + e + d1 + pad};
  r.finalize();
  return r;
}

namespace {

// cubic B-spline in truncated form, zero outside [-2, 2] without cancellation
std::string bspline_expr(const std::string& u) {
  auto pos = [](const std::string& y) { return "((" + y + ")+abs(" + y + "))/2"; };
  return "(" + pos("2-abs(" + u + ")") + ")^3/6-2*(" + pos("1-abs(" + u + ")") + ")^3/3";
}

}  // namespace

RhsConstruction gen_nonsolvable_rhs_first_order(const ScalarOperator& op, const Witness& w, int k_max) {
  if (op.p != 1) throw std::invalid_argument("first-order operator expected");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const expr::Expr& h0 = op.g[0];
  const expr::Expr& h1 = op.g[1];
  RhsConstruction rc;
  rc.w = w;
  rc.k_max = k_max;
  rc.xi = xi_region(w);
  rc.theta = w.x1 - w.eps;
  rc.eps_k = 0.5 * w.eps;
  const double s = side(w), d1 = 0.5 * w.eps;
  rc.t_star.resize(static_cast<std::size_t>(k_max + 2));
  rc.t_star[0] = w.t0 + s * (w.eps + d1);
  for (int k = 1; k <= k_max + 1; ++k) rc.t_star[static_cast<std::size_t>(k)] = w.t0 + s * w.eps / k;

  auto phi = [&](double t, double x) {
    auto q = numeric::adaptive_simpson([&](double y) { return h0(t, y) / h1(t, y); }, rc.theta, x, 1e-12);
    return std::exp(-q.value);
  };
  rc.b.assign(static_cast<std::size_t>(k_max + 1), 0.0);
  rc.mass.assign(static_cast<std::size_t>(k_max + 1), 0.0);
  rc.phi_far.assign(static_cast<std::size_t>(k_max + 1), 0.0);
  std::ostringstream f;
  for (int k = 1; k <= k_max; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double ts = rc.t_star[ku];
    double bmax = 0;
    for (double x : numeric::linspace(w.x1 - rc.eps_k, w.x1 + rc.eps_k, 65))
      bmax = std::max(bmax, std::fabs(h1(ts, x)) * phi(ts, x));
    rc.b[ku] = 1.05 * bmax;
    rc.phi_far[ku] = phi(ts, w.x2 + w.eps);
    rc.mass[ku] = k * rc.b[ku] * (1 + 1 / rc.phi_far[ku]);

    // f^k: mass `mass` on [x1 - eps_k, x1 + eps_k]
    const double hx = 0.5 * rc.eps_k;
    std::string ux = "(" + shifted("x", w.x1) + ")/" + num(hx);
    // chi^k: peak 1 at t*_k, support between t*_{k-1} and t*_{k+1}
    const double ta = rc.t_star[ku - 1], tb = rc.t_star[ku + 1];
    const double sl = 0.5 * (ts - std::min(ta, tb)), sr = 0.5 * (std::max(ta, tb) - ts);
    std::string st = "(" + num(0.5 * (sl + sr)) + "+" + num(0.5 * (sr - sl)) + "*sgn(" + shifted("t", ts) + "))";
    std::string ut = shifted("t", ts) + "/" + st;
    if (k > 1) f << "+";
    f << num(rc.mass[ku] / hx) << "*(" << bspline_expr(ux) << ")*1.5*(" << bspline_expr(ut) << ")";
  }
  rc.op = op;
  rc.op.f = expr::Expr::parse(f.str());
  return rc;
}

PathologyReport verify_nonsolvable_rhs(const RhsConstruction& rc, const SolverOptions& opt) {
  PathologyReport rep;
  rep.kind = ReportKind::nonsolvable_rhs;
  LinearSystem sys = companion(rc.op);
  SystemEvaluator ev(sys);
  SolverOptions so = opt;
  so.log_domain = false;
  const double xb = rc.w.x2 + rc.w.eps;
  for (int k = 1; k <= rc.k_max; ++k) {
    double t = rc.t_star[static_cast<std::size_t>(k)];
    SliceSolution s = solve_on_interval(ev, t, rc.theta, {0.0}, closed(rc.theta, xb), so);
    Measurement m;
    m.name = "|psi(t*_k, x2+eps)|";
    m.param = k;
    m.value = std::fabs(s.value(xb));
    m.expected = k;  // lower bound
    m.pass = m.value > k;
    rep.add(m);
  }
  rep.notes.push_back("zero data at x1-eps; a solution with data bounded by C must exceed k - C at t*_k, "
                      "which is unbounded as t*_k -> t0");
  return rep;
}

}  // namespace paramode::pathology
