#include "paramode/systems.hpp"

#include <cmath>
#include <stdexcept>

#include "paramode/numeric.hpp"

namespace paramode {

bool FundamentalMatrix::matrix(std::size_t i, double x, Eigen::MatrixXd& M) const {
  M.resize(p, p);
  std::vector<double> col(static_cast<std::size_t>(p));
  for (int s = 0; s < p; ++s) {
    if (!cols[static_cast<std::size_t>(s)].eval(i, x, col.data())) return false;
    for (int r = 0; r < p; ++r) M(r, s) = col[static_cast<std::size_t>(r)];
  }
  return true;
}

double FundamentalMatrix::det(std::size_t i, double x) const {
  Eigen::MatrixXd M;
  if (!matrix(i, x, M)) return std::nan("");
  return p == 1 ? M(0, 0) : M.determinant();
}

bool FundamentalMatrix::complete() const {
  for (const auto& c : cols)
    if (!c.all_ok()) return false;
  return true;
}

FundamentalMatrix build_fundamental_matrix(const LinearSystem& sys, const SectionFn& theta,
                                           const std::vector<double>& t, const SolverOptions& opt, int piece) {
  FundamentalMatrix fm;
  fm.p = sys.p;
  fm.piece = piece;
  fm.theta = theta;
  fm.t = t;
  // homogeneous part only
  LinearSystem hom = sys;
  hom.F.assign(static_cast<std::size_t>(sys.p), expr::Expr::constant(0.0));
  for (int s = 0; s < sys.p; ++s) {
    auto init = [p = sys.p, s](double) {
      std::vector<double> e(static_cast<std::size_t>(p), 0.0);
      e[static_cast<std::size_t>(s)] = 1.0;
      return e;
    };
    fm.cols.push_back(sweep(hom, theta, init, t, opt, piece));
  }
  return fm;
}

DeterminantField determinant_field(const FundamentalMatrix& fm, const LinearSystem& sys, std::size_t nx) {
  DeterminantField d;
  d.t = fm.t;
  const std::size_t n = fm.t.size();
  d.x.resize(n);
  d.det.resize(n);
  d.predicted.resize(n);
  std::vector<const ParamSolution*> fam;
  for (const auto& c : fm.cols) fam.push_back(&c);
  std::vector<double> rel(n, 0.0), theta_dev(n, 0.0);
  std::vector<char> nonvan(n, 1);
  const long ln = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long li = 0; li < ln; ++li) {
    auto i = static_cast<std::size_t>(li);
    const double t = fm.t[i];
    const double th = fm.theta(t);
    auto nodes = common_nodes(fam, i, nx);
    if (nodes.empty()) {
      nonvan[i] = 0;
      continue;
    }
    auto logpred = numeric::integrals_from([&](double x) { return sys.trace(t, x); }, th, nodes);
    int sign0 = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      double w = fm.det(i, nodes[j]);
      d.x[i].push_back(nodes[j]);
      d.det[i].push_back(w);
      d.predicted[i].push_back(std::exp(logpred[j]));
      if (!(w != 0.0) || !std::isfinite(w)) {
        nonvan[i] = 0;
        continue;
      }
      int sg = w > 0 ? 1 : -1;
      if (sign0 == 0) sign0 = sg;
      if (sg != sign0) nonvan[i] = 0;
      // compare in log form so that tiny or huge values stay meaningful
      double r = std::fabs(std::exp(std::log(std::fabs(w)) - logpred[j]) * sg - 1.0);
      rel[i] = std::max(rel[i], r);
    }
    theta_dev[i] = std::fabs(fm.det(i, th) - 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    d.max_rel_dev = std::max(d.max_rel_dev, rel[i]);
    d.max_theta_dev = std::max(d.max_theta_dev, theta_dev[i]);
    if (!nonvan[i]) d.nonvanishing = false;
  }
  return d;
}

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::fundamental: return "fundamental";
    case VerdictKind::nonvanishing_only: return "nonvanishing_only";
    case VerdictKind::not_fundamental: return "not_fundamental";
  }
  return "?";
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::determinant_vanishes: return "vanishes_somewhere";
    case Reason::solution_incomplete: return "solution_incomplete";
    case Reason::x_simple_nonvanishing: return "x_simple_and_nonvanishing";
    case Reason::components_overlap: return "components_with_overlapping_projections";
    case Reason::pieces_overlap: return "pieces_with_overlapping_projections";
    case Reason::component_not_x_simple: return "component_not_x_simple";
  }
  return "?";
}

namespace {
bool open_ranges_overlap(double a0, double a1, double b0, double b1) { return std::max(a0, b0) < std::min(a1, b1); }
}  // namespace

Verdict fundamentality_verdict(bool nonvanishing, bool complete, const Classification& cls, const std::string& what) {
  Verdict v;
  if (!nonvanishing) {
    v.kind = VerdictKind::not_fundamental;
    v.reason = Reason::determinant_vanishes;
    v.explanation = "the " + what + " vanishes or changes sign at a sampled point";
    return v;
  }
  if (cls.x_simple) {
    if (!complete) {
      v.kind = VerdictKind::not_fundamental;
      v.reason = Reason::solution_incomplete;
      v.explanation = "some slices stopped early (blow-up or no valid start), so the " + what +
                      " is not known on the whole region";
      return v;
    }
    v.kind = VerdictKind::fundamental;
    v.reason = Reason::x_simple_nonvanishing;
    v.explanation = "the region is x-simple and the " + what +
                    " does not vanish; on x-simple regions this characterizes fundamental sets";
    return v;
  }
  bool all_components_simple = true;
  for (const auto& c : cls.components) all_components_simple = all_components_simple && c.x_simple;
  if (all_components_simple) {
    v.kind = VerdictKind::nonvanishing_only;
    v.reason = Reason::components_overlap;
    v.explanation = "the " + what +
                    " does not vanish, but several x-simple components have overlapping projections to the t-axis, "
                    "so no fundamental set exists on the whole region";
    return v;
  }
  for (std::size_t a = 0; a < cls.pieces.size(); ++a)
    for (std::size_t b = a + 1; b < cls.pieces.size(); ++b)
      if (open_ranges_overlap(cls.pieces[a].t_lo, cls.pieces[a].t_hi, cls.pieces[b].t_lo, cls.pieces[b].t_hi)) {
        v.kind = VerdictKind::nonvanishing_only;
        v.reason = Reason::pieces_overlap;
        v.explanation = "the " + what +
                        " does not vanish on the piece, but the region has x-simple pieces with overlapping "
                        "projections to the t-axis, so no fundamental set exists on the whole region";
        return v;
      }
  v.kind = VerdictKind::not_fundamental;
  v.reason = Reason::component_not_x_simple;
  v.explanation = "a connected component is not x-simple; no fundamental set exists on such a component";
  return v;
}

Verdict is_fundamental_matrix(const FundamentalMatrix& fm, const DeterminantField& det, const Region& region) {
  return fundamentality_verdict(det.nonvanishing, fm.complete(), classify(region), "determinant");
}

SystemParticular solve_system_inhom(const LinearSystem& sys, const FundamentalMatrix& fm, const InhomOptions& opt) {
  if (opt.require_x_simple && !classify(sys.region).x_simple)
    throw NotXSimpleError(
        "region is not x-simple: continuous solutions for every continuous right-hand side exist only when each "
        "connected component is x-simple; solve per piece instead");
  SystemParticular out;
  auto zero = [p = sys.p](double) { return std::vector<double>(static_cast<std::size_t>(p), 0.0); };
  out.v = sweep(sys, fm.theta, zero, fm.t, opt.solver, fm.piece);

  // coarse cross-check: v(x) = Phi(x) int_theta^x Phi^-1 F
  const std::size_t n = fm.t.size();
  if (n == 0) return out;
  std::vector<std::size_t> rows;
  std::size_t m = std::min(opt.coarse_t, n);
  for (std::size_t k = 0; k < m; ++k)
    rows.push_back(m == 1 ? n / 2 : (n - 1) * k / (m - 1));
  SystemEvaluator ev(sys);
  const auto p = static_cast<std::size_t>(sys.p);
  std::vector<const ParamSolution*> fam;
  for (const auto& c : fm.cols) fam.push_back(&c);
  fam.push_back(&out.v);
  for (std::size_t i : rows) {
    const double t = fm.t[i];
    const double th = fm.theta(t);
    auto nodes = common_nodes(fam, i, opt.coarse_x);
    std::vector<double> A(p * p), F(p);
    auto integrand = [&](double x, std::size_t comp) {
      Eigen::MatrixXd M;
      if (!fm.matrix(i, x, M)) return std::nan("");
      ev(t, x, A.data(), F.data());
      Eigen::VectorXd f = Eigen::Map<Eigen::VectorXd>(F.data(), static_cast<Eigen::Index>(p));
      Eigen::VectorXd y = M.partialPivLu().solve(f);
      return y(static_cast<Eigen::Index>(comp));
    };
    for (double x : nodes) {
      Eigen::VectorXd I(static_cast<Eigen::Index>(p));
      for (std::size_t c = 0; c < p; ++c)
        I(static_cast<Eigen::Index>(c)) =
            numeric::adaptive_simpson([&](double xx) { return integrand(xx, c); }, th, x, 1e-11).value;
      Eigen::MatrixXd M;
      if (!fm.matrix(i, x, M)) continue;
      Eigen::VectorXd vv = M * I;
      std::vector<double> got(p);
      if (!out.v.eval(i, x, got.data())) continue;
      for (std::size_t c = 0; c < p; ++c)
        out.cross_check_dev = std::max(out.cross_check_dev, std::fabs(got[c] - vv(static_cast<Eigen::Index>(c))));
      ++out.cross_check_points;
    }
  }
  return out;
}

std::vector<std::vector<double>> expand_system(const ParamSolution& v, const FundamentalMatrix& fm) {
  if (v.size() != fm.t.size()) throw std::invalid_argument("solution and fundamental matrix use different t samples");
  std::vector<std::vector<double>> zeta(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double th = fm.theta(fm.t[i]);
    Eigen::MatrixXd M;
    std::vector<double> val(static_cast<std::size_t>(fm.p));
    if (!fm.matrix(i, th, M) || !v.eval(i, th, val.data())) continue;
    Eigen::VectorXd b = Eigen::Map<Eigen::VectorXd>(val.data(), fm.p);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible()) throw std::logic_error("fundamental matrix is singular at the section");
    Eigen::VectorXd z = lu.solve(b);
    zeta[i].assign(z.data(), z.data() + z.size());
  }
  return zeta;
}

}  // namespace paramode
