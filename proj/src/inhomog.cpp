#include "paramode/inhomog.hpp"

#include <cmath>
#include <stdexcept>

#include "paramode/numeric.hpp"
#include "paramode/pathology.hpp"

namespace paramode {

double variation_integrand(const FundamentalSet& set, std::size_t i, double x, int s) {
  const int p = set.p();
  Eigen::MatrixXd M;
  if (!set.fm.matrix(i, x, M)) return std::nan("");
  const double t = set.t()[i];
  const double W = p == 1 ? M(0, 0) : M.determinant();
  double Ws = 1;
  if (p > 1) {
    Eigen::MatrixXd m(p - 1, p - 1);
    for (int r = 0; r < p - 1; ++r)
      for (int c = 0, cc = 0; c < p; ++c)
        if (c != s - 1) m(r, cc++) = M(r, c);
    Ws = m.determinant();
  }
  const double sign = (p - s) % 2 == 0 ? 1.0 : -1.0;
  return sign * set.op.rhs(t, x) / set.op.g[static_cast<std::size_t>(p)](t, x) * Ws / W;
}

ParticularSolution particular(const ScalarOperator& op, const FundamentalSet& set, const InhomOptions& opt) {
  if (!op.f) throw std::invalid_argument("operator has no right-hand side");
  if (opt.require_x_simple && !classify(op.region).x_simple)
    throw NotXSimpleError(
        "region is not x-simple: P u = f has continuous solutions for every continuous f only when each connected "
        "component is x-simple; solve per piece instead");
  ParticularSolution out;
  LinearSystem sys = companion(op);
  SolverOptions so = opt.solver;
  so.log_domain = false;
  const FundamentalMatrix& fm = set.fm;
  auto zero = [p = op.p](double) { return std::vector<double>(static_cast<std::size_t>(p), 0.0); };
  out.psi = sweep(sys, fm.theta, zero, fm.t, so, fm.piece);

  const std::size_t n = fm.t.size();
  if (n == 0) return out;
  FundamentalSet lit = set;
  lit.op = op;  // the set may have been built without f
  std::size_t m = std::min(opt.coarse_t, n);
  for (std::size_t k = 0; k < m; ++k) out.rows.push_back(m == 1 ? n / 2 : (n - 1) * k / (m - 1));
  std::vector<const ParamSolution*> fam;
  for (const auto& c : fm.cols) fam.push_back(&c);
  fam.push_back(&out.psi);
  const int p = op.p;
  for (std::size_t i : out.rows) {
    const double th = fm.theta(fm.t[i]);
    auto nodes = common_nodes(fam, i, opt.coarse_x);
    std::vector<double> lrow, irow;
    std::vector<std::vector<double>> grow;
    for (double x : nodes) {
      double sum = 0;
      std::vector<double> g(static_cast<std::size_t>(p));
      for (int s = 1; s <= p; ++s) {
        auto q = numeric::adaptive_simpson([&](double y) { return variation_integrand(lit, i, y, s); }, th, x,
                                           1e-11);
        out.quad_error = std::max(out.quad_error, q.error);
        sum += set.phi(s - 1).value(i, x) * q.value;
        g[static_cast<std::size_t>(s - 1)] = variation_integrand(lit, i, x, s);
      }
      double v = out.psi.value(i, x);
      lrow.push_back(sum);
      irow.push_back(v);
      grow.push_back(std::move(g));
      out.cross_check_dev = std::max(out.cross_check_dev, std::fabs(sum - v));
    }
    out.x.push_back(std::move(nodes));
    out.literal.push_back(std::move(lrow));
    out.integrated.push_back(std::move(irow));
    out.integrand.push_back(std::move(grow));
  }
  return out;
}

SampledField general(const FundamentalSet& set, const ParticularSolution& psi, const Zeta& zeta, std::size_t nx) {
  if (psi.psi.t != set.t()) throw std::invalid_argument("particular solution and fundamental set use different grids");
  if (zeta.p() != set.p()) throw std::invalid_argument("zeta has the wrong number of components");
  std::vector<const ParamSolution*> fam;
  for (const auto& c : set.fm.cols) fam.push_back(&c);
  fam.push_back(&psi.psi);
  SampledField out;
  out.t = set.t();
  out.x.resize(out.t.size());
  out.u.resize(out.t.size());
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    auto z = zeta(out.t[i]);
    out.x[i] = common_nodes(fam, i, nx);
    for (double x : out.x[i]) {
      double u = psi.psi.value(i, x);
      for (int s = 0; s < set.p(); ++s) u += z[static_cast<std::size_t>(s)] * set.phi(s).value(i, x);
      out.u[i].push_back(u);
    }
  }
  return out;
}

Solvability solvability(const Region& region) {
  Classification cls = classify(region);
  Solvability out;
  const double h = region.h();
  for (const Component& c : cls.components) {
    ComponentSolvability cs;
    cs.component = c.id;
    cs.x_simple = c.x_simple;
    if (!c.x_simple) {
      out.solvable = false;
      try {
        Witness w;
        if (cls.components.size() == 1) {
          w = find_witness(region);
        } else {
          Region sub = region.clipped(Rect{c.t_lo - 2 * h, c.t_hi + 2 * h, c.x_lo - 2 * h, c.x_hi + 2 * h});
          w = find_witness(sub);
        }
        cs.witness = w;
        cs.instance = pathology::gen_inhom_counterexample(region, w).op;
        cs.note = "u_x = 1/((x-x1)^2+(t-t0)^2) has no continuous solution near the witness";
      } catch (const NoWitnessError& e) {
        cs.note = std::string("not x-simple, but no witness at this resolution: ") + e.what();
      }
    }
    out.components.push_back(std::move(cs));
  }
  if (out.solvable)
    out.explanation = "every connected component is x-simple, so P u = f is solvable for every continuous f";
  else
    out.explanation = "some connected component is not x-simple, so P u = f fails to be solvable for some "
                      "continuous f; the witness and a right-hand side without continuous solution are attached";
  return out;
}

}  // namespace paramode
