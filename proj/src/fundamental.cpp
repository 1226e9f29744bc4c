#include "paramode/fundamental.hpp"

#include <cmath>
#include <stdexcept>

namespace paramode {

namespace {

void require_leading(const ScalarOperator& op) {
  LeadingCheck lc = check_leading(op);
  if (!lc.ok) throw std::invalid_argument("leading coefficient: " + lc.message);
}

}  // namespace

FundamentalSet build_fundamental(const ScalarOperator& op, const Piece& piece, const SectionFn& theta,
                                 const std::vector<double>& t, const SolverOptions& opt, int piece_id) {
  require_leading(op);
  FundamentalSet set;
  set.op = op;
  set.sys = companion(op);
  set.piece = piece;
  SolverOptions o = opt;
  if (op.p == 1) o.log_domain = true;
  set.fm = build_fundamental_matrix(set.sys, theta, t, o, piece_id);
  return set;
}

FundamentalSet build_fundamental(const ScalarOperator& op, std::size_t nt, const SolverOptions& opt) {
  Piece piece = as_piece(op.region);
  Section sec = smooth_section(piece);
  return build_fundamental(op, piece, section_fn(sec), piece_t_samples(piece, nt), opt);
}

WronskianField wronskian(const FundamentalSet& set, std::size_t nx) {
  // tr A of the companion matrix is -g^{p-1}/g^p
  return determinant_field(set.fm, set.sys, nx);
}

Verdict is_fundamental(const FundamentalSet& set, const WronskianField& w, const Region& region) {
  return fundamentality_verdict(w.nonvanishing, set.fm.complete(), classify(region), "Wronskian");
}

Verdict is_fundamental(const std::vector<const FundamentalSet*>& sets, const std::vector<const WronskianField*>& w,
                       const Region& region) {
  if (sets.size() != w.size()) throw std::invalid_argument("one Wronskian per fundamental set expected");
  bool nonvanishing = true, complete = true;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    nonvanishing = nonvanishing && w[i]->nonvanishing;
    complete = complete && sets[i]->fm.complete();
  }
  return fundamentality_verdict(nonvanishing, complete, classify(region), "Wronskian");
}

Zeta Zeta::make(std::vector<double> t, std::vector<std::vector<double>> z) {
  for (const auto& row : z)
    if (row.size() != t.size()) throw std::invalid_argument("zeta rows must match the t samples");
  Zeta out;
  out.t = std::move(t);
  out.z = std::move(z);
  for (const auto& row : out.z) out.interp.emplace_back(out.t, row);
  return out;
}

std::vector<double> Zeta::operator()(double tt) const {
  std::vector<double> v(z.size());
  for (std::size_t s = 0; s < z.size(); ++s) v[s] = interp[s](tt);
  return v;
}

Zeta expand(const ParamSolution& u, const FundamentalSet& set) {
  auto raw = expand_system(u, set.fm);
  const auto p = static_cast<std::size_t>(set.p());
  std::vector<double> t;
  std::vector<std::vector<double>> z(p);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != p) continue;
    t.push_back(set.t()[i]);
    for (std::size_t s = 0; s < p; ++s) z[s].push_back(raw[i][s]);
  }
  return Zeta::make(std::move(t), std::move(z));
}

ParamSolution combine(const FundamentalSet& set, const Zeta& zeta, const SolverOptions& opt) {
  if (zeta.p() != set.p()) throw std::invalid_argument("zeta has the wrong number of components");
  const FundamentalMatrix& fm = set.fm;
  LinearSystem hom = set.sys;
  hom.F.assign(static_cast<std::size_t>(hom.p), expr::Expr::constant(0.0));
  return sweep(hom, fm.theta, [&zeta](double t) { return zeta(t); }, fm.t, opt, fm.piece);
}

double reconstruction_error(const ParamSolution& u, const FundamentalSet& set, const Zeta& zeta, std::size_t nx) {
  if (u.size() != set.t().size()) throw std::invalid_argument("solution and set use different t samples");
  std::vector<const ParamSolution*> fam;
  for (const auto& c : set.fm.cols) fam.push_back(&c);
  fam.push_back(&u);
  double err = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto z = zeta(set.t()[i]);
    for (double x : common_nodes(fam, i, nx)) {
      double sum = 0;
      for (int s = 0; s < set.p(); ++s) sum += z[static_cast<std::size_t>(s)] * set.phi(s).value(i, x);
      err = std::max(err, std::fabs(u.value(i, x) - sum));
    }
  }
  return err;
}

}  // namespace paramode
