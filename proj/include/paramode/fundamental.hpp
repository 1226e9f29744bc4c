#pragma once
// Fundamental sets of a scalar operator on an x-simple piece, Wronskians and
// expansion of solutions.

#include <vector>

#include "paramode/numeric.hpp"
#include "paramode/systems.hpp"

namespace paramode {

/// phi^s carries (u, u_x, ..., u_{p-1}) and starts from e_s at theta(t).
/// The Wronskian matrix is the fundamental matrix of the companion system.
struct FundamentalSet {
  ScalarOperator op;
  LinearSystem sys;  // companion, homogeneous part used for the columns
  FundamentalMatrix fm;
  Piece piece;

  int p() const { return fm.p; }
  const ParamSolution& phi(int s) const { return fm.cols[static_cast<std::size_t>(s)]; }
  const std::vector<double>& t() const { return fm.t; }
};

/// First-order problems integrate in log form (phi^1 > 0 along each slice).
FundamentalSet build_fundamental(const ScalarOperator& op, const Piece& piece, const SectionFn& theta,
                                 const std::vector<double>& t, const SolverOptions& opt = {}, int piece_id = -1);
/// Whole region as one piece, smooth section, nt columns.
FundamentalSet build_fundamental(const ScalarOperator& op, std::size_t nt, const SolverOptions& opt = {});

/// W sampled at nx nodes per slice; predicted from exp(-int g^{p-1}/g^p).
using WronskianField = DeterminantField;

WronskianField wronskian(const FundamentalSet& set, std::size_t nx);

Verdict is_fundamental(const FundamentalSet& set, const WronskianField& w, const Region& region);
/// Several pieces of one region: nonvanishing means every piece passed.
Verdict is_fundamental(const std::vector<const FundamentalSet*>& sets, const std::vector<const WronskianField*>& w,
                       const Region& region);

/// zeta^s(t) sampled on a t grid, PCHIP in between.
struct Zeta {
  std::vector<double> t;
  std::vector<std::vector<double>> z;  // z[s][i]
  std::vector<numeric::Pchip> interp;

  static Zeta make(std::vector<double> t, std::vector<std::vector<double>> z);
  int p() const { return static_cast<int>(z.size()); }
  std::vector<double> operator()(double tt) const;
};

/// zeta(t_i) = u(t_i, theta(t_i)) solved against the Wronskian matrix there.
Zeta expand(const ParamSolution& u, const FundamentalSet& set);

/// Solution with initial data zeta(t) at theta(t): sum zeta^s phi^s.
ParamSolution combine(const FundamentalSet& set, const Zeta& zeta, const SolverOptions& opt = {});

/// sup over nx nodes per slice of |u - sum zeta^s phi^s| for component 0.
double reconstruction_error(const ParamSolution& u, const FundamentalSet& set, const Zeta& zeta, std::size_t nx);

}  // namespace paramode
