#pragma once
// Fundamental matrices of v_x = A v (+ F) and fundamentality verdicts.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "paramode/sweep.hpp"
#include "paramode/topology.hpp"

namespace paramode {

/// Column s solves Phi_x = A Phi with Phi(t, theta(t)) e_s = e_s.
struct FundamentalMatrix {
  int p = 1;
  int piece = -1;
  SectionFn theta;
  std::vector<double> t;
  std::vector<ParamSolution> cols;

  /// False when (t[i], x) is outside the range reached by every column.
  bool matrix(std::size_t i, double x, Eigen::MatrixXd& M) const;
  double det(std::size_t i, double x) const;
  bool complete() const;  // no slice errors or blow-ups
};

FundamentalMatrix build_fundamental_matrix(const LinearSystem& sys, const SectionFn& theta,
                                           const std::vector<double>& t, const SolverOptions& opt = {},
                                           int piece = -1);

struct DeterminantField {
  std::vector<double> t;
  std::vector<std::vector<double>> x, det, predicted;
  double max_rel_dev = 0;    // against exp(int_theta^x tr A)
  double max_theta_dev = 0;  // |det(t, theta(t)) - 1|
  bool nonvanishing = true;  // no zero and constant sign along every slice
};

DeterminantField determinant_field(const FundamentalMatrix& fm, const LinearSystem& sys, std::size_t nx);

enum class VerdictKind { fundamental, nonvanishing_only, not_fundamental };
enum class Reason {
  determinant_vanishes,
  solution_incomplete,
  x_simple_nonvanishing,
  components_overlap,
  pieces_overlap,
  component_not_x_simple,
};

struct Verdict {
  VerdictKind kind = VerdictKind::not_fundamental;
  Reason reason = Reason::determinant_vanishes;
  std::string explanation;
};

const char* to_string(VerdictKind k);
const char* to_string(Reason r);

/// `what` names the tested quantity in the explanation ("Wronskian", "determinant").
Verdict fundamentality_verdict(bool nonvanishing, bool complete, const Classification& cls, const std::string& what);

Verdict is_fundamental_matrix(const FundamentalMatrix& fm, const DeterminantField& det, const Region& region);

struct SystemParticular {
  ParamSolution v;
  double cross_check_dev = 0;  // sup |v - Phi int Phi^-1 F| on coarse samples
  std::size_t cross_check_points = 0;
};

struct InhomOptions {
  SolverOptions solver;
  std::size_t coarse_t = 5, coarse_x = 11;
  /// Refuse regions that are not x-simple. Callers working on a single piece
  /// of a larger region pass false.
  bool require_x_simple = true;
};

/// Zero data at theta(t), cross-checked by matrix variation of constants.
SystemParticular solve_system_inhom(const LinearSystem& sys, const FundamentalMatrix& fm,
                                    const InhomOptions& opt = {});

/// zeta(t) = v(t, theta(t)) per slice.
std::vector<std::vector<double>> expand_system(const ParamSolution& v, const FundamentalMatrix& fm);

}  // namespace paramode
