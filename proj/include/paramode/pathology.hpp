#pragma once
// Counterexample operators and right-hand sides built from a non-simplicity
// witness or the dyadic punctured square, with numerical checks of the
// behaviour they are built to show.

#include <cmath>
#include <string>
#include <vector>

#include "paramode/ode.hpp"
#include "paramode/operators.hpp"
#include "paramode/topology.hpp"

namespace paramode::pathology {

enum class ReportKind { wronskian_vanishing, no_global_solution, only_zero_solution, nonsolvable_rhs };

const char* to_string(ReportKind k);

struct Measurement {
  std::string name;
  double param = 0;         // t, d or k depending on the measurement
  double value = 0;
  double expected = NAN;    // NaN when there is nothing to compare with
  double error = NAN;
  double tolerance = NAN;
  bool pass = true;
};

struct PathologyReport {
  ReportKind kind = ReportKind::wronskian_vanishing;
  std::vector<Measurement> measurements;
  std::vector<std::string> notes;
  bool pass = true;

  void add(Measurement m) {
    pass = pass && m.pass;
    measurements.push_back(std::move(m));
  }
};

// u^(p) - c r^-2 u^(p-1) = 0, r^2 = (x - x1)^2 + (t - t0)^2.
struct HomCounterexample {
  ScalarOperator op;
  Witness w;
  double c = 1;

  /// -c times the integral of r^-2 over [x1 - eps, x2 + eps]; -> -inf at t0.
  double G(double t) const;
};

HomCounterexample gen_hom_counterexample(const Region& region, const Witness& w, int p, double c = 1.0);

struct DecayOptions {
  std::size_t samples = 10;
  double d_max = 0.5;   // fractions of eps
  double d_min = 0.01;
  SolverOptions solver;
};

/// W at x1 - eps for the set anchored at x2 + eps, on t = t0 -+ d for
/// geometric d. Passes when |W| decreases monotonically below 1e-8 and log|W|
/// follows G.
PathologyReport verify_wronskian_vanishing(const HomCounterexample& ce, const DecayOptions& opt = {});

// u_x = r^-2.
struct InhomCounterexample {
  ScalarOperator op;
  Witness w;

  /// Integral of r^-2 across [x1 - eps, x2 + eps] on the line t.
  double defect_closed(double t) const;
};

InhomCounterexample gen_inhom_counterexample(const Region& region, const Witness& w);

/// Slice solution from zero data at x1 - eps, read at x2 + eps.
double measure_defect(const InhomCounterexample& ce, double t, const SolverOptions& opt = {});

/// Defect rows at distances d from t0; |d Delta - d Delta_closed| <= 1e-3 each
/// and d Delta within 0.2% of pi at the smallest d.
PathologyReport verify_no_global_solution(const InhomCounterexample& ce,
                                          const std::vector<double>& d = {1e-1, 1e-2, 1e-3},
                                          const SolverOptions& opt = {});

// H(t,x) = sum_{k<=K} sum_{l<2^k} 4^-k c_kl / ((x - 1 + 2^-k)^2 + (t - 2^-k l)^2)
struct PuncturedSquareH {
  int K = 1;
  double C = 1;                        // bound on the coefficients
  std::vector<std::vector<double>> c;  // c[k-1][l-1]

  double coefficient(int k, int l) const;
  /// Non-finite at a puncture.
  double operator()(double t, double x) const;
  expr::Expr expression() const;
  /// u_x = H u on the given region.
  ScalarOperator op(const Region& region) const;

  /// Bound on the omitted k > K terms at distance >= delta from their punctures.
  double tail_bound(double delta) const;
  /// Bound on the whole series at distance >= delta from every puncture.
  double domination_bound(double delta) const;
};

/// Constant coefficients c_kl = C.
PuncturedSquareH punctured_square_H(int K, double C = 1.0);
/// Explicit table, row k-1 holds 2^k - 1 entries in (0, C].
PuncturedSquareH punctured_square_H(int K, std::vector<std::vector<double>> c);

/// Half-width of the x window used to cross the puncture (2^-k l, 1 - 2^-k).
double crossing_window(const PuncturedSquareH& H, int k, int l);
/// Integral of H over the window on the line t = 2^-k l + d, from a
/// log-form slice solve. Throws std::out_of_range for k > K.
double crossing_integral(const PuncturedSquareH& H, int k, int l, double d, const SolverOptions& opt = {});

struct CrossingOptions {
  std::vector<double> d = {1e-2, 1e-3, 1e-4};
  double tolerance = 0.15;
  /// Distances must satisfy d <= window * resolve to be measured.
  double resolve = 0.05;
  SolverOptions solver;
};

/// Growth law a pi / d across every puncture, doubling when d halves, and
/// bounded growth on lines between the deepest puncture lines.
PathologyReport verify_forced_vanishing(const PuncturedSquareH& H, const Region& region,
                                        const CrossingOptions& opt = {});

/// Union of nested open rectangles around the witness: the full rectangle
/// over the approach side, and thinner strips reaching past t0 whose tops
/// climb toward x1 - eps.
Region xi_region(const Witness& w, int depth = 8);

struct RhsConstruction {
  ScalarOperator op;  // op with f attached
  Witness w;
  Region xi;
  int k_max = 10;
  double theta = 0;  // x1 - eps
  double eps_k = 0;
  std::vector<double> t_star;  // index 0 .. k_max + 1
  std::vector<double> b, mass;  // index 1 .. k_max, entry 0 unused
  std::vector<double> phi_far;  // phi(t*_k, x2 + eps)
};

/// f = sum_k f^k chi^k for P = h1 d/dx + h0 given as a first-order op.
RhsConstruction gen_nonsolvable_rhs_first_order(const ScalarOperator& op, const Witness& w, int k_max = 10);

/// |psi(t*_k, x2 + eps)| > k for the zero-data slice solution at each k.
PathologyReport verify_nonsolvable_rhs(const RhsConstruction& rc, const SolverOptions& opt = {});

}  // namespace paramode::pathology
