#pragma once
// Dormand-Prince 5(4) integration along one line t = const with dense output.

#include <string>
#include <vector>

#include "paramode/operators.hpp"
#include "paramode/region.hpp"

namespace paramode {

struct SolverOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double blowup = 1e12;  // |v|_inf bound
  double max_step = 0;   // 0: interval length / 8
  double min_step = 1e-10;
  std::size_t max_steps = 2'000'000;
  /// Integrate w = log v for positive scalar homogeneous problems.
  bool log_domain = false;
};

enum class SliceStatus { ok, blowup, left_domain };

const char* to_string(SliceStatus s);

/// One accepted step of the continuous extension.
struct DenseSegment {
  double xa = 0, xb = 0;       // step start and end (xb < xa going left)
  std::vector<double> r;       // 5 * p coefficients
};

struct Branch {
  std::vector<DenseSegment> seg;
  SliceStatus status = SliceStatus::ok;
  double x_end = 0;   // last point reached
  double x_star = 0;  // where the blow-up bound was crossed
  std::size_t steps = 0, rejected = 0;
};

struct SliceSolution {
  double t = 0;
  double x0 = 0;
  int p = 1;
  std::vector<double> v0;  // in the integration variable (log if log_domain)
  bool log_domain = false;
  Interval domain;  // slice interval that contains x0
  Branch left, right;
  std::string error;  // set when the slice could not be started

  /// Range actually covered by both branches.
  double x_min() const { return left.seg.empty() ? x0 : left.x_end; }
  double x_max() const { return right.seg.empty() ? x0 : right.x_end; }
  bool covers(double x) const { return error.empty() && x >= x_min() && x <= x_max(); }
  SliceStatus status() const;

  /// State at x (exp applied in log mode). False outside the covered range.
  bool eval(double x, double* out) const;
  double value(double x, int comp = 0) const;
  /// Raw integration variable at x (log v in log mode).
  bool eval_raw(double x, double* out) const;
};

struct SliceTarget {
  double lo, hi;  // integrate from x0 down to lo and up to hi
};

/// Integrates v_x = A(t,x) v + F(t,x) from (t, x0) both ways across the
/// slice interval containing x0. Throws std::invalid_argument when x0 is
/// not in the slice.
SliceSolution solve_slice(const LinearSystem& sys, double t, double x0, const std::vector<double>& v0,
                          const SolverOptions& opt = {});
/// Same, with an explicit target sub-interval of the slice interval.
SliceSolution solve_slice(const LinearSystem& sys, double t, double x0, const std::vector<double>& v0,
                          const SliceTarget& target, const SolverOptions& opt = {});
/// Integration without a region: caller supplies the interval and its kinds.
SliceSolution solve_on_interval(const SystemEvaluator& ev, double t, double x0, const std::vector<double>& v0,
                                const Interval& domain, const SolverOptions& opt);

}  // namespace paramode
