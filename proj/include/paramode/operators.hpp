#pragma once
// Scalar operators sum_i g^i(t,x) d^i/dx^i and first-order systems v_x = A v + F.

#include <optional>
#include <string>
#include <vector>

#include "paramode/expr.hpp"
#include "paramode/region.hpp"

namespace paramode {

struct ScalarOperator {
  int p = 1;
  std::vector<expr::Expr> g;  // g[0..p]
  std::optional<expr::Expr> f;
  Region region;

  /// Validates order and arity.
  static ScalarOperator make(Region region, std::vector<expr::Expr> g, std::optional<expr::Expr> f = {});
  static ScalarOperator parse(Region region, const std::vector<std::string>& g,
                              const std::optional<std::string>& f = {});

  double rhs(double t, double x) const { return f ? (*f)(t, x) : 0.0; }
};

struct LeadingCheck {
  bool ok = true;
  double min_abs = 0;
  std::string message;
};

/// Leading coefficient nonvanishing with constant sign per component,
/// checked on the raster columns with `per_interval` probes each and
/// bisection where the sign flips.
LeadingCheck check_leading(const ScalarOperator& op, int per_interval = 64);

struct LinearSystem {
  int p = 1;
  std::vector<std::vector<expr::Expr>> A;  // p x p
  std::vector<expr::Expr> F;               // p
  Region region;

  static LinearSystem make(Region region, std::vector<std::vector<expr::Expr>> A, std::vector<expr::Expr> F = {});
  bool homogeneous() const;
  double trace(double t, double x) const;
};

LinearSystem companion(const ScalarOperator& op);

/// Fills A (row-major) and F for a system. Constant entries are evaluated once.
class SystemEvaluator {
 public:
  explicit SystemEvaluator(const LinearSystem& sys, bool with_forcing = true);
  int dim() const { return p_; }
  void operator()(double t, double x, double* A, double* F) const;
  /// dv = A v + F
  void rhs(double t, double x, const double* v, double* dv, double* scratch) const;
  bool forced() const { return forced_; }

 private:
  struct Entry {
    std::size_t index;
    const expr::Expr* e;
  };
  int p_ = 0;
  bool forced_ = false;
  std::vector<double> constA_, constF_;
  std::vector<Entry> varA_, varF_;
};

/// u sampled along vertical lines: x[i] and u[i] belong to t[i].
struct SampledField {
  std::vector<double> t;
  std::vector<std::vector<double>> x, u;
};

/// max |sum g^i D^i u - f| / (1 + |f| + sum |g^i D^i u|) over interior nodes,
/// D^i by central finite differences on each line.
double residual(const ScalarOperator& op, const SampledField& u);

}  // namespace paramode
