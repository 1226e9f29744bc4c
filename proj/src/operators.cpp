#include "paramode/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "paramode/numeric.hpp"
#include "paramode/topology.hpp"

namespace paramode {

ScalarOperator ScalarOperator::make(Region region, std::vector<expr::Expr> g, std::optional<expr::Expr> f) {
  if (g.size() < 2) throw std::invalid_argument("operator needs order >= 1 (at least two coefficients)");
  for (const auto& e : g)
    if (e.is_predicate()) throw std::invalid_argument("coefficients must be numeric expressions");
  if (f && f->is_predicate()) throw std::invalid_argument("right-hand side must be numeric");
  ScalarOperator op;
  op.p = static_cast<int>(g.size()) - 1;
  op.g = std::move(g);
  op.f = std::move(f);
  op.region = std::move(region);
  return op;
}

ScalarOperator ScalarOperator::parse(Region region, const std::vector<std::string>& g,
                                     const std::optional<std::string>& f) {
  std::vector<expr::Expr> ge;
  for (const auto& s : g) ge.push_back(expr::Expr::parse(s));
  std::optional<expr::Expr> fe;
  if (f) fe = expr::Expr::parse(*f);
  return make(std::move(region), std::move(ge), std::move(fe));
}

LeadingCheck check_leading(const ScalarOperator& op, int per_interval) {
  LeadingCheck out;
  const expr::Expr& lead = op.g.back();
  Raster r = rasterize(op.region);
  std::vector<int> sign(static_cast<std::size_t>(r.n_components), 0);
  out.min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    const Slice& s = r.columns[i];
    for (std::size_t k = 0; k < s.intervals.size(); ++k) {
      const Interval& v = s.intervals[k];
      int& sg = sign[static_cast<std::size_t>(r.label[i][k])];
      double prev_x = 0, prev_val = 0;
      for (int j = 1; j <= per_interval; ++j) {
        double x = v.lo + (v.hi - v.lo) * j / (per_interval + 1.0);
        double val = lead(s.t, x);
        if (!std::isfinite(val) || val == 0.0) {
          out.ok = false;
          std::ostringstream m;
          m << "leading coefficient vanishes or is singular at (" << s.t << ", " << x << ")";
          out.message = m.str();
          return out;
        }
        out.min_abs = std::min(out.min_abs, std::fabs(val));
        int cur = val > 0 ? 1 : -1;
        if (sg == 0) sg = cur;
        if (cur != sg) {
          double a = prev_x, b = x;
          if (j == 1) a = v.lo + (v.hi - v.lo) * 0.5 / (per_interval + 1.0);
          double fa = j == 1 ? lead(s.t, a) : prev_val;
          for (int it = 0; it < 60 && (fa > 0) != (cur > 0); ++it) {
            double m = 0.5 * (a + b);
            double fm = lead(s.t, m);
            if ((fm > 0) == (fa > 0)) {
              a = m;
              fa = fm;
            } else {
              b = m;
            }
            if (b - a < 1e-14 * (1 + std::fabs(b))) break;
          }
          out.ok = false;
          std::ostringstream m;
          m << "leading coefficient changes sign within a component near (" << s.t << ", " << 0.5 * (a + b) << ")";
          out.message = m.str();
          return out;
        }
        prev_x = x;
        prev_val = val;
      }
    }
  }
  return out;
}

LinearSystem LinearSystem::make(Region region, std::vector<std::vector<expr::Expr>> A, std::vector<expr::Expr> F) {
  LinearSystem s;
  s.p = static_cast<int>(A.size());
  if (s.p < 1) throw std::invalid_argument("system dimension must be >= 1");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != s.p) throw std::invalid_argument("A must be square");
  if (F.empty()) F.assign(static_cast<std::size_t>(s.p), expr::Expr::constant(0.0));
  if (static_cast<int>(F.size()) != s.p) throw std::invalid_argument("F must have the dimension of A");
  s.A = std::move(A);
  s.F = std::move(F);
  s.region = std::move(region);
  return s;
}

bool LinearSystem::homogeneous() const {
  return std::all_of(F.begin(), F.end(), [](const expr::Expr& e) {
    auto c = e.constant_value();
    return c && *c == 0.0;
  });
}

double LinearSystem::trace(double t, double x) const {
  double s = 0;
  for (int i = 0; i < p; ++i) s += A[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)](t, x);
  return s;
}

LinearSystem companion(const ScalarOperator& op) {
  using expr::Expr;
  const auto p = static_cast<std::size_t>(op.p);
  std::vector<std::vector<Expr>> A(p, std::vector<Expr>(p, Expr::constant(0.0)));
  for (std::size_t i = 0; i + 1 < p; ++i) A[i][i + 1] = Expr::constant(1.0);
  const Expr& lead = op.g[p];
  for (std::size_t i = 0; i < p; ++i) A[p - 1][i] = -(op.g[i] / lead);
  std::vector<Expr> F(p, Expr::constant(0.0));
  if (op.f) F[p - 1] = *op.f / lead;
  return LinearSystem::make(op.region, std::move(A), std::move(F));
}

SystemEvaluator::SystemEvaluator(const LinearSystem& sys, bool with_forcing) : p_(sys.p) {
  const auto p = static_cast<std::size_t>(p_);
  constA_.assign(p * p, 0.0);
  constF_.assign(p, 0.0);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const expr::Expr& e = sys.A[i][j];
      if (auto c = e.constant_value()) constA_[i * p + j] = *c;
      else varA_.push_back({i * p + j, &e});
    }
  if (with_forcing) {
    for (std::size_t i = 0; i < p; ++i) {
      const expr::Expr& e = sys.F[i];
      if (auto c = e.constant_value()) {
        constF_[i] = *c;
        if (*c != 0.0) forced_ = true;
      } else {
        varF_.push_back({i, &e});
        forced_ = true;
      }
    }
  }
}

void SystemEvaluator::operator()(double t, double x, double* A, double* F) const {
  std::copy(constA_.begin(), constA_.end(), A);
  for (const auto& en : varA_) A[en.index] = (*en.e)(t, x);
  if (F) {
    std::copy(constF_.begin(), constF_.end(), F);
    for (const auto& en : varF_) F[en.index] = (*en.e)(t, x);
  }
}

void SystemEvaluator::rhs(double t, double x, const double* v, double* dv, double* scratch) const {
  const auto p = static_cast<std::size_t>(p_);
  double* A = scratch;
  double* F = scratch + p * p;
  (*this)(t, x, A, F);
  for (std::size_t i = 0; i < p; ++i) {
    double s = F[i];
    for (std::size_t j = 0; j < p; ++j) {
      double a = A[i * p + j];
      if (a != 0.0) s += a * v[j];
    }
    dv[i] = s;
  }
}

double residual(const ScalarOperator& op, const SampledField& u) {
  const int p = op.p;
  const int half = p / 2 + 1;  // stencil of 2*half+1 >= p+2 points
  double worst = 0.0;
  bool any = false;
  for (std::size_t r = 0; r < u.t.size(); ++r) {
    const auto& x = u.x[r];
    const auto& v = u.u[r];
    if (x.size() < static_cast<std::size_t>(2 * half + 1))
      throw std::invalid_argument("grid too coarse for central differences of order " + std::to_string(p));
    const double t = u.t[r];
    for (std::size_t j = static_cast<std::size_t>(half); j + static_cast<std::size_t>(half) < x.size(); ++j) {
      std::span<const double> nodes(x.data() + j - static_cast<std::size_t>(half),
                                    static_cast<std::size_t>(2 * half + 1));
      double sum = 0, mag = 0;
      for (int i = 0; i <= p; ++i) {
        double gi = op.g[static_cast<std::size_t>(i)](t, x[j]);
        if (gi == 0.0) continue;
        auto w = numeric::fd_weights(x[j], nodes, i);
        double d = 0;
        for (std::size_t k = 0; k < w.size(); ++k) d += w[k] * v[j - static_cast<std::size_t>(half) + k];
        sum += gi * d;
        mag += std::fabs(gi * d);
      }
      double f = op.rhs(t, x[j]);
      double rel = std::fabs(sum - f) / (1.0 + std::fabs(f) + mag);
      if (std::isfinite(rel)) {
        worst = std::max(worst, rel);
        any = true;
      }
    }
  }
  if (!any) throw std::invalid_argument("no interior samples for the residual");
  return worst;
}

}  // namespace paramode
