#include "paramode/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace paramode {

const char* to_string(SliceStatus s) {
  switch (s) {
    case SliceStatus::ok: return "ok";
    case SliceStatus::blowup: return "blowup";
    case SliceStatus::left_domain: return "left_domain";
  }
  return "?";
}

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct Rhs {
  const SystemEvaluator& ev;
  double t;
  bool log_mode;
  mutable std::vector<double> scratch;

  Rhs(const SystemEvaluator& e, double tt, bool lm)
      : ev(e), t(tt), log_mode(lm), scratch(static_cast<std::size_t>(e.dim() * e.dim() + e.dim())) {}

  void operator()(double x, const double* v, double* dv) const {
    if (log_mode) {
      ev(t, x, scratch.data(), nullptr);
      dv[0] = scratch[0];
    } else {
      ev.rhs(t, x, v, dv, scratch.data());
    }
  }
};

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

double inf_norm(const std::vector<double>& v) {
  double m = 0;
  for (double a : v) m = std::max(m, std::fabs(a));
  return m;
}

void dense_eval(const DenseSegment& s, std::size_t p, double x, double* out) {
  double h = s.xb - s.xa;
  double th = h == 0 ? 0.0 : (x - s.xa) / h;
  double th1 = 1.0 - th;
  for (std::size_t i = 0; i < p; ++i) {
    const double* r = s.r.data() + 5 * i;
    out[i] = r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
  }
}

// Integrates from x0 toward `end`. `boundary_end` marks whether reaching
// `end` means the slice boundary was approached.
Branch integrate(const Rhs& f, std::size_t p, double x0, const std::vector<double>& v0, double end,
                 bool boundary_end, const SolverOptions& opt) {
  Branch br;
  br.x_end = x0;
  br.x_star = x0;
  if (end == x0) {
    br.status = boundary_end ? SliceStatus::left_domain : SliceStatus::ok;
    return br;
  }
  const double dir = end > x0 ? 1.0 : -1.0;
  const double span = std::fabs(end - x0);
  const double hmax = opt.max_step > 0 ? opt.max_step : span / 8.0;
  const bool log_mode = f.log_mode;

  std::vector<double> y = v0, ynew(p), k1(p), k2(p), k3(p), k4(p), k5(p), k6(p), k7(p), tmp(p), err(p);
  double x = x0;
  f(x, y.data(), k1.data());

  auto scale = [&](std::size_t i) {
    return opt.atol + opt.rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
  };

  // initial step guess
  double hh;
  {
    double dn0 = 0, dn1 = 0;
    for (std::size_t i = 0; i < p; ++i) {
      double sc = opt.atol + opt.rtol * std::fabs(y[i]);
      if (sc == 0) continue;
      dn0 += (y[i] / sc) * (y[i] / sc);
      dn1 += (k1[i] / sc) * (k1[i] / sc);
    }
    dn0 = std::sqrt(dn0 / static_cast<double>(p));
    dn1 = std::sqrt(dn1 / static_cast<double>(p));
    hh = (dn0 <= 1e-10 || dn1 <= 1e-10 || !std::isfinite(dn1)) ? 1e-6 : 0.01 * dn0 / dn1;
    hh = std::min({hh, hmax, span});
    hh = std::max(hh, std::min(span, 10 * opt.min_step));
  }

  constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  constexpr double facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
  double errold = 1e-4;
  bool reject = false;

  while (true) {
    if (br.steps + br.rejected >= opt.max_steps) {
      br.status = SliceStatus::blowup;
      br.x_star = x;
      return br;
    }
    double remaining = std::fabs(end - x);
    bool last = false;
    if (hh >= remaining) {
      hh = remaining;
      last = true;
    }
    const double h = dir * hh;
    for (std::size_t i = 0; i < p; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(x + c2 * h, tmp.data(), k2.data());
    for (std::size_t i = 0; i < p; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(x + c3 * h, tmp.data(), k3.data());
    for (std::size_t i = 0; i < p; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(x + c4 * h, tmp.data(), k4.data());
    for (std::size_t i = 0; i < p; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(x + c5 * h, tmp.data(), k5.data());
    for (std::size_t i = 0; i < p; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    double xph = last ? end : x + h;
    f(xph, tmp.data(), k6.data());
    for (std::size_t i = 0; i < p; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    f(xph, ynew.data(), k7.data());

    double en = 0;
    bool finite = all_finite(ynew) && all_finite(k7);
    if (finite) {
      std::size_t counted = 0;
      for (std::size_t i = 0; i < p; ++i) {
        double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double sc = scale(i);
        if (sc == 0) {
          if (e == 0) continue;
          en = std::numeric_limits<double>::infinity();
          break;
        }
        en += (e / sc) * (e / sc);
        ++counted;
      }
      if (std::isfinite(en)) en = counted ? std::sqrt(en / static_cast<double>(counted)) : 0.0;
    } else {
      en = std::numeric_limits<double>::infinity();
    }

    if (!std::isfinite(en)) {
      hh *= 0.2;
      ++br.rejected;
      reject = true;
      if (hh < opt.min_step) {
        br.status = SliceStatus::blowup;
        br.x_star = x;
        return br;
      }
      continue;
    }

    double fac11 = std::pow(en, expo1);
    double fac = fac11 / std::pow(errold, beta);
    fac = std::max(facc2, std::min(facc1, fac / safe));
    double hnew = hh / fac;

    if (en <= 1.0) {
      DenseSegment s;
      s.xa = x;
      s.xb = xph;
      s.r.resize(5 * p);
      for (std::size_t i = 0; i < p; ++i) {
        double ydiff = ynew[i] - y[i];
        double bspl = h * k1[i] - ydiff;
        double* r = s.r.data() + 5 * i;
        r[0] = y[i];
        r[1] = ydiff;
        r[2] = bspl;
        r[3] = ydiff - h * k7[i] - bspl;
        r[4] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      ++br.steps;
      bool blew = !log_mode && inf_norm(ynew) > opt.blowup;
      br.seg.push_back(std::move(s));
      if (blew) {
        // locate the crossing inside the step
        const DenseSegment& sg = br.seg.back();
        double lo = sg.xa, hi = sg.xb;
        std::vector<double> probe(p);
        for (int it = 0; it < 60; ++it) {
          double m = 0.5 * (lo + hi);
          dense_eval(sg, p, m, probe.data());
          if (inf_norm(probe) > opt.blowup) hi = m;
          else lo = m;
        }
        br.status = SliceStatus::blowup;
        br.x_star = hi;
        br.x_end = lo;
        return br;
      }
      errold = std::max(en, 1e-4);
      x = xph;
      y.swap(ynew);
      k1.swap(k7);
      br.x_end = x;
      if (last) {
        br.status = boundary_end ? SliceStatus::left_domain : SliceStatus::ok;
        return br;
      }
      if (reject) hnew = std::min(hnew, hh);
      hh = std::min(hnew, hmax);
      reject = false;
    } else {
      hnew = hh / std::min(facc1, fac11 / safe);
      hh = hnew;
      ++br.rejected;
      reject = true;
    }
    if (hh < opt.min_step) {
      br.status = SliceStatus::blowup;
      br.x_star = x;
      return br;
    }
  }
}

}  // namespace

SliceStatus SliceSolution::status() const {
  if (!error.empty()) return SliceStatus::left_domain;
  if (left.status == SliceStatus::blowup || right.status == SliceStatus::blowup) return SliceStatus::blowup;
  if (left.status == SliceStatus::left_domain || right.status == SliceStatus::left_domain)
    return SliceStatus::left_domain;
  return SliceStatus::ok;
}

bool SliceSolution::eval_raw(double x, double* out) const {
  if (!covers(x)) return false;
  const auto pp = static_cast<std::size_t>(log_domain ? 1 : p);
  if (x == x0) {
    std::copy(v0.begin(), v0.end(), out);
    return true;
  }
  const Branch& b = x > x0 ? right : left;
  if (b.seg.empty()) return false;
  // segments are ordered away from x0; find the first whose end passes x
  auto it = std::lower_bound(b.seg.begin(), b.seg.end(), x, [&](const DenseSegment& s, double xx) {
    return x > x0 ? s.xb < xx : s.xb > xx;
  });
  if (it == b.seg.end()) it = std::prev(b.seg.end());
  dense_eval(*it, pp, x, out);
  return true;
}

bool SliceSolution::eval(double x, double* out) const {
  if (!eval_raw(x, out)) return false;
  if (log_domain) out[0] = std::exp(out[0]);
  return true;
}

double SliceSolution::value(double x, int comp) const {
  std::vector<double> buf(static_cast<std::size_t>(p));
  if (!eval(x, buf.data())) return std::nan("");
  return buf[static_cast<std::size_t>(comp)];
}

SliceSolution solve_on_interval(const SystemEvaluator& ev, double t, double x0, const std::vector<double>& v0,
                                const Interval& domain, const SolverOptions& opt) {
  // a clipped end may serve as the starting point
  bool inside = domain.contains(x0) || (x0 == domain.lo && domain.lo_kind == EndKind::Clip && x0 < domain.hi) ||
                (x0 == domain.hi && domain.hi_kind == EndKind::Clip && x0 > domain.lo);
  if (!inside) throw std::invalid_argument("initial point is not inside the slice interval");
  if (static_cast<int>(v0.size()) != ev.dim()) throw std::invalid_argument("initial data has the wrong dimension");
  SliceSolution s;
  s.t = t;
  s.x0 = x0;
  s.p = ev.dim();
  s.domain = domain;
  s.log_domain = opt.log_domain;
  if (opt.log_domain) {
    if (ev.dim() != 1 || ev.forced()) throw std::invalid_argument("log domain needs a homogeneous scalar problem");
    if (!(v0[0] > 0)) throw std::invalid_argument("log domain needs positive initial data");
    s.v0 = {std::log(v0[0])};
  } else {
    s.v0 = v0;
  }
  const double margin = 10.0 * opt.min_step;
  double lo = domain.lo_kind == EndKind::Clip ? domain.lo : domain.lo + margin;
  double hi = domain.hi_kind == EndKind::Clip ? domain.hi : domain.hi - margin;
  lo = std::min(lo, x0);
  hi = std::max(hi, x0);
  Rhs f(ev, t, opt.log_domain);
  const auto pp = static_cast<std::size_t>(opt.log_domain ? 1 : ev.dim());
  s.right = integrate(f, pp, x0, s.v0, hi, domain.hi_kind != EndKind::Clip, opt);
  s.left = integrate(f, pp, x0, s.v0, lo, domain.lo_kind != EndKind::Clip, opt);
  return s;
}

SliceSolution solve_slice(const LinearSystem& sys, double t, double x0, const std::vector<double>& v0,
                          const SolverOptions& opt) {
  Slice sl = sys.region.slice(t);
  auto k = sl.find(x0);
  if (!k) throw std::invalid_argument("initial point is not in the region");
  SystemEvaluator ev(sys);
  return solve_on_interval(ev, t, x0, v0, sl.intervals[*k], opt);
}

SliceSolution solve_slice(const LinearSystem& sys, double t, double x0, const std::vector<double>& v0,
                          const SliceTarget& target, const SolverOptions& opt) {
  Slice sl = sys.region.slice(t);
  auto k = sl.find(x0);
  if (!k) throw std::invalid_argument("initial point is not in the region");
  Interval iv = sl.intervals[*k];
  if (target.lo < iv.lo || target.hi > iv.hi || target.lo > x0 || target.hi < x0)
    throw std::invalid_argument("target interval must contain x0 and lie in the slice interval");
  // interior targets are reached exactly
  if (target.lo > iv.lo) {
    iv.lo = target.lo;
    iv.lo_kind = EndKind::Clip;
  }
  if (target.hi < iv.hi) {
    iv.hi = target.hi;
    iv.hi_kind = EndKind::Clip;
  }
  SystemEvaluator ev(sys);
  return solve_on_interval(ev, t, x0, v0, iv, opt);
}

}  // namespace paramode
