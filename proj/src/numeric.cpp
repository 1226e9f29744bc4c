#include "paramode/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paramode::numeric {

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  double err = 0.0;
  bool ok = true;

  double rec(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || !std::isfinite(delta)) {
      ok = ok && depth > 0;
      err += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (std::fabs(delta) <= 15.0 * tol || m == a || m == b) {
      err += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return rec(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           rec(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                            int max_depth) {
  if (a == b) return {};
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  Simpson s{f};
  // Split into a few panels first so narrow features are not skipped.
  constexpr int kPanels = 8;
  double total = 0.0;
  double w = (b - a) / kPanels;
  double fa = f(a);
  for (int i = 0; i < kPanels; ++i) {
    double lo = a + i * w;
    double hi = i + 1 == kPanels ? b : a + (i + 1) * w;
    double m = 0.5 * (lo + hi);
    double fm = f(m), fb = f(hi);
    double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += s.rec(lo, hi, fa, fm, fb, whole, tol / kPanels, max_depth);
    fa = fb;
  }
  return {sign * total, s.err, s.ok};
}

std::vector<double> cumulative_integral(const std::function<double(double)>& f,
                                        std::span<const double> nodes, double tol) {
  std::vector<double> out(nodes.size(), 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i)
    out[i] = out[i - 1] + adaptive_simpson(f, nodes[i - 1], nodes[i], tol).value;
  return out;
}

std::vector<double> integrals_from(const std::function<double(double)>& f, double x0,
                                   std::span<const double> nodes, double tol) {
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
  std::vector<double> out(nodes.size(), 0.0);
  // walk outward from x0 in both directions
  auto split = std::partition_point(order.begin(), order.end(), [&](std::size_t i) { return nodes[i] < x0; });
  double acc = 0.0, prev = x0;
  for (auto it = split; it != order.end(); ++it) {
    acc += adaptive_simpson(f, prev, nodes[*it], tol).value;
    prev = nodes[*it];
    out[*it] = acc;
  }
  acc = 0.0;
  prev = x0;
  for (auto it = split; it != order.begin();) {
    --it;
    acc += adaptive_simpson(f, prev, nodes[*it], tol).value;
    prev = nodes[*it];
    out[*it] = acc;
  }
  return out;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size() || x_.empty()) throw std::invalid_argument("pchip: bad sizes");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("pchip: nodes must increase");
  std::size_t n = x_.size();
  d_.assign(n, 0.0);
  if (n == 1) return;
  std::vector<double> h(n - 1), del(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    del[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  if (n == 2) {
    d_[0] = d_[1] = del[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0) {
      d_[i] = 0.0;
    } else {
      double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0) return 0.0;
    if (d0 * d1 <= 0 && std::fabs(d) > std::fabs(3 * d0)) return 3 * d0;
    return d;
  };
  d_[0] = end_slope(h[0], h[1], del[0], del[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

double Pchip::operator()(double t) const {
  if (x_.empty()) return 0.0;
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  double h = x_[i + 1] - x_[i];
  double s = (t - x_[i]) / h;
  double s2 = s * s, s3 = s2 * s;
  double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double bspline3(double u) {
  double a = std::fabs(u);
  if (a >= 2.0) return 0.0;
  if (a >= 1.0) {
    double r = 2.0 - a;
    return r * r * r / 6.0;
  }
  return (4.0 - 6.0 * a * a + 3.0 * a * a * a) / 6.0;
}

double bspline3_cdf(double u) {
  if (u <= -2.0) return 0.0;
  if (u >= 2.0) return 1.0;
  if (u > 0.0) return 1.0 - bspline3_cdf(-u);
  if (u <= -1.0) {
    double r = u + 2.0;
    return r * r * r * r / 24.0;
  }
  // u in (-1, 0]: F(-1) + integral of (4 - 6v^2 - 3v^3)/6 from -1 to u
  auto prim = [](double v) { return (4.0 * v - 2.0 * v * v * v - 0.75 * v * v * v * v) / 6.0; };
  return 1.0 / 24.0 + prim(u) - prim(-1.0);
}

std::vector<double> fd_weights(double z, std::span<const double> x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  if (m < 0 || n < m) throw std::invalid_argument("fd_weights: need more nodes than derivative order");
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1),
                                     std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) w[static_cast<std::size_t>(i)] = c[i][m];
  return w;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

}  // namespace paramode::numeric
