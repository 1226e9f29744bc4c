#pragma once
// Quadrature, interpolation and finite-difference helpers.

#include <functional>
#include <span>
#include <vector>

namespace paramode::numeric {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // sum of local Richardson estimates
  bool converged = true;
};

/// Adaptive Simpson on [a,b]. `a > b` is allowed and flips the sign.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double tol = 1e-10, int max_depth = 48);

/// Integral of f from nodes[0] to each node, accumulated panel by panel.
std::vector<double> cumulative_integral(const std::function<double(double)>& f,
                                        std::span<const double> nodes, double tol = 1e-10);

/// Integral of f from x0 to each node (nodes in any order).
std::vector<double> integrals_from(const std::function<double(double)>& f, double x0,
                                   std::span<const double> nodes, double tol = 1e-10);

/// Monotone piecewise cubic Hermite interpolant (Fritsch-Carlson slopes).
/// Constant extrapolation outside the node range.
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;
  bool empty() const { return x_.empty(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_, y_, d_;
};

/// Uniform cubic B-spline on [-2,2], unit integral, value 2/3 at 0.
double bspline3(double u);
/// Integral of bspline3 from -2 to u.
double bspline3_cdf(double u);

/// Weights for the m-th derivative at z from values at nodes x (Fornberg).
std::vector<double> fd_weights(double z, std::span<const double> x, int m);

/// Evenly spaced points including both ends.
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace paramode::numeric
