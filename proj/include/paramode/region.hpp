#pragma once
// Open planar regions in the (t, x) plane and their vertical slices.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "paramode/expr.hpp"

namespace paramode {

struct Rect {
  double t0 = 0, t1 = 0, x0 = 0, x1 = 0;
  double width() const { return t1 - t0; }
  double height() const { return x1 - x0; }
  double diagonal() const;
};

struct Disk {
  double tc = 0, xc = 0, r = 0;
};

/// Primitive shape. Open when used as a base shape, closed when excluded.
struct Shape {
  enum class Kind { Rect, Disk, Predicate } kind = Kind::Rect;
  paramode::Rect rect;
  paramode::Disk disk;
  expr::Expr pred;
  std::string pred_src;

  static Shape make_rect(double t0, double t1, double x0, double x1);
  static Shape make_disk(double tc, double xc, double r);
  static Shape make_predicate(const std::string& src);
};

struct Point {
  double t = 0, x = 0;
};

/// Closed vertical segment {t} x [x_lo, x_hi].
struct VSegment {
  double t = 0, x_lo = 0, x_hi = 0;
};

/// Closed straight segment from (t0, x0) to (t1, x1).
struct Segment {
  double t0 = 0, x0 = 0, t1 = 0, x1 = 0;
};

enum class EndKind {
  Clip,      // bbox edge, stands in for an unbounded side
  Boundary,  // boundary of the base shapes
  Excluded,  // removed point, segment or closed shape
};

struct Interval {
  double lo = 0, hi = 0;
  EndKind lo_kind = EndKind::Boundary, hi_kind = EndKind::Boundary;
  bool contains(double x) const { return lo < x && x < hi; }
  double width() const { return hi - lo; }
};

struct Slice {
  double t = 0;
  std::vector<Interval> intervals;
  /// Index of the interval containing x, if any.
  std::optional<std::size_t> find(double x) const;
};

class Region {
 public:
  Rect bbox;
  std::vector<Shape> shapes;          // union; empty means all of bbox
  std::vector<Shape> exclude_shapes;  // removed as closed sets
  std::vector<Point> exclude_points;
  std::vector<VSegment> exclude_vsegments;
  std::vector<Segment> exclude_segments;
  double resolution = 0;  // 0 selects 1e-3 of the bbox diagonal

  /// Sorts exclusion lists and fixes the resolution. Called by loaders and
  /// builders; queries on an unfinalized region give undefined answers.
  void finalize();

  double h() const { return resolution; }
  bool contains(double t, double x) const;
  Slice slice(double t) const;

  /// t values where exclusions or shape edges sit.
  std::vector<double> critical_t() const;
  /// Interior uniform grid merged with the critical values.
  std::vector<double> t_samples() const;

  /// A region restricted to a sub-rectangle (intersected with bbox).
  Region clipped(const Rect& box) const;

  /// Removes the points (2^-k l, 1 - 2^-k), 1 <= l < 2^k, for k = 1..depth.
  void add_dyadic_punctures(int depth);
  /// Depth at which adjacent puncture lines are closer than the resolution.
  int auto_dyadic_depth() const;

 private:
  std::vector<Interval> base_intervals(double t) const;
  void subtract(std::vector<Interval>& iv, double a, double b) const;
};

// Named fixtures used by tests, the acceptance suite and `reproduce`.
namespace fixtures {
Region rectangle(double t0, double t1, double x0, double x1, double h = 0);
/// R x (x0, x1) clipped to t in (t0, t1).
Region strip(double t0, double t1, double x0, double x1, double h = 0);
/// Plane minus the origin, clipped to [-r, r]^2.
Region punctured_plane(double r, double h = 0);
/// Plane minus the ray t >= 0 on the t-axis, clipped to [-r, r]^2.
Region slit_plane(double r, double h = 0);
Region stacked_rectangles(double h = 0);
/// Open disk of radius ro minus the closed disk of radius ri, both at the origin.
Region annulus(double ro, double ri, double h = 0);
/// Unit square with dyadic punctures; depth <= 0 selects the auto depth.
Region punctured_square(int depth, double h = 0);
}  // namespace fixtures

}  // namespace paramode
