#include "paramode/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paramode {

double Rect::diagonal() const { return std::hypot(width(), height()); }

Shape Shape::make_rect(double t0, double t1, double x0, double x1) {
  if (!(t0 < t1 && x0 < x1)) throw std::invalid_argument("rect must have t0 < t1 and x0 < x1");
  Shape s;
  s.kind = Kind::Rect;
  s.rect = {t0, t1, x0, x1};
  return s;
}

Shape Shape::make_disk(double tc, double xc, double r) {
  if (!(r > 0)) throw std::invalid_argument("disk radius must be positive");
  Shape s;
  s.kind = Kind::Disk;
  s.disk = {tc, xc, r};
  return s;
}

Shape Shape::make_predicate(const std::string& src) {
  Shape s;
  s.kind = Kind::Predicate;
  s.pred = expr::Expr::parse(src);
  if (!s.pred.is_predicate()) throw std::invalid_argument("region expression must be a predicate: " + src);
  s.pred_src = src;
  return s;
}

std::optional<std::size_t> Slice::find(double x) const {
  for (std::size_t i = 0; i < intervals.size(); ++i)
    if (intervals[i].contains(x)) return i;
  return std::nullopt;
}

void Region::finalize() {
  if (!(bbox.t0 < bbox.t1 && bbox.x0 < bbox.x1)) throw std::invalid_argument("bbox must be nondegenerate");
  if (resolution < 0 || !std::isfinite(resolution)) throw std::invalid_argument("resolution must be positive");
  if (resolution == 0) resolution = 1e-3 * bbox.diagonal();
  std::sort(exclude_points.begin(), exclude_points.end(), [](const Point& a, const Point& b) {
    return a.t < b.t || (a.t == b.t && a.x < b.x);
  });
  for (auto& s : exclude_vsegments)
    if (s.x_lo > s.x_hi) std::swap(s.x_lo, s.x_hi);
  std::sort(exclude_vsegments.begin(), exclude_vsegments.end(),
            [](const VSegment& a, const VSegment& b) { return a.t < b.t; });
  for (auto& s : exclude_segments) {
    if (s.t0 > s.t1) {
      std::swap(s.t0, s.t1);
      std::swap(s.x0, s.x1);
    }
  }
}

namespace {

bool shape_contains_open(const Shape& s, double t, double x) {
  switch (s.kind) {
    case Shape::Kind::Rect:
      return s.rect.t0 < t && t < s.rect.t1 && s.rect.x0 < x && x < s.rect.x1;
    case Shape::Kind::Disk: {
      double dt = t - s.disk.tc, dx = x - s.disk.xc;
      return dt * dt + dx * dx < s.disk.r * s.disk.r;
    }
    case Shape::Kind::Predicate:
      return s.pred.test(t, x);
  }
  return false;
}

bool shape_contains_closed(const Shape& s, double t, double x) {
  switch (s.kind) {
    case Shape::Kind::Rect:
      return s.rect.t0 <= t && t <= s.rect.t1 && s.rect.x0 <= x && x <= s.rect.x1;
    case Shape::Kind::Disk: {
      double dt = t - s.disk.tc, dx = x - s.disk.xc;
      return dt * dt + dx * dx <= s.disk.r * s.disk.r;
    }
    case Shape::Kind::Predicate:
      return s.pred.test(t, x);
  }
  return false;
}

bool on_segment(const Segment& s, double t, double x) {
  if (s.t0 == s.t1) return false;  // vertical ones are handled separately
  if (t < s.t0 || t > s.t1) return false;
  double v = s.x0 + (s.x1 - s.x0) * (t - s.t0) / (s.t1 - s.t0);
  return std::fabs(x - v) <= 1e-14 * (1.0 + std::fabs(v));
}

// Runs of a predicate along the line t, endpoints bisected to tol and kept
// on the true side.
std::vector<Interval> predicate_runs(const expr::Expr& pred, double t, double x0, double x1, double h) {
  std::vector<Interval> out;
  std::size_t n = static_cast<std::size_t>(std::ceil((x1 - x0) / h));
  n = std::max<std::size_t>(n, 4);
  double dx = (x1 - x0) / static_cast<double>(n);
  double tol = h / 100.0;
  auto at = [&](std::size_t j) { return j == 0 ? x0 : (j == n ? x1 : x0 + dx * static_cast<double>(j)); };
  auto inside = [&](double x) { return pred.test(t, x); };
  auto refine = [&](double out_x, double in_x) {
    while (std::fabs(in_x - out_x) > tol) {
      double m = 0.5 * (in_x + out_x);
      if (inside(m)) in_x = m;
      else out_x = m;
    }
    return in_x;
  };
  // probe just inside the bbox edges rather than on them
  auto probe = [&](std::size_t j) {
    if (j == 0) return inside(x0 + tol * 1e-3);
    if (j == n) return inside(x1 - tol * 1e-3);
    return inside(at(j));
  };
  bool prev = probe(0);
  double start = x0;
  EndKind start_kind = EndKind::Clip;
  for (std::size_t j = 1; j <= n; ++j) {
    bool cur = probe(j);
    if (cur && !prev) {
      start = refine(at(j - 1), at(j));
      start_kind = EndKind::Boundary;
    } else if (!cur && prev) {
      double end = refine(at(j), at(j - 1));
      if (end > start) out.push_back({start, end, start_kind, EndKind::Boundary});
    }
    prev = cur;
  }
  if (prev) out.push_back({start, x1, start_kind, EndKind::Clip});
  return out;
}

}  // namespace

std::vector<Interval> Region::base_intervals(double t) const {
  std::vector<Interval> iv;
  if (shapes.empty()) {
    iv.push_back({bbox.x0, bbox.x1, EndKind::Clip, EndKind::Clip});
    return iv;
  }
  for (const Shape& s : shapes) {
    switch (s.kind) {
      case Shape::Kind::Rect:
        if (s.rect.t0 < t && t < s.rect.t1)
          iv.push_back({s.rect.x0, s.rect.x1, EndKind::Boundary, EndKind::Boundary});
        break;
      case Shape::Kind::Disk: {
        double dt = t - s.disk.tc;
        double w2 = s.disk.r * s.disk.r - dt * dt;
        if (w2 > 0) {
          double w = std::sqrt(w2);
          iv.push_back({s.disk.xc - w, s.disk.xc + w, EndKind::Boundary, EndKind::Boundary});
        }
        break;
      }
      case Shape::Kind::Predicate: {
        auto runs = predicate_runs(s.pred, t, bbox.x0, bbox.x1, resolution);
        iv.insert(iv.end(), runs.begin(), runs.end());
        break;
      }
    }
  }
  // clip to bbox
  std::vector<Interval> clipped;
  for (Interval v : iv) {
    if (v.lo <= bbox.x0) {
      v.lo = bbox.x0;
      v.lo_kind = EndKind::Clip;
    }
    if (v.hi >= bbox.x1) {
      v.hi = bbox.x1;
      v.hi_kind = EndKind::Clip;
    }
    if (v.lo < v.hi) clipped.push_back(v);
  }
  std::sort(clipped.begin(), clipped.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const Interval& v : clipped) {
    if (!merged.empty() && v.lo < merged.back().hi) {
      if (v.hi > merged.back().hi) {
        merged.back().hi = v.hi;
        merged.back().hi_kind = v.hi_kind;
      }
    } else {
      merged.push_back(v);
    }
  }
  return merged;
}

void Region::subtract(std::vector<Interval>& iv, double a, double b) const {
  std::vector<Interval> out;
  out.reserve(iv.size() + 1);
  for (const Interval& v : iv) {
    if (!(a < v.hi && b > v.lo)) {
      out.push_back(v);
      continue;
    }
    if (a > v.lo) out.push_back({v.lo, a, v.lo_kind, EndKind::Excluded});
    if (b < v.hi) out.push_back({b, v.hi, EndKind::Excluded, v.hi_kind});
  }
  iv.swap(out);
}

Slice Region::slice(double t) const {
  Slice s;
  s.t = t;
  if (!(bbox.t0 < t && t < bbox.t1)) return s;
  std::vector<Interval> iv = base_intervals(t);
  for (const Shape& e : exclude_shapes) {
    switch (e.kind) {
      case Shape::Kind::Rect:
        if (e.rect.t0 <= t && t <= e.rect.t1) subtract(iv, e.rect.x0, e.rect.x1);
        break;
      case Shape::Kind::Disk: {
        double dt = t - e.disk.tc;
        double w2 = e.disk.r * e.disk.r - dt * dt;
        if (w2 >= 0) {
          double w = std::sqrt(w2);
          subtract(iv, e.disk.xc - w, e.disk.xc + w);
        }
        break;
      }
      case Shape::Kind::Predicate: {
        auto runs = predicate_runs(e.pred, t, bbox.x0, bbox.x1, resolution);
        for (const auto& r : runs) subtract(iv, r.lo, r.hi);
        break;
      }
    }
  }
  auto [p0, p1] = std::equal_range(exclude_points.begin(), exclude_points.end(), Point{t, 0.0},
                                   [](const Point& a, const Point& b) { return a.t < b.t; });
  for (auto it = p0; it != p1; ++it) subtract(iv, it->x, it->x);
  auto [v0, v1] = std::equal_range(exclude_vsegments.begin(), exclude_vsegments.end(), VSegment{t, 0, 0},
                                   [](const VSegment& a, const VSegment& b) { return a.t < b.t; });
  for (auto it = v0; it != v1; ++it) subtract(iv, it->x_lo, it->x_hi);
  for (const Segment& seg : exclude_segments) {
    if (seg.t0 == seg.t1) {
      if (seg.t0 == t) subtract(iv, std::min(seg.x0, seg.x1), std::max(seg.x0, seg.x1));
      continue;
    }
    if (t >= seg.t0 && t <= seg.t1) {
      double xs = seg.x0 + (seg.x1 - seg.x0) * (t - seg.t0) / (seg.t1 - seg.t0);
      subtract(iv, xs, xs);
    }
  }
  s.intervals = std::move(iv);
  return s;
}

bool Region::contains(double t, double x) const {
  if (!(bbox.t0 < t && t < bbox.t1 && bbox.x0 < x && x < bbox.x1)) return false;
  if (!shapes.empty()) {
    bool in = false;
    for (const Shape& s : shapes)
      if (shape_contains_open(s, t, x)) {
        in = true;
        break;
      }
    if (!in) return false;
  }
  for (const Shape& e : exclude_shapes)
    if (shape_contains_closed(e, t, x)) return false;
  auto it = std::lower_bound(exclude_points.begin(), exclude_points.end(), Point{t, x},
                             [](const Point& a, const Point& b) { return a.t < b.t || (a.t == b.t && a.x < b.x); });
  if (it != exclude_points.end() && it->t == t && it->x == x) return false;
  auto [v0, v1] = std::equal_range(exclude_vsegments.begin(), exclude_vsegments.end(), VSegment{t, 0, 0},
                                   [](const VSegment& a, const VSegment& b) { return a.t < b.t; });
  for (auto v = v0; v != v1; ++v)
    if (v->x_lo <= x && x <= v->x_hi) return false;
  for (const Segment& seg : exclude_segments) {
    if (seg.t0 == seg.t1) {
      if (t == seg.t0 && std::min(seg.x0, seg.x1) <= x && x <= std::max(seg.x0, seg.x1)) return false;
    } else if (on_segment(seg, t, x)) {
      return false;
    }
  }
  return true;
}

std::vector<double> Region::critical_t() const {
  std::vector<double> c;
  auto add = [&](double t) {
    if (bbox.t0 < t && t < bbox.t1) c.push_back(t);
  };
  for (const auto& p : exclude_points) add(p.t);
  for (const auto& v : exclude_vsegments) add(v.t);
  for (const auto& s : exclude_segments) {
    add(s.t0);
    add(s.t1);
  }
  auto shape_edges = [&](const Shape& s) {
    if (s.kind == Shape::Kind::Rect) {
      add(s.rect.t0);
      add(s.rect.t1);
    } else if (s.kind == Shape::Kind::Disk) {
      add(s.disk.tc - s.disk.r);
      add(s.disk.tc + s.disk.r);
    }
  };
  for (const auto& s : shapes) shape_edges(s);
  for (const auto& s : exclude_shapes) shape_edges(s);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

std::vector<double> Region::t_samples() const {
  std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(bbox.width() / resolution)));
  double dt = bbox.width() / static_cast<double>(n);
  std::vector<double> crit = critical_t();
  std::vector<double> out;
  out.reserve(n + 2 * crit.size() + 1);
  double near = dt * 1e-3;
  for (std::size_t i = 0; i < n; ++i) {
    double t = bbox.t0 + (static_cast<double>(i) + 0.5) * dt;
    auto it = std::lower_bound(crit.begin(), crit.end(), t - near);
    if (it != crit.end() && *it <= t + near) continue;
    out.push_back(t);
  }
  out.insert(out.end(), crit.begin(), crit.end());
  std::sort(out.begin(), out.end());
  // every pair of neighbouring critical values gets a generic column between them
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
    auto it = std::upper_bound(out.begin(), out.end(), crit[i]);
    if (it != out.end() && *it == crit[i + 1]) mids.push_back(0.5 * (crit[i] + crit[i + 1]));
  }
  if (!crit.empty()) {
    if (out.front() == crit.front()) mids.push_back(0.5 * (bbox.t0 + crit.front()));
    if (out.back() == crit.back()) mids.push_back(0.5 * (crit.back() + bbox.t1));
  }
  out.insert(out.end(), mids.begin(), mids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Region Region::clipped(const Rect& box) const {
  Region r = *this;
  r.bbox = {std::max(bbox.t0, box.t0), std::min(bbox.t1, box.t1), std::max(bbox.x0, box.x0),
            std::min(bbox.x1, box.x1)};
  r.finalize();
  return r;
}

void Region::add_dyadic_punctures(int depth) {
  for (int k = 1; k <= depth; ++k) {
    double step = std::ldexp(1.0, -k);
    long m = 1L << k;
    for (long l = 1; l < m; ++l) exclude_points.push_back({step * static_cast<double>(l), 1.0 - step});
  }
  finalize();
}

int Region::auto_dyadic_depth() const {
  return static_cast<int>(std::ceil(std::log2(bbox.width() / resolution))) + 1;
}

namespace fixtures {

namespace {
Region finished(Region r, double h) {
  r.resolution = h;
  r.finalize();
  return r;
}
}  // namespace

Region rectangle(double t0, double t1, double x0, double x1, double h) {
  Region r;
  r.bbox = {t0, t1, x0, x1};
  r.shapes.push_back(Shape::make_rect(t0, t1, x0, x1));
  return finished(std::move(r), h);
}

Region strip(double t0, double t1, double x0, double x1, double h) {
  Region r;
  double pad = 0.25 * (x1 - x0);
  r.bbox = {t0, t1, x0 - pad, x1 + pad};
  r.shapes.push_back(Shape::make_rect(t0 - 1.0, t1 + 1.0, x0, x1));
  return finished(std::move(r), h);
}

Region punctured_plane(double rad, double h) {
  Region r;
  r.bbox = {-rad, rad, -rad, rad};
  r.exclude_points.push_back({0.0, 0.0});
  return finished(std::move(r), h);
}

Region slit_plane(double rad, double h) {
  Region r;
  r.bbox = {-rad, rad, -rad, rad};
  r.exclude_segments.push_back({0.0, 0.0, rad, 0.0});
  return finished(std::move(r), h);
}

Region stacked_rectangles(double h) {
  Region r;
  r.bbox = {0.0, 1.0, 0.0, 3.0};
  r.shapes.push_back(Shape::make_rect(0.0, 1.0, 0.0, 1.0));
  r.shapes.push_back(Shape::make_rect(0.0, 1.0, 2.0, 3.0));
  return finished(std::move(r), h);
}

Region annulus(double ro, double ri, double h) {
  Region r;
  r.bbox = {-ro, ro, -ro, ro};
  r.shapes.push_back(Shape::make_disk(0.0, 0.0, ro));
  r.exclude_shapes.push_back(Shape::make_disk(0.0, 0.0, ri));
  return finished(std::move(r), h);
}

Region punctured_square(int depth, double h) {
  Region r;
  r.bbox = {0.0, 1.0, 0.0, 1.0};
  r = finished(std::move(r), h);
  r.add_dyadic_punctures(depth > 0 ? depth : r.auto_dyadic_depth());
  return r;
}

}  // namespace fixtures

}  // namespace paramode
