#include "paramode/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace paramode {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

bool open_overlap(const Interval& a, const Interval& b) { return std::max(a.lo, b.lo) < std::min(a.hi, b.hi); }

bool has_predicate(const Region& r) {
  for (const auto& s : r.shapes)
    if (s.kind == Shape::Kind::Predicate) return true;
  for (const auto& s : r.exclude_shapes)
    if (s.kind == Shape::Kind::Predicate) return true;
  return false;
}

}  // namespace

const Interval& Piece::nearest(double tt) const {
  auto it = std::lower_bound(t.begin(), t.end(), tt);
  std::size_t i = static_cast<std::size_t>(it - t.begin());
  if (i == t.size()) return interval.back();
  if (i > 0 && tt - t[i - 1] < t[i] - tt) --i;
  return interval[i];
}

Raster rasterize(const Region& region) {
  Raster r;
  std::vector<double> ts = region.t_samples();
  const long n = static_cast<long>(ts.size());
  r.columns.resize(ts.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (long i = 0; i < n; ++i) r.columns[static_cast<std::size_t>(i)] = region.slice(ts[static_cast<std::size_t>(i)]);

  std::vector<std::size_t> offset(ts.size() + 1, 0);
  for (std::size_t i = 0; i < ts.size(); ++i) offset[i + 1] = offset[i] + r.columns[i].intervals.size();
  UnionFind uf(offset.back());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const auto& a = r.columns[i].intervals;
    const auto& b = r.columns[i + 1].intervals;
    // both lists are sorted; merge-walk
    std::size_t p = 0, q = 0;
    while (p < a.size() && q < b.size()) {
      if (open_overlap(a[p], b[q])) uf.unite(static_cast<int>(offset[i] + p), static_cast<int>(offset[i + 1] + q));
      if (a[p].hi < b[q].hi) ++p;
      else ++q;
    }
  }
  std::vector<int> remap(offset.back(), -1);
  r.label.resize(ts.size());
  int next = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    r.label[i].resize(r.columns[i].intervals.size());
    for (std::size_t k = 0; k < r.columns[i].intervals.size(); ++k) {
      int root = uf.find(static_cast<int>(offset[i] + k));
      int& m = remap[static_cast<std::size_t>(root)];
      if (m < 0) m = next++;
      r.label[i][k] = m;
    }
  }
  r.n_components = next;
  return r;
}

namespace {

std::vector<Component> components_of(const Raster& r) {
  std::vector<Component> comps(static_cast<std::size_t>(r.n_components));
  std::vector<bool> seen(comps.size(), false);
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    std::vector<int> count(comps.size(), 0);
    for (std::size_t k = 0; k < r.label[i].size(); ++k) {
      int id = r.label[i][k];
      auto& c = comps[static_cast<std::size_t>(id)];
      const Interval& v = r.columns[i].intervals[k];
      if (!seen[static_cast<std::size_t>(id)]) {
        seen[static_cast<std::size_t>(id)] = true;
        c.id = id;
        c.first_col = i;
        c.t_lo = r.columns[i].t;
        c.x_lo = v.lo;
        c.x_hi = v.hi;
      }
      c.last_col = i;
      c.t_hi = r.columns[i].t;
      c.x_lo = std::min(c.x_lo, v.lo);
      c.x_hi = std::max(c.x_hi, v.hi);
      ++count[static_cast<std::size_t>(id)];
    }
    for (std::size_t id = 0; id < comps.size(); ++id) {
      comps[id].max_intervals = std::max(comps[id].max_intervals, count[id]);
      if (count[id] > 1) comps[id].x_simple = false;
    }
  }
  return comps;
}

double col_t(const Region& region, const Raster& r, std::ptrdiff_t i) {
  if (i < 0) return region.bbox.t0;
  if (static_cast<std::size_t>(i) >= r.columns.size()) return region.bbox.t1;
  return r.columns[static_cast<std::size_t>(i)].t;
}

// Pieces are chains of intervals linked one-to-one across adjacent columns:
// interval k of column i links to interval m of column i+1 when they overlap
// and neither overlaps anything else there. A chain is then a connected
// component of the region restricted to its t-range, with one interval per
// column.
std::vector<Piece> pieces_of(const Region& region, const Raster& r) {
  const std::size_t nc = r.columns.size();
  std::vector<std::vector<int>> right(nc), deg_r(nc), deg_l(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    right[i].assign(r.columns[i].intervals.size(), -1);
    deg_r[i].assign(r.columns[i].intervals.size(), 0);
    deg_l[i].assign(r.columns[i].intervals.size(), 0);
  }
  std::vector<std::vector<int>> cand(nc);
  for (std::size_t i = 0; i + 1 < nc; ++i) {
    const auto& a = r.columns[i].intervals;
    const auto& b = r.columns[i + 1].intervals;
    cand[i].assign(a.size(), -1);
    for (std::size_t k = 0; k < a.size(); ++k)
      for (std::size_t m = 0; m < b.size(); ++m)
        if (open_overlap(a[k], b[m])) {
          ++deg_r[i][k];
          ++deg_l[i + 1][m];
          cand[i][k] = static_cast<int>(m);
        }
  }
  for (std::size_t i = 0; i + 1 < nc; ++i)
    for (std::size_t k = 0; k < r.columns[i].intervals.size(); ++k) {
      int m = cand[i][k];
      if (m >= 0 && deg_r[i][k] == 1 && deg_l[i + 1][static_cast<std::size_t>(m)] == 1) right[i][k] = m;
    }
  std::vector<std::vector<bool>> has_left(nc);
  for (std::size_t i = 0; i < nc; ++i) has_left[i].assign(r.columns[i].intervals.size(), false);
  for (std::size_t i = 0; i + 1 < nc; ++i)
    for (int m : right[i])
      if (m >= 0) has_left[i + 1][static_cast<std::size_t>(m)] = true;

  std::vector<Piece> out;
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t k = 0; k < r.columns[i].intervals.size(); ++k) {
      if (has_left[i][k]) continue;
      Piece pc;
      pc.component = r.label[i][k];
      std::size_t ci = i, ck = k;
      while (true) {
        pc.t.push_back(r.columns[ci].t);
        pc.interval.push_back(r.columns[ci].intervals[ck]);
        if (ci + 1 >= nc || right[ci][ck] < 0) break;
        ck = static_cast<std::size_t>(right[ci][ck]);
        ++ci;
      }
      if (pc.t.size() < 2) continue;
      pc.t_lo = col_t(region, r, static_cast<std::ptrdiff_t>(i) - 1);
      pc.t_hi = col_t(region, r, static_cast<std::ptrdiff_t>(ci) + 1);
      out.push_back(std::move(pc));
    }
  std::sort(out.begin(), out.end(), [](const Piece& a, const Piece& b) {
    return a.component < b.component || (a.component == b.component && a.t.front() < b.t.front());
  });
  return out;
}

// Largest r with [x1 - r, x2 + r] inside one interval of the slice, or 0.
double cover_radius(const Slice& s, double x1, double x2) {
  for (const Interval& v : s.intervals)
    if (v.lo < x1 && x2 < v.hi) return std::min(x1 - v.lo, v.hi - x2);
  return 0.0;
}

struct Gap {
  std::size_t col;
  double x1, x2;
  double below_lo, above_hi;  // far ends of the neighbouring intervals
};

std::optional<Witness> try_candidate(const Region& region, const Raster& r, const Gap& g, bool reflected) {
  const double h = region.h();
  double t0 = r.columns[g.col].t;
  double c = std::min(g.x1 - g.below_lo, g.above_hi - g.x2);
  c = std::min(c, reflected ? region.bbox.t1 - t0 : t0 - region.bbox.t0);
  std::ptrdiff_t step = reflected ? 1 : -1;
  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(g.col) + step;
  while (j >= 0 && static_cast<std::size_t>(j) < r.columns.size()) {
    double tj = r.columns[static_cast<std::size_t>(j)].t;
    if (std::fabs(tj - t0) > c) break;
    c = std::min(c, cover_radius(r.columns[static_cast<std::size_t>(j)], g.x1, g.x2));
    j += step;
  }
  if (!(c >= h)) return std::nullopt;
  Witness w;
  w.t0 = t0;
  w.eps = 0.5 * c;
  w.x1 = g.x1;
  w.x2 = g.x2;
  w.reflected = reflected;
  return w;
}

// For predicate regions the sampled column may sit past the true onset of
// the gap; bisect t between the neighbouring column and the gap column.
void refine_onset(const Region& region, const Raster& r, const Gap& g, Witness& w) {
  std::ptrdiff_t nb = static_cast<std::ptrdiff_t>(g.col) + (w.reflected ? 1 : -1);
  if (nb < 0 || static_cast<std::size_t>(nb) >= r.columns.size()) return;
  double t_in = r.columns[static_cast<std::size_t>(nb)].t;  // no gap here
  double t_gap = w.t0;
  double x1 = w.x1, x2 = w.x2;
  auto gap_near = [&](double t, double& gx1, double& gx2) {
    Slice s = region.slice(t);
    for (std::size_t k = 0; k + 1 < s.intervals.size(); ++k) {
      double a = s.intervals[k].hi, b = s.intervals[k + 1].lo;
      if (a <= x2 + w.eps && b >= x1 - w.eps) {
        gx1 = a;
        gx2 = b;
        return true;
      }
    }
    return false;
  };
  for (int it = 0; it < 40 && std::fabs(t_gap - t_in) > 1e-3 * region.h(); ++it) {
    double m = 0.5 * (t_in + t_gap);
    double a, b;
    if (gap_near(m, a, b)) {
      t_gap = m;
      x1 = a;
      x2 = b;
    } else {
      t_in = m;
    }
  }
  double shift = std::fabs(t_gap - w.t0);
  w.t0 = t_gap;
  w.x1 = x1;
  w.x2 = x2;
  w.eps = std::max(0.0, w.eps - shift);
}

std::vector<Gap> gaps_in(const Raster& r, std::size_t i) {
  std::vector<Gap> out;
  const auto& iv = r.columns[i].intervals;
  for (std::size_t k = 0; k + 1 < iv.size(); ++k)
    if (r.label[i][k] == r.label[i][k + 1]) out.push_back({i, iv[k].hi, iv[k + 1].lo, iv[k].lo, iv[k + 1].hi});
  return out;
}

}  // namespace

Classification classify(const Region& region) { return classify(region, rasterize(region)); }

Classification classify(const Region& region, const Raster& raster) {
  Classification c;
  c.n_columns = raster.columns.size();
  for (const auto& s : raster.columns) c.max_intervals = std::max(c.max_intervals, static_cast<int>(s.intervals.size()));
  c.x_simple = c.max_intervals <= 1;
  c.components = components_of(raster);
  const double h = region.h();
  c.pieces = pieces_of(region, raster);
  for (const auto& comp : c.components) {
    if (comp.t_hi - comp.t_lo < 2 * h || comp.x_hi - comp.x_lo < 2 * h)
      c.warnings.push_back("component " + std::to_string(comp.id) +
                           " is smaller than 2h; refine the resolution");
  }
  bool any_bad = std::any_of(c.components.begin(), c.components.end(), [](const Component& k) { return !k.x_simple; });
  if (any_bad) {
    try {
      c.witness = find_witness(region, raster);
    } catch (const NoWitnessError& e) {
      c.warnings.push_back(e.what());
    }
  }
  return c;
}

Witness find_witness(const Region& region) { return find_witness(region, rasterize(region)); }

Witness find_witness(const Region& region, const Raster& r) {
  // Gaps between consecutive same-component intervals, linked across
  // adjacent columns by closed overlap.
  std::vector<Gap> gaps;
  std::vector<std::size_t> col_begin(r.columns.size() + 1, 0);
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    col_begin[i] = gaps.size();
    auto g = gaps_in(r, i);
    gaps.insert(gaps.end(), g.begin(), g.end());
  }
  col_begin[r.columns.size()] = gaps.size();
  if (gaps.empty()) throw NoWitnessError("no witness: every sampled slice of every component is connected");
  UnionFind uf(gaps.size());
  for (std::size_t i = 0; i + 1 < r.columns.size(); ++i)
    for (std::size_t p = col_begin[i]; p < col_begin[i + 1]; ++p)
      for (std::size_t q = col_begin[i + 1]; q < col_begin[i + 2]; ++q)
        if (std::max(gaps[p].x1, gaps[q].x1) <= std::min(gaps[p].x2, gaps[q].x2))
          uf.unite(static_cast<int>(p), static_cast<int>(q));
  // extreme columns of each gap component
  std::vector<std::size_t> first(gaps.size(), SIZE_MAX), last(gaps.size(), 0);
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    auto root = static_cast<std::size_t>(uf.find(static_cast<int>(g)));
    first[root] = std::min(first[root], gaps[g].col);
    last[root] = std::max(last[root], gaps[g].col);
  }
  std::optional<Witness> best;
  std::optional<Gap> best_gap;
  auto consider = [&](const Gap& g, bool reflected) {
    auto w = try_candidate(region, r, g, reflected);
    if (!w) return;
    if (!best || (best->reflected && !w->reflected) || (best->reflected == w->reflected && w->eps > best->eps)) {
      best = w;
      best_gap = g;
    }
  };
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    auto root = static_cast<std::size_t>(uf.find(static_cast<int>(g)));
    if (gaps[g].col == first[root]) consider(gaps[g], false);
    if (gaps[g].col == last[root]) consider(gaps[g], true);
  }
  if (!best)
    throw NoWitnessError("no witness at resolution h = " + std::to_string(region.h()) +
                         ": all disconnections are thinner than h; refine the resolution");
  if (has_predicate(region)) refine_onset(region, r, *best_gap, *best);
  const double h = region.h();
  std::size_t m = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((best->x2 - best->x1) / h)) + 1);
  for (std::size_t k = 0; k < m; ++k) {
    double x = m == 1 ? best->x1 : best->x1 + (best->x2 - best->x1) * static_cast<double>(k) / static_cast<double>(m - 1);
    best->upsilon.push_back({best->t0, x});
  }
  return *best;
}

bool verify_witness(const Region& region, const Witness& w, int probes) {
  const double h = region.h();
  if (region.contains(w.t0, w.x1) || region.contains(w.t0, w.x2)) return false;
  double ta = std::min(w.t0, w.t_near()), tb = std::max(w.t0, w.t_near());
  double xa = w.x1 - w.eps, xb = w.x2 + w.eps;
  auto nt = static_cast<std::size_t>(std::ceil((tb - ta) / h) * probes);
  auto nx = static_cast<std::size_t>(std::ceil((xb - xa) / h) * probes);
  for (std::size_t i = 0; i <= nt; ++i) {
    double t = ta + (tb - ta) * static_cast<double>(i) / static_cast<double>(nt);
    if (i == 0) t = ta;
    if (i == nt) t = tb;
    bool top = t == w.t0;
    for (std::size_t j = 0; j <= nx; ++j) {
      double x = j == nx ? xb : xa + (xb - xa) * static_cast<double>(j) / static_cast<double>(nx);
      if (top && x >= w.x1 - 1e-9 * h && x <= w.x2 + 1e-9 * h) continue;  // upsilon neighbourhood
      if (!region.contains(t, x)) return false;
    }
  }
  return true;
}

Piece as_piece(const Region& region) {
  Raster r = rasterize(region);
  Classification c = classify(region, r);
  if (!c.x_simple) throw NotXSimpleError("region is not x-simple; build sections and solutions per piece");
  Piece p;
  p.component = 0;
  p.t_lo = region.bbox.t0;
  p.t_hi = region.bbox.t1;
  for (const auto& s : r.columns) {
    if (s.intervals.empty()) continue;
    p.t.push_back(s.t);
    p.interval.push_back(s.intervals.front());
  }
  if (p.t.empty()) throw std::invalid_argument("region is empty at this resolution");
  return p;
}

Bounds bounds(const Piece& piece) {
  Bounds b;
  for (std::size_t i = 0; i < piece.t.size(); ++i) {
    b.t.push_back(piece.t[i]);
    b.a.push_back(piece.interval[i].lo);
    b.b.push_back(piece.interval[i].hi);
    b.a_clip.push_back(piece.interval[i].lo_kind == EndKind::Clip);
    b.b_clip.push_back(piece.interval[i].hi_kind == EndKind::Clip);
  }
  return b;
}

namespace {

std::vector<double> raw_section(const Piece& p) {
  std::vector<double> raw(p.t.size());
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    const Interval& v = p.interval[i];
    bool lo_inf = v.lo_kind == EndKind::Clip, hi_inf = v.hi_kind == EndKind::Clip;
    double half = 0.5 * (v.hi - v.lo);
    if (lo_inf == hi_inf) raw[i] = v.lo + half;
    else if (lo_inf) raw[i] = v.hi - std::min(1.0, half);
    else raw[i] = v.lo + std::min(1.0, half);
  }
  return raw;
}

std::vector<double> gaussian_smooth(const std::vector<double>& t, const std::vector<double>& y, double sigma) {
  std::vector<double> out(y.size());
  const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    auto ui = static_cast<std::size_t>(i);
    double ti = t[ui];
    auto lo = std::lower_bound(t.begin(), t.end(), ti - 3 * sigma);
    auto hi = std::upper_bound(t.begin(), t.end(), ti + 3 * sigma);
    double sw = 0, s = 0;
    for (auto it = lo; it != hi; ++it) {
      auto j = static_cast<std::size_t>(it - t.begin());
      double d = (t[j] - ti) / sigma;
      double w = std::exp(-0.5 * d * d);
      sw += w;
      s += w * y[j];
    }
    out[ui] = s / sw;
  }
  return out;
}

bool strictly_inside(const std::vector<double>& th, const Piece& p) {
  constexpr double kMargin = 1e-9;
  for (std::size_t i = 0; i < th.size(); ++i)
    if (!(p.interval[i].lo + kMargin < th[i] && th[i] < p.interval[i].hi - kMargin)) return false;
  return true;
}

Section finish(const Piece& p, std::vector<double> theta, double sigma) {
  Section s;
  s.t_lo = p.t_lo;
  s.t_hi = p.t_hi;
  s.t = p.t;
  s.theta = std::move(theta);
  s.sigma = sigma;
  s.interp = numeric::Pchip(s.t, s.theta);
  return s;
}

}  // namespace

Section smooth_section(const Piece& piece) {
  if (piece.t.empty()) throw std::invalid_argument("empty piece");
  std::vector<double> raw = raw_section(piece);
  double span = piece.t.back() - piece.t.front();
  double sigma = span > 0 ? 0.05 * span : 0.0;
  for (int it = 0; it < 60 && sigma > 0; ++it) {
    auto sm = gaussian_smooth(piece.t, raw, sigma);
    if (strictly_inside(sm, piece)) return finish(piece, std::move(sm), sigma);
    sigma *= 0.5;
  }
  if (!strictly_inside(raw, piece))
    throw std::runtime_error("piece is thinner than the section margin at some column");
  return finish(piece, std::move(raw), 0.0);
}

Section smooth_section(const Region& region) { return smooth_section(as_piece(region)); }

Section constant_section(double value, const Piece& piece) {
  return finish(piece, std::vector<double>(piece.t.size(), value), 0.0);
}

double section_margin(const Section& s, const Piece& piece) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < piece.t.size(); ++i) {
    double th = s(piece.t[i]);
    m = std::min({m, th - piece.interval[i].lo, piece.interval[i].hi - th});
  }
  return m;
}

}  // namespace paramode
