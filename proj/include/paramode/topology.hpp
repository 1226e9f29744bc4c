#pragma once
// Raster-scale topology of a Region: components, x-simplicity, pieces,
// non-simplicity witnesses and smooth sections.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paramode/numeric.hpp"
#include "paramode/region.hpp"

namespace paramode {

/// Slices over Region::t_samples() with a component label per interval.
struct Raster {
  std::vector<Slice> columns;
  std::vector<std::vector<int>> label;
  int n_components = 0;
};

Raster rasterize(const Region& region);

struct Component {
  int id = 0;
  std::size_t first_col = 0, last_col = 0;
  double t_lo = 0, t_hi = 0;  // sampled extent
  double x_lo = 0, x_hi = 0;
  bool x_simple = true;
  int max_intervals = 0;  // per column
};

/// An x-simple piece: one interval per sampled column over an open t-range.
struct Piece {
  int component = 0;
  double t_lo = 0, t_hi = 0;  // open t-interval containing the columns
  std::vector<double> t;
  std::vector<Interval> interval;

  /// Column interval at the sample nearest to t.
  const Interval& nearest(double t) const;
};

struct Witness {
  double t0 = 0;
  double eps = 0;
  double x1 = 0, x2 = 0;
  std::vector<Point> upsilon;
  bool reflected = false;  // rectangle lies at t >= t0

  /// t-range of the rectangle [t0 - eps, t0] (or [t0, t0 + eps]).
  double t_near() const { return reflected ? t0 + eps : t0 - eps; }
};

class NoWitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotXSimpleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Classification {
  bool x_simple = true;
  std::vector<Component> components;
  std::vector<Piece> pieces;
  std::optional<Witness> witness;
  std::vector<std::string> warnings;
  std::size_t n_columns = 0;
  int max_intervals = 0;
};

Classification classify(const Region& region);
Classification classify(const Region& region, const Raster& raster);

/// Throws NoWitnessError when every disconnection is thinner than h.
Witness find_witness(const Region& region);
Witness find_witness(const Region& region, const Raster& raster);

/// Membership on a probes x probes lattice per h-cell of the witness
/// rectangle, skipping the points of the top edge that lie in [x1, x2].
bool verify_witness(const Region& region, const Witness& w, int probes = 10);

/// The whole region as one piece. Throws NotXSimpleError unless x-simple.
Piece as_piece(const Region& region);

struct Bounds {
  std::vector<double> t, a, b;
  std::vector<bool> a_clip, b_clip;  // bound sits on the bbox edge (infinite)
};

Bounds bounds(const Piece& piece);

/// theta(t) sampled at the piece columns with PCHIP in between.
struct Section {
  double t_lo = 0, t_hi = 0;
  std::vector<double> t, theta;
  double sigma = 0;  // smoothing window actually used
  numeric::Pchip interp;

  double operator()(double tt) const { return interp(tt); }
};

Section smooth_section(const Piece& piece);
/// Throws NotXSimpleError for non-x-simple input; use the pieces instead.
Section smooth_section(const Region& region);
Section constant_section(double value, const Piece& piece);

/// Smallest margin min(theta - a, b - theta) over the piece columns.
double section_margin(const Section& s, const Piece& piece);

}  // namespace paramode
