#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pathcalc/errors.hpp"

namespace pathcalc {

using Complex = std::complex<double>;

/// A point of the plane, identified with a complex number.
using Point = Complex;

bool is_finite(Point p);

/// Euclidean distance from p to the segment [a, b].
double point_segment_distance(Point p, Point a, Point b);

/// Euclidean distance between the segments [a1, b1] and [a2, b2].
double segment_segment_distance(Point a1, Point b1, Point a2, Point b2);

/// A rectifiable path given as a polyline with a cached arc-length table.
///
/// Vertices are interpreted as straight segments traversed in order.  The
/// arc-length table cum_len() starts at zero, is strictly increasing
/// (consecutive duplicate vertices are rejected) and ends at length().
class Path {
 public:
  explicit Path(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<double>& cum_len() const { return cum_len_; }
  double length() const { return cum_len_.back(); }
  std::size_t segment_count() const { return vertices_.size() - 1; }

  Point front() const { return vertices_.front(); }
  Point back() const { return vertices_.back(); }
  bool is_closed(double tol = 1e-12) const;

  /// Point at arc length s from the start, 0 <= s <= length().
  Point point_at(double s) const;

  /// Restriction to arc lengths [s0, s1], 0 <= s0 < s1 <= length().
  Path subpath(double s0, double s1) const;

  /// The same polyline traversed in the opposite direction.
  Path reversed() const;

  /// Points along the path at arc-length spacing <= spacing, vertices
  /// included.  Spacing must be positive.
  std::vector<Point> discretize(double spacing) const;

 private:
  std::vector<Point> vertices_;
  std::vector<double> cum_len_;

  // Index of the segment containing arc length s, plus local offset.
  std::pair<std::size_t, double> locate(double s) const;
};

/// Raised by concat() when consecutive paths do not share an endpoint.
class JoinError : public Error {
 public:
  JoinError(std::size_t index, const std::string& what)
      : Error(what), index(index) {}
  std::size_t index;  ///< position of the offending path in the input list
};

/// Joins paths end to start.  Endpoints must match exactly; the shared
/// vertex is kept once.  Throws JoinError naming the first bad junction.
Path concat(const std::vector<Path>& parts);

/// True when no two non-adjacent segments of the polyline come closer than
/// tol (adjacent segments may meet only near their shared vertex).  A path
/// whose endpoints coincide is treated as a loop: its first and last
/// segments count as adjacent, and such a path is reported injective when
/// every other pair keeps its distance.  An arc in the Jordan sense is an
/// injective *open* path: is_jordan_arc() additionally requires
/// front() != back().
bool is_injective(const Path& p, double tol);
bool is_jordan_arc(const Path& p, double tol);

// ---------------------------------------------------------------------------
// Shapes and their discretizations
// ---------------------------------------------------------------------------

struct Rect {
  double x0, y0, x1, y1;
};

struct Disk {
  Point center;
  double radius;
};

struct SegmentShape {
  Point a, b;
};

struct PolylineShape {
  std::vector<Point> vertices;
};

/// Row-major cell mask over a bounding box at a fixed resolution.
/// mask[row * nx + col] marks the cell with lower-left corner
/// (x0 + col*res, y0 + row*res).
struct RasterShape {
  double x0, y0;
  double res;
  std::size_t nx, ny;
  std::vector<std::uint8_t> mask;
};

struct UnionShape;

using Shape =
    std::variant<Rect, Disk, SegmentShape, PolylineShape, RasterShape,
                 UnionShape>;

struct UnionShape {
  std::vector<Shape> parts;
};

/// Axis-aligned bounding box {x0, y0, x1, y1}.
std::array<double, 4> shape_bbox(const Shape& s);

/// Membership with tolerance: distance to the shape at most tol.
bool shape_contains(const Shape& s, Point p, double tol);

/// Thin shapes (segments, polylines) have empty interior; they are
/// discretized along their carrier instead of over a grid.
bool shape_is_thin(const Shape& s);

/// A compact plane set held as an h-net of samples plus a neighborhood
/// graph.  Samples are sorted lexicographically (re, then im); every edge
/// connects two samples whose straight segment stays in the set, and its
/// weight is the Euclidean length of that segment.
class PlaneSet {
 public:
  PlaneSet(Shape shape, double h, std::vector<Point> samples,
           std::vector<int> adj_offsets, std::vector<int> adj_targets,
           std::vector<double> adj_weights);

  const Shape& shape() const { return shape_; }
  double resolution() const { return h_; }
  const std::vector<Point>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  /// Neighbors of sample i as (target index, edge length) pairs.
  std::size_t degree(int i) const;
  std::pair<const int*, const double*> neighbors(int i) const;

  /// Membership test with the set's default tolerance (h/2 for thin and
  /// raster shapes, exact up to rounding slack otherwise).
  bool contains(Point p) const;

  /// Index of the sample closest to p (ties broken by sample order).
  int nearest_sample(Point p) const;

  /// True when every step of [a, b] at resolution h/4 stays in the set.
  bool segment_in_set(Point a, Point b) const;

 private:
  Shape shape_;
  double h_;
  double scale_;  // bounding-box magnitude, for relative tolerances
  std::vector<Point> samples_;
  std::vector<int> adj_offsets_;
  std::vector<int> adj_targets_;
  std::vector<double> adj_weights_;

  // Spatial hash over cells of size h for nearest-sample queries.
  double cell_;
  std::unordered_map<std::int64_t, std::vector<int>> grid_;
  std::int64_t cell_key(Point p) const;
  void build_grid();
};

/// Builds the h-net and neighborhood graph for a shape.  Solid shapes are
/// sampled on the grid h*Z^2 anchored at the bounding-box corner; thin
/// shapes are sampled along their carrier (vertices always included) and
/// their graph is the chain of consecutive samples.  Unions combine part
/// samples (deduplicated) and add cross-part edges between samples within
/// 1.5*h whose segment stays in the union.
PlaneSet discretize(const Shape& shape, double h);

/// Connected components of a plane set's neighborhood graph.
struct Components {
  int count = 0;
  std::vector<int> label;                    ///< component id per sample
  std::vector<std::array<double, 4>> bbox;   ///< per-component bounds
  std::vector<std::vector<int>> members;     ///< sample ids per component
};

Components components(const PlaneSet& X);

// ---------------------------------------------------------------------------
// Path families
// ---------------------------------------------------------------------------

/// A family of admissible paths, described by generator arcs.  Families
/// model the sets of paths along which integration is performed; they are
/// implicitly closed under subpath restriction and reversal.  When
/// `piecewise` is set, finite end-to-start joins of generators are also
/// admitted (see piecewise_closure()).
class PathFamily {
 public:
  PathFamily(std::vector<Path> generators, bool piecewise = false,
             std::optional<double> max_length = std::nullopt,
             double arc_tol = 1e-9);

  const std::vector<Path>& generators() const { return generators_; }
  bool piecewise() const { return piecewise_; }
  std::optional<double> max_length() const { return max_length_; }

  /// Longest generator length.
  double longest() const;

  /// Deduplicated sample points of all generators at the given spacing,
  /// sorted lexicographically.  This is the discrete stand-in for the
  /// union of the generator images.
  std::vector<Point> carrier_points(double spacing) const;

  /// Family extended by injective end-to-start joins of up to max_parts
  /// generators.  Joins that would revisit a point (within arc_tol) are
  /// skipped.  Only meaningful when piecewise() is true, but callable on
  /// any family.
  PathFamily piecewise_closure(std::size_t max_parts = 3,
                               double arc_tol = 1e-9) const;

 private:
  std::vector<Path> generators_;
  bool piecewise_;
  std::optional<double> max_length_;
  double arc_tol_;
};

}  // namespace pathcalc
