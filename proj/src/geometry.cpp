#include "pathcalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace pathcalc {

namespace {

double sqr(double x) { return x * x; }

// Scale of a bounding box, used to turn relative tolerances absolute.
double bbox_scale(const std::array<double, 4>& b) {
  return std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[2]),
                   std::abs(b[3]), 1.0});
}

}  // namespace

bool is_finite(Point p) {
  return std::isfinite(p.real()) && std::isfinite(p.imag());
}

double point_segment_distance(Point p, Point a, Point b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * d.real() +
              (p.imag() - a.imag()) * d.imag()) /
             len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

namespace {

double cross(Complex u, Complex v) {
  return u.real() * v.imag() - u.imag() * v.real();
}

bool segments_intersect(Point a1, Point b1, Point a2, Point b2) {
  const double d1 = cross(b1 - a1, a2 - a1);
  const double d2 = cross(b1 - a1, b2 - a1);
  const double d3 = cross(b2 - a2, a1 - a2);
  const double d4 = cross(b2 - a2, b1 - a2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return false;  // touching/collinear cases are handled by distances
}

}  // namespace

double segment_segment_distance(Point a1, Point b1, Point a2, Point b2) {
  if (segments_intersect(a1, b1, a2, b2)) return 0.0;
  return std::min({point_segment_distance(a1, a2, b2),
                   point_segment_distance(b1, a2, b2),
                   point_segment_distance(a2, a1, b1),
                   point_segment_distance(b2, a1, b1)});
}

// ---------------------------------------------------------------------------
// Path
// ---------------------------------------------------------------------------

Path::Path(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2)
    throw DomainError("path needs at least two vertices");
  cum_len_.resize(vertices_.size());
  cum_len_[0] = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i]))
      throw DomainError("path vertex is not finite");
    if (i == 0) continue;
    const double seg = std::abs(vertices_[i] - vertices_[i - 1]);
    if (seg <= 0.0)
      throw DomainError("consecutive path vertices coincide at index " +
                        std::to_string(i));
    cum_len_[i] = cum_len_[i - 1] + seg;
  }
  if (!(cum_len_.back() > 0.0)) throw DomainError("path has zero length");
}

bool Path::is_closed(double tol) const {
  return std::abs(front() - back()) <= tol;
}

std::pair<std::size_t, double> Path::locate(double s) const {
  const double L = length();
  const double slack = 1e-9 * std::max(L, 1.0);
  if (s < -slack || s > L + slack)
    throw DomainError("arc length out of range");
  s = std::clamp(s, 0.0, L);
  // First segment whose end lies at or beyond s.
  auto it = std::lower_bound(cum_len_.begin() + 1, cum_len_.end(), s);
  std::size_t seg = static_cast<std::size_t>(it - cum_len_.begin()) - 1;
  if (seg >= segment_count()) seg = segment_count() - 1;
  return {seg, s - cum_len_[seg]};
}

Point Path::point_at(double s) const {
  const auto [seg, off] = locate(s);
  const Point a = vertices_[seg];
  const Point b = vertices_[seg + 1];
  const double t = off / (cum_len_[seg + 1] - cum_len_[seg]);
  return a + t * (b - a);  // keeps shared coordinates of a and b exact
}

Path Path::subpath(double s0, double s1) const {
  const double L = length();
  if (!(s0 < s1)) throw DomainError("subpath needs s0 < s1");
  const double tiny = 1e-14 * std::max(L, 1.0);
  std::vector<Point> v;
  v.push_back(point_at(s0));
  for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
    if (cum_len_[i] > s0 + tiny && cum_len_[i] < s1 - tiny)
      v.push_back(vertices_[i]);
  }
  v.push_back(point_at(s1));
  // Rounding can produce coincident consecutive vertices; drop them.
  std::vector<Point> out;
  for (const Point& p : v)
    if (out.empty() || std::abs(p - out.back()) > 0.0) out.push_back(p);
  if (out.size() < 2) throw DomainError("subpath degenerates to a point");
  return Path(std::move(out));
}

Path Path::reversed() const {
  std::vector<Point> v(vertices_.rbegin(), vertices_.rend());
  return Path(std::move(v));
}

std::vector<Point> Path::discretize(double spacing) const {
  if (!(spacing > 0.0)) throw DomainError("spacing must be positive");
  std::vector<Point> out;
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const Point a = vertices_[i];
    const Point b = vertices_[i + 1];
    const double len = cum_len_[i + 1] - cum_len_[i];
    const auto n = static_cast<std::size_t>(std::ceil(len / spacing));
    for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(n);
      out.push_back(a + t * (b - a));
    }
  }
  out.push_back(vertices_.back());
  return out;
}

Path concat(const std::vector<Path>& parts) {
  if (parts.empty()) throw DomainError("concat of empty path list");
  std::vector<Point> v = parts.front().vertices();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Point tail = v.back();
    const Point head = parts[i].front();
    if (tail.real() != head.real() || tail.imag() != head.imag()) {
      std::ostringstream msg;
      msg << "concat: path " << i << " starts at (" << head.real() << ", "
          << head.imag() << ") but predecessor ends at (" << tail.real()
          << ", " << tail.imag() << ")";
      throw JoinError(i, msg.str());
    }
    const auto& w = parts[i].vertices();
    v.insert(v.end(), w.begin() + 1, w.end());
  }
  return Path(std::move(v));
}

bool is_injective(const Path& p, double tol) {
  const auto& v = p.vertices();
  const std::size_t n = p.segment_count();
  const bool closed = p.is_closed();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent =
          (j == i + 1) || (closed && i == 0 && j == n - 1);
      if (!adjacent) {
        if (segment_segment_distance(v[i], v[i + 1], v[j], v[j + 1]) < tol)
          return false;
        continue;
      }
      // Adjacent segments may only meet near the shared vertex: trim a
      // neighborhood of radius 2*tol around it and ask the remainders to
      // keep their distance.
      const Point shared = (j == i + 1) ? v[i + 1] : v[0];
      const double trim = 2.0 * tol;
      auto trimmed = [&](Point a, Point b) -> std::optional<std::pair<Point, Point>> {
        // Returns the sub-segment of [a, b] outside the trim ball at
        // `shared`, assuming one endpoint equals `shared`.
        Point far_end = (std::abs(a - shared) > std::abs(b - shared)) ? a : b;
        const double len = std::abs(far_end - shared);
        if (len <= trim) return std::nullopt;  // fully inside neighborhood
        const Complex dir = (far_end - shared) / len;
        return std::make_pair(shared + trim * dir, far_end);
      };
      const auto s1 = trimmed(v[i], v[i + 1]);
      const auto s2 = trimmed(v[j], v[j + 1]);
      if (!s1 || !s2) continue;
      if (segment_segment_distance(s1->first, s1->second, s2->first,
                                   s2->second) < tol)
        return false;
    }
  }
  return true;
}

bool is_jordan_arc(const Path& p, double tol) {
  return !p.is_closed() && is_injective(p, tol);
}

// ---------------------------------------------------------------------------
// Shapes
// ---------------------------------------------------------------------------

std::array<double, 4> shape_bbox(const Shape& s) {
  struct Visitor {
    std::array<double, 4> operator()(const Rect& r) const {
      return {r.x0, r.y0, r.x1, r.y1};
    }
    std::array<double, 4> operator()(const Disk& d) const {
      return {d.center.real() - d.radius, d.center.imag() - d.radius,
              d.center.real() + d.radius, d.center.imag() + d.radius};
    }
    std::array<double, 4> operator()(const SegmentShape& s) const {
      return {std::min(s.a.real(), s.b.real()),
              std::min(s.a.imag(), s.b.imag()),
              std::max(s.a.real(), s.b.real()),
              std::max(s.a.imag(), s.b.imag())};
    }
    std::array<double, 4> operator()(const PolylineShape& p) const {
      std::array<double, 4> b = {std::numeric_limits<double>::max(),
                                 std::numeric_limits<double>::max(),
                                 std::numeric_limits<double>::lowest(),
                                 std::numeric_limits<double>::lowest()};
      for (const Point& v : p.vertices) {
        b[0] = std::min(b[0], v.real());
        b[1] = std::min(b[1], v.imag());
        b[2] = std::max(b[2], v.real());
        b[3] = std::max(b[3], v.imag());
      }
      return b;
    }
    std::array<double, 4> operator()(const RasterShape& r) const {
      return {r.x0, r.y0, r.x0 + r.res * static_cast<double>(r.nx),
              r.y0 + r.res * static_cast<double>(r.ny)};
    }
    std::array<double, 4> operator()(const UnionShape& u) const {
      std::array<double, 4> b = {std::numeric_limits<double>::max(),
                                 std::numeric_limits<double>::max(),
                                 std::numeric_limits<double>::lowest(),
                                 std::numeric_limits<double>::lowest()};
      for (const Shape& part : u.parts) {
        const auto pb = shape_bbox(part);
        b[0] = std::min(b[0], pb[0]);
        b[1] = std::min(b[1], pb[1]);
        b[2] = std::max(b[2], pb[2]);
        b[3] = std::max(b[3], pb[3]);
      }
      return b;
    }
  };
  return std::visit(Visitor{}, s);
}

bool shape_contains(const Shape& s, Point p, double tol) {
  struct Visitor {
    Point p;
    double tol;
    bool operator()(const Rect& r) const {
      return p.real() >= r.x0 - tol && p.real() <= r.x1 + tol &&
             p.imag() >= r.y0 - tol && p.imag() <= r.y1 + tol;
    }
    bool operator()(const Disk& d) const {
      return std::abs(p - d.center) <= d.radius + tol;
    }
    bool operator()(const SegmentShape& s) const {
      return point_segment_distance(p, s.a, s.b) <= tol;
    }
    bool operator()(const PolylineShape& poly) const {
      for (std::size_t i = 0; i + 1 < poly.vertices.size(); ++i)
        if (point_segment_distance(p, poly.vertices[i],
                                   poly.vertices[i + 1]) <= tol)
          return true;
      return false;
    }
    bool operator()(const RasterShape& r) const {
      const auto cell_of = [&](double x, double o) {
        return static_cast<long>(std::floor((x - o) / r.res));
      };
      const long cx0 = cell_of(p.real() - tol, r.x0);
      const long cx1 = cell_of(p.real() + tol, r.x0);
      const long cy0 = cell_of(p.imag() - tol, r.y0);
      const long cy1 = cell_of(p.imag() + tol, r.y0);
      for (long cy = cy0; cy <= cy1; ++cy) {
        for (long cx = cx0; cx <= cx1; ++cx) {
          if (cx < 0 || cy < 0 || cx >= static_cast<long>(r.nx) ||
              cy >= static_cast<long>(r.ny))
            continue;
          if (!r.mask[static_cast<std::size_t>(cy) * r.nx +
                      static_cast<std::size_t>(cx)])
            continue;
          // Distance from p to the cell rectangle.
          const double rx0 = r.x0 + r.res * static_cast<double>(cx);
          const double ry0 = r.y0 + r.res * static_cast<double>(cy);
          const double dx =
              std::max({rx0 - p.real(), 0.0, p.real() - (rx0 + r.res)});
          const double dy =
              std::max({ry0 - p.imag(), 0.0, p.imag() - (ry0 + r.res)});
          if (std::sqrt(sqr(dx) + sqr(dy)) <= tol) return true;
        }
      }
      return false;
    }
    bool operator()(const UnionShape& u) const {
      for (const Shape& part : u.parts)
        if (shape_contains(part, p, tol)) return true;
      return false;
    }
  };
  return std::visit(Visitor{p, tol}, s);
}

bool shape_is_thin(const Shape& s) {
  struct Visitor {
    bool operator()(const Rect&) const { return false; }
    bool operator()(const Disk&) const { return false; }
    bool operator()(const SegmentShape&) const { return true; }
    bool operator()(const PolylineShape&) const { return true; }
    bool operator()(const RasterShape&) const { return false; }
    bool operator()(const UnionShape& u) const {
      for (const Shape& part : u.parts)
        if (!shape_is_thin(part)) return false;
      return true;
    }
  };
  return std::visit(Visitor{}, s);
}

namespace {

// Flattens nested unions into leaves, preserving order.
void flatten(const Shape& s, std::vector<const Shape*>& leaves) {
  if (const auto* u = std::get_if<UnionShape>(&s)) {
    for (const Shape& part : u->parts) flatten(part, leaves);
  } else {
    leaves.push_back(&s);
  }
}

// Per-leaf membership tolerance: thin carriers and rasters are h-nets of
// lower-dimensional or cell data and get the h/2 allowance; solid shapes
// are tested exactly up to rounding slack.
double leaf_tol(const Shape& leaf, double h, double scale) {
  if (shape_is_thin(leaf) || std::holds_alternative<RasterShape>(leaf))
    return h / 2.0;
  return 1e-9 * scale;
}

bool contains_kind_tol(const std::vector<const Shape*>& leaves, Point p,
                       double h, double scale) {
  for (const Shape* leaf : leaves)
    if (shape_contains(*leaf, p, leaf_tol(*leaf, h, scale))) return true;
  return false;
}

bool segment_in_leaves(const std::vector<const Shape*>& leaves, Point a,
                       Point b, double h, double scale) {
  const double len = std::abs(b - a);
  const auto n =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / (h / 4.0))));
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    if (!contains_kind_tol(leaves, a + t * (b - a), h, scale)) return false;
  }
  return true;
}

std::int64_t key_of(long cx, long cy) {
  return (static_cast<std::int64_t>(cx) << 32) ^
         (static_cast<std::int64_t>(cy) & 0xffffffffLL);
}

}  // namespace

// ---------------------------------------------------------------------------
// PlaneSet
// ---------------------------------------------------------------------------

PlaneSet::PlaneSet(Shape shape, double h, std::vector<Point> samples,
                   std::vector<int> adj_offsets, std::vector<int> adj_targets,
                   std::vector<double> adj_weights)
    : shape_(std::move(shape)),
      h_(h),
      scale_(bbox_scale(shape_bbox(shape_))),
      samples_(std::move(samples)),
      adj_offsets_(std::move(adj_offsets)),
      adj_targets_(std::move(adj_targets)),
      adj_weights_(std::move(adj_weights)),
      cell_(h) {
  build_grid();
}

std::size_t PlaneSet::degree(int i) const {
  return static_cast<std::size_t>(adj_offsets_[i + 1] - adj_offsets_[i]);
}

std::pair<const int*, const double*> PlaneSet::neighbors(int i) const {
  return {adj_targets_.data() + adj_offsets_[i],
          adj_weights_.data() + adj_offsets_[i]};
}

std::int64_t PlaneSet::cell_key(Point p) const {
  return key_of(static_cast<long>(std::floor(p.real() / cell_)),
                static_cast<long>(std::floor(p.imag() / cell_)));
}

void PlaneSet::build_grid() {
  for (std::size_t i = 0; i < samples_.size(); ++i)
    grid_[cell_key(samples_[i])].push_back(static_cast<int>(i));
}

bool PlaneSet::contains(Point p) const {
  std::vector<const Shape*> leaves;
  flatten(shape_, leaves);
  return contains_kind_tol(leaves, p, h_, scale_);
}

bool PlaneSet::segment_in_set(Point a, Point b) const {
  std::vector<const Shape*> leaves;
  flatten(shape_, leaves);
  if (!contains_kind_tol(leaves, a, h_, scale_) ||
      !contains_kind_tol(leaves, b, h_, scale_))
    return false;
  // Dyadic midpoint order at the same h/4 density as a linear walk, so a
  // chord leaving the set is rejected after very few membership tests.
  const double len = std::abs(b - a);
  int depth = 0;
  double span = len;
  while (span > h_ / 4.0 && depth < 24) {
    span /= 2.0;
    ++depth;
  }
  const auto ok = [&](const auto& self, Point u, Point v, int d) -> bool {
    if (d <= 0) return true;
    const Point mid = u + 0.5 * (v - u);
    if (!contains_kind_tol(leaves, mid, h_, scale_)) return false;
    return self(self, u, mid, d - 1) && self(self, mid, v, d - 1);
  };
  return ok(ok, a, b, depth);
}

int PlaneSet::nearest_sample(Point p) const {
  if (samples_.empty()) throw DomainError("empty plane set");
  const long px = static_cast<long>(std::floor(p.real() / cell_));
  const long py = static_cast<long>(std::floor(p.imag() / cell_));
  int best = -1;
  double best_d = std::numeric_limits<double>::max();
  // Expand rings until a hit, then one extra ring to be safe.
  const long max_ring = 1 + static_cast<long>(samples_.size());
  bool found_at = false;
  for (long ring = 0; ring <= max_ring; ++ring) {
    if (found_at) {
      // One extra ring beyond the first hit suffices: any sample outside
      // is farther than ring*cell >= best_d.
      if (static_cast<double>(ring - 1) * cell_ > best_d) break;
    }
    bool any_cell = false;
    for (long cy = py - ring; cy <= py + ring; ++cy) {
      for (long cx = px - ring; cx <= px + ring; ++cx) {
        if (std::max(std::abs(cx - px), std::abs(cy - py)) != ring) continue;
        const auto it = grid_.find(key_of(cx, cy));
        if (it == grid_.end()) continue;
        any_cell = true;
        for (int i : it->second) {
          const double d = std::abs(samples_[static_cast<std::size_t>(i)] - p);
          if (d < best_d || (d == best_d && i < best)) {
            best_d = d;
            best = i;
          }
        }
      }
    }
    if (best >= 0 && !found_at) found_at = true;
    (void)any_cell;
  }
  return best;
}

PlaneSet discretize(const Shape& shape, double h) {
  if (!(h > 0.0)) throw DomainError("resolution must be positive");
  std::vector<const Shape*> leaves;
  flatten(shape, leaves);
  if (leaves.empty()) throw DomainError("empty shape");
  const auto bb = shape_bbox(shape);
  const double scale = bbox_scale(bb);

  struct Raw {
    Point p;
    int part;  // 0 = solid grid pass, 1 + leaf index = thin leaf
  };
  std::vector<Raw> raw;
  std::vector<std::pair<int, int>> chain_edges;  // raw-index pairs

  // Solid leaves share one grid pass anchored at the bounding-box corner.
  const bool any_solid =
      std::any_of(leaves.begin(), leaves.end(),
                  [](const Shape* l) { return !shape_is_thin(*l); });
  if (any_solid) {
    const auto nx = static_cast<long>(std::floor((bb[2] - bb[0]) / h + 1e-9));
    const auto ny = static_cast<long>(std::floor((bb[3] - bb[1]) / h + 1e-9));
    for (long iy = 0; iy <= ny; ++iy) {
      for (long ix = 0; ix <= nx; ++ix) {
        const Point p(bb[0] + h * static_cast<double>(ix),
                      bb[1] + h * static_cast<double>(iy));
        bool keep = false;
        for (const Shape* leaf : leaves) {
          if (shape_is_thin(*leaf)) continue;
          if (shape_contains(*leaf, p, leaf_tol(*leaf, h, scale))) {
            keep = true;
            break;
          }
        }
        if (keep) raw.push_back({p, 0});
      }
    }
  }

  // Thin leaves are sampled along their carrier; consecutive samples are
  // chained (their segments lie in the set by construction).
  for (std::size_t li = 0; li < leaves.size(); ++li) {
    const Shape* leaf = leaves[li];
    if (!shape_is_thin(*leaf)) continue;
    std::vector<Point> pts;
    if (const auto* seg = std::get_if<SegmentShape>(leaf)) {
      pts = Path({seg->a, seg->b}).discretize(h);
    } else if (const auto* poly = std::get_if<PolylineShape>(leaf)) {
      pts = Path(poly->vertices).discretize(h);
    }
    const int base = static_cast<int>(raw.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      raw.push_back({pts[k], static_cast<int>(1 + li)});
      if (k > 0)
        chain_edges.emplace_back(base + static_cast<int>(k) - 1,
                                 base + static_cast<int>(k));
    }
  }

  if (raw.empty()) throw DomainError("shape has no samples at this resolution");

  // Sort lexicographically and weld coincident points.
  std::vector<int> order(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Point& pa = raw[static_cast<std::size_t>(a)].p;
    const Point& pb = raw[static_cast<std::size_t>(b)].p;
    if (pa.real() != pb.real()) return pa.real() < pb.real();
    if (pa.imag() != pb.imag()) return pa.imag() < pb.imag();
    return a < b;
  });
  const double weld = 1e-12 * scale;
  std::vector<Point> samples;
  std::vector<int> part_of;
  std::vector<int> remap(raw.size(), -1);
  for (int idx : order) {
    const Point p = raw[static_cast<std::size_t>(idx)].p;
    if (!samples.empty() && std::abs(p - samples.back()) <= weld) {
      remap[static_cast<std::size_t>(idx)] =
          static_cast<int>(samples.size()) - 1;
      if (part_of.back() != raw[static_cast<std::size_t>(idx)].part)
        part_of.back() = -1;  // shared between parts
      continue;
    }
    remap[static_cast<std::size_t>(idx)] = static_cast<int>(samples.size());
    samples.push_back(p);
    part_of.push_back(raw[static_cast<std::size_t>(idx)].part);
  }

  // Candidate edges: chains, grid neighborhoods, and cross-part links.
  std::set<std::pair<int, int>> edges;
  auto add_edge = [&](int a, int b) {
    if (a == b) return;
    edges.emplace(std::min(a, b), std::max(a, b));
  };
  for (const auto& [a, b] : chain_edges)
    add_edge(remap[static_cast<std::size_t>(a)],
             remap[static_cast<std::size_t>(b)]);

  // Spatial hash over the welded samples.
  std::unordered_map<std::int64_t, std::vector<int>> cells;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const long cx = static_cast<long>(std::floor(samples[i].real() / h));
    const long cy = static_cast<long>(std::floor(samples[i].imag() / h));
    cells[key_of(cx, cy)].push_back(static_cast<int>(i));
  }
  const double reach = 1.5 * h;  // covers grid diagonals, excludes 2h
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const long cx = static_cast<long>(std::floor(samples[i].real() / h));
    const long cy = static_cast<long>(std::floor(samples[i].imag() / h));
    for (long dy = -2; dy <= 2; ++dy) {
      for (long dx = -2; dx <= 2; ++dx) {
        const auto it = cells.find(key_of(cx + dx, cy + dy));
        if (it == cells.end()) continue;
        for (int j : it->second) {
          if (j <= static_cast<int>(i)) continue;
          const Point a = samples[i];
          const Point b = samples[static_cast<std::size_t>(j)];
          if (std::abs(b - a) > reach) continue;
          const int pa = part_of[i];
          const int pb = part_of[static_cast<std::size_t>(j)];
          // Within one thin part only the chain applies; everything else
          // (solid-solid, cross-part) must pass the segment test.
          if (pa == pb && pa > 0) continue;
          if (segment_in_leaves(leaves, a, b, h, scale))
            add_edge(static_cast<int>(i), j);
        }
      }
    }
  }

  // CSR assembly.
  std::vector<std::vector<std::pair<int, double>>> nbr(samples.size());
  for (const auto& [a, b] : edges) {
    const double w = std::abs(samples[static_cast<std::size_t>(a)] -
                              samples[static_cast<std::size_t>(b)]);
    nbr[static_cast<std::size_t>(a)].emplace_back(b, w);
    nbr[static_cast<std::size_t>(b)].emplace_back(a, w);
  }
  std::vector<int> offsets(samples.size() + 1, 0);
  std::vector<int> targets;
  std::vector<double> weights;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::sort(nbr[i].begin(), nbr[i].end());
    offsets[i + 1] = offsets[i] + static_cast<int>(nbr[i].size());
    for (const auto& [t, w] : nbr[i]) {
      targets.push_back(t);
      weights.push_back(w);
    }
  }
  return PlaneSet(shape, h, std::move(samples), std::move(offsets),
                  std::move(targets), std::move(weights));
}

Components components(const PlaneSet& X) {
  Components out;
  const int n = static_cast<int>(X.size());
  out.label.assign(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (out.label[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = out.count++;
    out.bbox.push_back({std::numeric_limits<double>::max(),
                        std::numeric_limits<double>::max(),
                        std::numeric_limits<double>::lowest(),
                        std::numeric_limits<double>::lowest()});
    out.members.emplace_back();
    std::queue<int> q;
    q.push(s);
    out.label[static_cast<std::size_t>(s)] = id;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      out.members[static_cast<std::size_t>(id)].push_back(u);
      const Point p = X.samples()[static_cast<std::size_t>(u)];
      auto& bb = out.bbox[static_cast<std::size_t>(id)];
      bb[0] = std::min(bb[0], p.real());
      bb[1] = std::min(bb[1], p.imag());
      bb[2] = std::max(bb[2], p.real());
      bb[3] = std::max(bb[3], p.imag());
      const auto [tgt, wts] = X.neighbors(u);
      (void)wts;
      for (std::size_t k = 0; k < X.degree(u); ++k) {
        const int v = tgt[k];
        if (out.label[static_cast<std::size_t>(v)] < 0) {
          out.label[static_cast<std::size_t>(v)] = id;
          q.push(v);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// PathFamily
// ---------------------------------------------------------------------------

PathFamily::PathFamily(std::vector<Path> generators, bool piecewise,
                       std::optional<double> max_length, double arc_tol)
    : generators_(std::move(generators)),
      piecewise_(piecewise),
      max_length_(max_length),
      arc_tol_(arc_tol) {
  if (generators_.empty()) throw DomainError("path family needs generators");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (!is_jordan_arc(generators_[i], arc_tol_))
      throw DomainError("family generator " + std::to_string(i) +
                        " is not an arc at tolerance " +
                        std::to_string(arc_tol_));
    if (max_length_ && generators_[i].length() > *max_length_ * (1 + 1e-12))
      throw DomainError("family generator " + std::to_string(i) +
                        " exceeds max length");
  }
}

double PathFamily::longest() const {
  double L = 0.0;
  for (const Path& g : generators_) L = std::max(L, g.length());
  return L;
}

std::vector<Point> PathFamily::carrier_points(double spacing) const {
  std::vector<Point> pts;
  for (const Path& g : generators_) {
    const auto d = g.discretize(spacing);
    pts.insert(pts.end(), d.begin(), d.end());
  }
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  double scale = 1.0;
  for (const Point& p : pts) scale = std::max(scale, std::abs(p));
  const double weld = 1e-12 * scale;
  std::vector<Point> out;
  for (const Point& p : pts)
    if (out.empty() || std::abs(p - out.back()) > weld) out.push_back(p);
  return out;
}

PathFamily PathFamily::piecewise_closure(std::size_t max_parts,
                                         double arc_tol) const {
  std::vector<Path> pool;
  for (const Path& g : generators_) {
    pool.push_back(g);
    pool.push_back(g.reversed());
  }
  std::vector<Path> out = generators_;
  constexpr std::size_t kJoinCap = 4096;

  // Breadth-first enumeration of end-to-start joins, deterministic in pool
  // order, capped to keep pathological families cheap.
  struct Partial {
    std::vector<std::size_t> parts;
  };
  std::vector<Partial> frontier;
  for (std::size_t i = 0; i < pool.size(); ++i) frontier.push_back({{i}});
  std::size_t added = 0;
  for (std::size_t depth = 2; depth <= max_parts && added < kJoinCap;
       ++depth) {
    std::vector<Partial> next;
    for (const Partial& partial : frontier) {
      for (std::size_t j = 0; j < pool.size() && added < kJoinCap; ++j) {
        // Skip reuse of the same generator (either orientation).
        bool reused = false;
        for (std::size_t used : partial.parts)
          if (used / 2 == j / 2) reused = true;
        if (reused) continue;
        const Path& tail = pool[partial.parts.back()];
        const Path& head = pool[j];
        if (tail.back().real() != head.front().real() ||
            tail.back().imag() != head.front().imag())
          continue;
        std::vector<Path> seq;
        for (std::size_t used : partial.parts) seq.push_back(pool[used]);
        seq.push_back(head);
        Path joined = concat(seq);
        if (!is_jordan_arc(joined, arc_tol)) continue;
        out.push_back(joined);
        ++added;
        Partial ext = partial;
        ext.parts.push_back(j);
        next.push_back(std::move(ext));
      }
    }
    frontier = std::move(next);
  }
  return PathFamily(std::move(out), piecewise_, max_length_, arc_tol);
}

}  // namespace pathcalc
