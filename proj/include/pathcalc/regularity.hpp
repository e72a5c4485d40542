#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pathcalc/geometry.hpp"

namespace pathcalc {

/// Internal distance between two points of a plane set, measured along the
/// neighborhood graph and then shortened by chord-shortcutting.
struct GeodesicResult {
  double raw = 0.0;           ///< graph shortest-path length
  double straightened = 0.0;  ///< after the shortcut pass (<= raw)
  std::vector<Point> polyline;  ///< the straightened path
  bool connected = true;
};

GeodesicResult geodesic_between(const PlaneSet& X, Point z, Point w);

/// Straightened internal distance; +infinity when z and w fall in
/// different components.
double geodesic_distance(const PlaneSet& X, Point z, Point w);

/// Regularity constant at one point: the largest ratio of internal to
/// Euclidean distance from z over samples of z's component.
struct PointReport {
  Point z;
  double k = 1.0;       ///< straightened estimate
  double k_raw = 1.0;   ///< graph estimate (grid-distorted upper value)
  Point worst = 0.0;    ///< sample attaining the straightened maximum
  bool budget_hit = false;  ///< shortcut pass stopped before confirming max
};

PointReport pointwise_constant(const PlaneSet& X, Point z,
                               int straighten_budget = 64);

/// Uniform regularity constant: largest distance ratio over sampled pairs.
/// Sets with at most max_full samples are scanned exhaustively; larger sets
/// use farthest-point-seeded sources.  The worst raw pairs are re-measured
/// after straightening; `budget_hit` reports when that pass was cut short.
struct UniformReport {
  double k = 1.0;
  double k_raw = 1.0;
  std::pair<Point, Point> worst = {0.0, 0.0};
  bool subset_sampled = false;
  bool budget_hit = false;
  std::size_t pairs_considered = 0;
};

UniformReport uniform_constant(const PlaneSet& X, std::size_t max_full = 2000,
                               std::size_t max_sources = 48,
                               int straighten_budget = 512);

/// Regularity constant transported from the boundary to the full set.
double lift_boundary_uniform(double k);        ///< k -> k + 1
double lift_boundary_pointwise(double k_w);    ///< k_w -> 2 + 3 k_w

/// Per-component regularity scan at resolutions h and h/2; a component is
/// suspect when its largest pointwise constant exceeds the cutoff at both
/// resolutions.
struct ComponentRegularity {
  int component = 0;
  std::array<double, 4> bbox{};
  double max_k = 1.0;        ///< at resolution h
  double max_k_fine = 1.0;   ///< at resolution h/2
  bool suspect = false;
};

struct ComponentwiseReport {
  std::vector<ComponentRegularity> per_component;
  double cutoff;
};

ComponentwiseReport componentwise_regularity(const Shape& shape, double h,
                                             double cutoff = 1e3);

}  // namespace pathcalc
