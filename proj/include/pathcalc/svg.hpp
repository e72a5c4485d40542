#pragma once

#include <string>
#include <vector>

#include "pathcalc/geometry.hpp"

namespace pathcalc {

/// Minimal SVG emitter for static plots: world coordinates map to a fixed
/// pixel viewport with the y axis pointing up.
class SvgCanvas {
 public:
  SvgCanvas(double x0, double y0, double x1, double y1, int width_px = 640);

  void polyline(const std::vector<Point>& pts, const std::string& color,
                double stroke_px = 1.5);
  void rect(double x, double y, double w, double h, const std::string& fill);
  void circle(Point center, double radius_px, const std::string& fill);
  void text(Point at, const std::string& s, int size_px = 12);

  /// Writes the document; throws on I/O failure.
  void write(const std::string& path) const;

 private:
  double x0_, y0_, x1_, y1_;
  int width_, height_;
  std::vector<std::string> elements_;

  double px(double x) const;
  double py(double y) const;
};

/// Column heatmap helper: values in [lo, hi] map to a blue-to-red ramp.
std::string heat_color(double value, double lo, double hi);

}  // namespace pathcalc
