#include "pathcalc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pathcalc/errors.hpp"

namespace pathcalc {

SvgCanvas::SvgCanvas(double x0, double y0, double x1, double y1, int width_px)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1), width_(width_px) {
  if (!(x1 > x0) || !(y1 > y0))
    throw DomainError("svg viewport must have positive extent");
  height_ = static_cast<int>(std::lround(width_px * (y1 - y0) / (x1 - x0)));
  height_ = std::max(height_, 32);
}

double SvgCanvas::px(double x) const {
  return (x - x0_) / (x1_ - x0_) * width_;
}

double SvgCanvas::py(double y) const {
  return (y1_ - y) / (y1_ - y0_) * height_;
}

void SvgCanvas::polyline(const std::vector<Point>& pts,
                         const std::string& color, double stroke_px) {
  if (pts.size() < 2) return;
  std::ostringstream s;
  s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
    << stroke_px << "\" points=\"";
  for (Point p : pts) s << px(p.real()) << "," << py(p.imag()) << " ";
  s << "\"/>";
  elements_.push_back(s.str());
}

void SvgCanvas::rect(double x, double y, double w, double h,
                     const std::string& fill) {
  std::ostringstream s;
  s << "<rect x=\"" << px(x) << "\" y=\"" << py(y + h) << "\" width=\""
    << px(x + w) - px(x) << "\" height=\"" << py(y) - py(y + h)
    << "\" fill=\"" << fill << "\"/>";
  elements_.push_back(s.str());
}

void SvgCanvas::circle(Point center, double radius_px,
                       const std::string& fill) {
  std::ostringstream s;
  s << "<circle cx=\"" << px(center.real()) << "\" cy=\"" << py(center.imag())
    << "\" r=\"" << radius_px << "\" fill=\"" << fill << "\"/>";
  elements_.push_back(s.str());
}

void SvgCanvas::text(Point at, const std::string& s, int size_px) {
  std::ostringstream e;
  e << "<text x=\"" << px(at.real()) << "\" y=\"" << py(at.imag())
    << "\" font-size=\"" << size_px << "\" font-family=\"monospace\">" << s
    << "</text>";
  elements_.push_back(e.str());
}

void SvgCanvas::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write svg file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
      << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << " "
      << height_ << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const std::string& e : elements_) out << e << "\n";
  out << "</svg>\n";
  if (!out) throw Error("failed while writing svg file: " + path);
}

std::string heat_color(double value, double lo, double hi) {
  double t = hi > lo ? (value - lo) / (hi - lo) : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * t));
  const int b = static_cast<int>(std::lround(255 * (1.0 - t)));
  std::ostringstream s;
  s << "rgb(" << r << ",64," << b << ")";
  return s.str();
}

}  // namespace pathcalc
