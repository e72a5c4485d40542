#include "pathcalc/integrate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace pathcalc {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1]; exact through degree 15.
constexpr int kGaussN = 8;
constexpr double kGaussX[kGaussN] = {
    -0.96028985649753623168, -0.79666647741362673959,
    -0.52553240991632898582, -0.18343464249564980494,
    0.18343464249564980494,  0.52553240991632898582,
    0.79666647741362673959,  0.96028985649753623168};
constexpr double kGaussW[kGaussN] = {
    0.10122853629037625915, 0.22238103445337447054,
    0.31370664587788728734, 0.36268378337836198297,
    0.36268378337836198297, 0.31370664587788728734,
    0.22238103445337447054, 0.10122853629037625915};

// Integral over one straight panel [a, b]: dz is constant, so the rule
// reduces to a weighted sample sum times (b - a) / 2.
Complex panel_integral(const Integrand& g, Point a, Point b) {
  const Complex mid = 0.5 * (a + b);
  const Complex half = 0.5 * (b - a);
  Complex acc = 0.0;
  for (int i = 0; i < kGaussN; ++i)
    acc += kGaussW[i] * g(mid + kGaussX[i] * half);
  return acc * half;
}

Complex level_value(const Integrand& g, const Path& p, std::size_t panels_per_seg) {
  const auto& v = p.vertices();
  Complex acc = 0.0;
  for (std::size_t s = 0; s + 1 < v.size(); ++s) {
    const Point a = v[s];
    const Point b = v[s + 1];
    for (std::size_t k = 0; k < panels_per_seg; ++k) {
      const double t0 =
          static_cast<double>(k) / static_cast<double>(panels_per_seg);
      const double t1 =
          static_cast<double>(k + 1) / static_cast<double>(panels_per_seg);
      acc += panel_integral(g, a + t0 * (b - a), a + t1 * (b - a));
    }
  }
  return acc;
}

}  // namespace

IntegralResult path_integral(const Integrand& g, const Path& p, double tol) {
  if (!(tol > 0.0)) throw DomainError("integration tolerance must be positive");
  constexpr std::size_t kMaxTotalPanels = 1u << 22;
  std::size_t panels = 1;
  Complex prev = level_value(g, p, panels);
  for (;;) {
    panels *= 2;
    const Complex cur = level_value(g, p, panels);
    const double diff = std::abs(cur - prev);
    if (diff <= tol * (1.0 + std::abs(cur)))
      return {cur, diff, panels * p.segment_count()};
    if (panels * p.segment_count() >= kMaxTotalPanels) {
      std::ostringstream msg;
      msg << "path integral did not settle: last refinement moved by " << diff
          << " at " << panels * p.segment_count() << " panels";
      throw RefinementLimitError(msg.str(),
                                 {cur, diff, panels * p.segment_count()});
    }
    prev = cur;
  }
}

double ftc_defect(const Fn& f, const Integrand& g, const Path& p, double tol) {
  const IntegralResult r = path_integral(g, p, tol);
  return std::abs(r.value - (f(p.back()) - f(p.front())));
}

WindingResult winding_number(const Path& p, Point a, double tol) {
  const double scale = std::max(1.0, std::abs(p.front()));
  if (!p.is_closed(1e-12 * scale))
    throw DomainError("winding number needs a closed path");
  const auto& v = p.vertices();
  for (std::size_t s = 0; s + 1 < v.size(); ++s)
    if (point_segment_distance(a, v[s], v[s + 1]) <= 1e-9)
      throw DomainError("winding number: point lies on the path");

  const Integrand g = [a](Point z) { return 1.0 / (z - a); };
  IntegralResult r = path_integral(g, p, tol);
  r.value /= Complex(0.0, 2.0 * std::numbers::pi);
  const long w = std::lround(r.value.real());
  const double residual = std::abs(r.value - static_cast<double>(w));
  if (residual >= 0.25) {
    std::ostringstream msg;
    msg << "winding number ill-defined: integral " << r.value.real() << "+"
        << r.value.imag() << "i has residual " << residual;
    throw DomainError(msg.str());
  }
  return {w, residual, r};
}

}  // namespace pathcalc
