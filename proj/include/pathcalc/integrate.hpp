#pragma once

#include <functional>

#include "pathcalc/errors.hpp"
#include "pathcalc/fn.hpp"
#include "pathcalc/geometry.hpp"

namespace pathcalc {

struct IntegralResult {
  Complex value;
  double est_error;          ///< gap between the last two refinement levels
  std::size_t panels_used;   ///< quadrature panels at the accepted level
};

/// Raised when panel refinement hits its depth cap without meeting the
/// tolerance; carries the best estimate reached.
class RefinementLimitError : public Error {
 public:
  RefinementLimitError(const std::string& what, IntegralResult best)
      : Error(what), best(best) {}
  IntegralResult best;
};

using Integrand = std::function<Complex(Point)>;

/// Contour integral of g along p: composite 8-point Gauss-Legendre per
/// panel, panels per polyline segment doubled until two successive levels
/// agree within tol * (1 + |value|).
IntegralResult path_integral(const Integrand& g, const Path& p,
                             double tol = 1e-10);

/// | integral of g along p  -  (f(p end) - f(p start)) |, the fundamental
/// theorem defect of the pair (f, g) on this path.
double ftc_defect(const Fn& f, const Integrand& g, const Path& p,
                  double tol = 1e-10);

struct WindingResult {
  long winding;
  double residual;  ///< distance from the raw integral to the integer
  IntegralResult integral;
};

/// Winding number of the closed path p around a, computed from the contour
/// integral of 1/(2 pi i (z - a)).  Preconditions: p closed, a off the
/// path (distance > 1e-9).  A residual of 0.25 or more is rejected.
WindingResult winding_number(const Path& p, Point a, double tol = 1e-9);

}  // namespace pathcalc
