#pragma once

#include <vector>

#include "pathcalc/fn.hpp"
#include "pathcalc/geometry.hpp"

namespace pathcalc {

/// Polynomial in an affine chart: p(z) = sum_k coeffs[k] * w^k with
/// w = (z - center) / scale.  The default chart (center 0, scale 1) gives
/// plain coefficients; fits use a centered chart for conditioning.
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex(0.0)} {}
  explicit Polynomial(std::vector<Complex> coeffs, Point center = 0.0,
                      double scale = 1.0);

  Complex operator()(Point z) const;
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Point center() const { return center_; }
  double scale() const { return scale_; }
  std::size_t degree() const { return coeffs_.size() - 1; }

  Polynomial derivative() const;

  /// The antiderivative P with P(z0) = v0.
  Polynomial antiderivative(Point z0, Complex v0) const;

  /// Largest coefficient magnitude (in the chart).
  double coeff_scale() const;

  Fn to_fn(std::string descriptor = "poly") const;

  /// Derivative levels 0..depth-1.
  DerivativeStack stack(std::size_t depth) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;  // requires equal charts
  Polynomial operator*(Complex c) const;

 private:
  std::vector<Complex> coeffs_;
  Point center_ = 0.0;
  double scale_ = 1.0;

  void require_same_chart(const Polynomial& o) const;
};

}  // namespace pathcalc
