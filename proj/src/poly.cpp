#include "pathcalc/poly.hpp"

#include <algorithm>
#include <cmath>

#include "pathcalc/errors.hpp"

namespace pathcalc {

Polynomial::Polynomial(std::vector<Complex> coeffs, Point center, double scale)
    : coeffs_(std::move(coeffs)), center_(center), scale_(scale) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0.0));
  if (!(scale_ > 0.0)) throw DomainError("polynomial chart scale must be positive");
  for (const Complex& c : coeffs_)
    if (!is_finite(c)) throw DomainError("polynomial coefficient not finite");
}

Complex Polynomial::operator()(Point z) const {
  const Complex w = (z - center_) / scale_;
  Complex acc = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * w + coeffs_[k];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial({Complex(0.0)}, center_, scale_);
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * static_cast<double>(k) / scale_;
  return Polynomial(std::move(d), center_, scale_);
}

Polynomial Polynomial::antiderivative(Point z0, Complex v0) const {
  std::vector<Complex> a(coeffs_.size() + 1, Complex(0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    a[k + 1] = coeffs_[k] * scale_ / static_cast<double>(k + 1);
  Polynomial P(std::move(a), center_, scale_);
  const Complex shift = v0 - P(z0);
  auto c = P.coeffs_;
  c[0] += shift;
  return Polynomial(std::move(c), center_, scale_);
}

double Polynomial::coeff_scale() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Fn Polynomial::to_fn(std::string descriptor) const {
  Polynomial copy = *this;
  return Fn(std::move(descriptor), [copy](Point z) { return copy(z); });
}

DerivativeStack Polynomial::stack(std::size_t depth) const {
  DerivativeStack s;
  Polynomial cur = *this;
  for (std::size_t k = 0; k < depth; ++k) {
    s.levels.push_back(cur.to_fn("poly^(" + std::to_string(k) + ")"));
    cur = cur.derivative();
  }
  return s;
}

void Polynomial::require_same_chart(const Polynomial& o) const {
  if (center_ != o.center_ || scale_ != o.scale_)
    throw DomainError("polynomial chart mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_chart(o);
  std::vector<Complex> c(std::max(coeffs_.size(), o.coeffs_.size()),
                         Complex(0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return Polynomial(std::move(c), center_, scale_);
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + o * Complex(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_chart(o);
  std::vector<Complex> c(coeffs_.size() + o.coeffs_.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c), center_, scale_);
}

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> c = coeffs_;
  for (Complex& x : c) x *= s;
  return Polynomial(std::move(c), center_, scale_);
}

}  // namespace pathcalc
