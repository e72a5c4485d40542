#include "pathcalc/fn.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>

#include "pathcalc/errors.hpp"

namespace pathcalc {

Fn Fn::constant(Complex c) {
  std::string d = "const(" + std::to_string(c.real()) + "," +
                  std::to_string(c.imag()) + ")";
  return Fn(std::move(d), [c](Point) { return c; });
}

Fn Fn::identity() {
  return Fn("z", [](Point z) { return z; });
}

Fn Fn::exp() {
  return Fn("exp", [](Point z) { return std::exp(z); });
}

Fn Fn::re_part() {
  return Fn("re_part", [](Point z) { return Complex(z.real(), 0.0); });
}

Fn Fn::inv_shift(Point a) {
  std::string d = "inv_shift(" + std::to_string(a.real()) + "," +
                  std::to_string(a.imag()) + ")";
  return Fn(std::move(d), [a](Point z) { return 1.0 / (z - a); });
}

Fn operator+(const Fn& a, const Fn& b) {
  return Fn("(" + a.descriptor() + ")+(" + b.descriptor() + ")",
            [a, b](Point z) { return a(z) + b(z); });
}

Fn operator-(const Fn& a, const Fn& b) {
  return Fn("(" + a.descriptor() + ")-(" + b.descriptor() + ")",
            [a, b](Point z) { return a(z) - b(z); });
}

Fn operator*(const Fn& a, const Fn& b) {
  return Fn("(" + a.descriptor() + ")*(" + b.descriptor() + ")",
            [a, b](Point z) { return a(z) * b(z); });
}

Fn operator*(Complex c, const Fn& a) {
  return Fn("scale*(" + a.descriptor() + ")",
            [c, a](Point z) { return c * a(z); });
}

// ---------------------------------------------------------------------------
// CarrierFunction
// ---------------------------------------------------------------------------

CarrierFunction::CarrierFunction(std::vector<CarrierSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw DomainError("carrier function needs samples");
  std::sort(samples_.begin(), samples_.end(),
            [](const CarrierSample& a, const CarrierSample& b) {
              if (a.at.real() != b.at.real()) return a.at.real() < b.at.real();
              return a.at.imag() < b.at.imag();
            });
  // Cell size: median nearest-neighbor gap along the sort order, floored
  // so that very dense carriers do not explode the hash.
  double diam = std::max(1e-12, std::abs(samples_.back().at - samples_.front().at));
  std::vector<double> gaps;
  for (std::size_t i = 1; i < samples_.size(); ++i)
    gaps.push_back(std::abs(samples_[i].at - samples_[i - 1].at));
  double med = diam;
  if (!gaps.empty()) {
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    med = std::max(gaps[gaps.size() / 2], diam / 4096.0);
  }
  cell_ = std::max(med, 1e-300);

  std::map<std::int64_t, std::vector<int>> cells;
  for (std::size_t i = 0; i < samples_.size(); ++i)
    cells[key_of(samples_[i].at)].push_back(static_cast<int>(i));
  for (auto& [k, v] : cells) {
    bucket_keys_.push_back(k);
    buckets_.push_back(std::move(v));
  }
}

std::int64_t CarrierFunction::key_of(Point p) const {
  const auto cx = static_cast<std::int64_t>(std::floor(p.real() / cell_));
  const auto cy = static_cast<std::int64_t>(std::floor(p.imag() / cell_));
  return (cx << 32) ^ (cy & 0xffffffffLL);
}

int CarrierFunction::bucket_index(std::int64_t key) const {
  const auto it =
      std::lower_bound(bucket_keys_.begin(), bucket_keys_.end(), key);
  if (it == bucket_keys_.end() || *it != key) return -1;
  return static_cast<int>(it - bucket_keys_.begin());
}

int CarrierFunction::nearest(Point z) const {
  const auto cx = static_cast<long>(std::floor(z.real() / cell_));
  const auto cy = static_cast<long>(std::floor(z.imag() / cell_));
  int best = -1;
  double best_d = std::numeric_limits<double>::max();
  const long max_ring = 2 + static_cast<long>(samples_.size());
  for (long ring = 0; ring <= max_ring; ++ring) {
    if (best >= 0 && static_cast<double>(ring - 1) * cell_ > best_d) break;
    for (long y = cy - ring; y <= cy + ring; ++y) {
      for (long x = cx - ring; x <= cx + ring; ++x) {
        if (std::max(std::abs(x - cx), std::abs(y - cy)) != ring) continue;
        const std::int64_t key = (static_cast<std::int64_t>(x) << 32) ^
                                 (static_cast<std::int64_t>(y) & 0xffffffffLL);
        const int b = bucket_index(key);
        if (b < 0) continue;
        for (int i : buckets_[static_cast<std::size_t>(b)]) {
          const double d =
              std::abs(samples_[static_cast<std::size_t>(i)].at - z);
          if (d < best_d || (d == best_d && i < best)) {
            best_d = d;
            best = i;
          }
        }
      }
    }
  }
  return best;
}

Complex CarrierFunction::operator()(Point z) const {
  return samples_[static_cast<std::size_t>(nearest(z))].value;
}

double CarrierFunction::sup_abs() const {
  double m = 0.0;
  for (const CarrierSample& s : samples_) m = std::max(m, std::abs(s.value));
  return m;
}

double CarrierFunction::max_spread() const {
  double m = 0.0;
  for (const CarrierSample& s : samples_) m = std::max(m, s.spread);
  return m;
}

Fn CarrierFunction::to_fn(std::string descriptor) const {
  CarrierFunction copy = *this;
  return Fn(std::move(descriptor),
            [copy](Point z) { return copy(z); });
}

// ---------------------------------------------------------------------------
// Derivative stacks
// ---------------------------------------------------------------------------

DerivativeStack exp_stack(std::size_t depth) {
  DerivativeStack s;
  for (std::size_t k = 0; k < depth; ++k) s.levels.push_back(Fn::exp());
  return s;
}

DerivativeStack inv_shift_stack(Point a, std::size_t depth) {
  DerivativeStack s;
  double factorial = 1.0;
  for (std::size_t k = 0; k < depth; ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    const double c = (k % 2 == 0) ? factorial : -factorial;
    const auto power = static_cast<int>(k + 1);
    s.levels.emplace_back(
        "d^" + std::to_string(k) + " inv_shift", [a, c, power](Point z) {
          return c / std::pow(z - a, power);
        });
  }
  return s;
}

}  // namespace pathcalc
