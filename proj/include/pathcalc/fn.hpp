#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pathcalc/geometry.hpp"

namespace pathcalc {

/// A function on a plane set: an evaluation rule plus a short descriptor
/// used in reports.  Fn values are immutable and cheap to copy.
class Fn {
 public:
  using Eval = std::function<Complex(Point)>;

  Fn(std::string descriptor, Eval eval)
      : descriptor_(std::move(descriptor)), eval_(std::move(eval)) {}

  Complex operator()(Point z) const { return eval_(z); }
  const std::string& descriptor() const { return descriptor_; }

  static Fn constant(Complex c);
  static Fn identity();
  static Fn exp();
  static Fn re_part();
  /// z -> 1 / (z - a)
  static Fn inv_shift(Point a);

 private:
  std::string descriptor_;
  Eval eval_;
};

Fn operator+(const Fn& a, const Fn& b);
Fn operator-(const Fn& a, const Fn& b);
Fn operator*(const Fn& a, const Fn& b);
Fn operator*(Complex c, const Fn& a);

/// A value attached to a carrier point, with the disagreement spread when
/// several estimates were merged into it.
struct CarrierSample {
  Point at;
  Complex value;
  double spread = 0.0;
};

/// A function known only at points of a path-family carrier.  Evaluation
/// away from the carrier returns the value at the nearest carrier point;
/// this extension is a lookup convenience, not a canonical continuation.
class CarrierFunction {
 public:
  explicit CarrierFunction(std::vector<CarrierSample> samples);

  const std::vector<CarrierSample>& samples() const { return samples_; }
  Complex operator()(Point z) const;
  double sup_abs() const;
  double max_spread() const;
  Fn to_fn(std::string descriptor = "carrier") const;

 private:
  std::vector<CarrierSample> samples_;
  double cell_;
  std::vector<std::vector<int>> buckets_;
  std::vector<std::int64_t> bucket_keys_;
  int nearest(Point z) const;
  // flat hash: key -> bucket index
  std::int64_t key_of(Point p) const;
  int bucket_index(std::int64_t key) const;
};

/// Levels of derivatives of one function: levels[k] evaluates the k-th
/// derivative (levels[0] is the function itself).
struct DerivativeStack {
  std::vector<Fn> levels;

  std::size_t depth() const { return levels.size(); }
  const Fn& operator[](std::size_t k) const { return levels[k]; }
};

/// All derivatives of exp are exp.
DerivativeStack exp_stack(std::size_t depth);

/// d^k/dz^k [1/(z-a)] = (-1)^k k! (z-a)^{-(k+1)}.
DerivativeStack inv_shift_stack(Point a, std::size_t depth);

}  // namespace pathcalc
