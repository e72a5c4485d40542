#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathcalc/fn.hpp"
#include "pathcalc/geometry.hpp"

namespace pathcalc {

/// A sequence M_0, M_1, ... of positive weights.  Closed-form generators
/// extend the sequence to any index; explicit sequences hold a finite
/// prefix only.
class MSequence {
 public:
  enum class Generator { explicit_list, factorial, factorial_squared, factorial_times_2n };

  static MSequence factorial();
  static MSequence factorial_squared();
  static MSequence factorial_times_2n();
  static MSequence from_values(std::vector<double> values);
  /// Accepts "factorial", "factorial^2", "factorial*2^n".
  static MSequence parse(const std::string& spec);

  Generator generator() const { return gen_; }
  const std::string& label() const { return label_; }
  /// Number of stored prefix terms (explicit sequences only bound access).
  std::size_t prefix_terms() const { return values_.size(); }
  bool unbounded() const { return gen_ != Generator::explicit_list; }
  /// True when M_n is representable as a finite double.
  bool has_finite_value(std::size_t n) const;

  double value(std::size_t n) const;
  double log_value(std::size_t n) const;

 private:
  MSequence(Generator gen, std::string label, std::vector<double> values)
      : gen_(gen), label_(std::move(label)), values_(std::move(values)) {}

  Generator gen_;
  std::string label_;
  std::vector<double> values_;
};

/// Result of the normed-algebra condition binom(m+n, n) <= M_{m+n} / (M_m M_n).
struct AlgebraCheck {
  bool holds = true;
  std::size_t upto = 0;
  /// First (m, n) violating the inequality, scanning m+n ascending.
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
};

/// Brute-force check of the algebra condition for all m, n with m+n <= upto,
/// in exact arithmetic (big integers for generators, exact rationals for
/// explicit sequences).
AlgebraCheck is_algebra_sequence(const MSequence& M, std::size_t upto);

/// Result of the nonanalyticity condition lim (n!/M_n)^{1/n} = 0.
struct NonanalyticCheck {
  enum class Verdict { yes, no, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  /// a_n = (n!/M_n)^{1/n} for n = 1..upto, computed in log space.
  std::vector<double> tail;
  /// Positive constant bounding the tail below, when the verdict is "no".
  double fitted_floor = 0.0;
};

/// Decides the nonanalyticity condition.  A "yes" verdict requires a
/// closed-form generator confirming the limit; explicit sequences can at
/// most be "no" (tail bounded below) or inconclusive.
NonanalyticCheck is_nonanalytic(const MSequence& M, std::size_t upto);

/// The degree-n norm: sum over k <= n of sup|f^(k)| / k!, sups taken over
/// the given samples.
double dn_norm(const DerivativeStack& stack, const std::vector<Point>& samples,
               std::size_t n);
double dn_norm(const DerivativeStack& stack, const PlaneSet& X, std::size_t n);

/// Partial sum of sup|f^(n)| / M_n with a three-way convergence verdict.
struct DxmResult {
  double partial = 0.0;
  std::vector<double> terms;
  bool converged = false;
  bool diverged = false;

  std::string verdict() const {
    return converged ? "converged" : diverged ? "diverged" : "inconclusive";
  }
};

DxmResult dxm_norm(const DerivativeStack& stack, const MSequence& M,
                   const std::vector<Point>& samples);
DxmResult dxm_norm(const DerivativeStack& stack, const MSequence& M,
                   const PlaneSet& X);

/// The path-family norm: sup|f| over the set samples plus sup|g| over the
/// family carrier.
double fnorm(const Fn& f, const PlaneSet& X, const CarrierFunction& g);
double fnorm(const Fn& f, const PlaneSet& X, const Fn& g,
             const std::vector<Point>& carrier);

/// Trace of a Cauchy sequence (f_i, g_i): consecutive norm gaps, the
/// samplewise uniform limit, and whether the difference quotients of that
/// limit settle toward the carrier derivative at a designated point.
struct CauchyTrace {
  std::vector<double> gaps;  ///< fnorm(f_{i+1} - f_i, g_{i+1} - g_i)
  bool cauchy = false;       ///< gaps nonincreasing with substantial decay
  std::vector<double> radii;
  /// Per radius r: max over samples 0 < |z-a| <= r of
  /// |(f(z) - f(a))/(z - a) - g(a)| for the extrapolated limit f.
  std::vector<double> limit_deviation;
  bool derivative_certified = false;
  Complex limit_at_bad = 0.0;  ///< extrapolated limit value at the bad point
  Complex deriv_at_bad = 0.0;  ///< extrapolated carrier derivative there
};

/// seq must have length >= 3.  The samplewise limit is extrapolated from
/// the last three entries (exact for stabilized and geometric tails).
CauchyTrace cauchy_trace(const std::vector<std::pair<Fn, Fn>>& seq,
                         const PlaneSet& X, const std::vector<Point>& carrier,
                         Point bad_point, const std::vector<double>& radii);

}  // namespace pathcalc
