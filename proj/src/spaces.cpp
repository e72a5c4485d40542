#include "pathcalc/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "pathcalc/errors.hpp"

namespace pathcalc {

namespace mp = boost::multiprecision;

MSequence MSequence::factorial() {
  return MSequence(Generator::factorial, "factorial", {});
}

MSequence MSequence::factorial_squared() {
  return MSequence(Generator::factorial_squared, "factorial^2", {});
}

MSequence MSequence::factorial_times_2n() {
  return MSequence(Generator::factorial_times_2n, "factorial*2^n", {});
}

MSequence MSequence::from_values(std::vector<double> values) {
  if (values.empty()) throw DomainError("weight sequence needs at least M_0");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("weight sequence entries must be positive and finite");
  return MSequence(Generator::explicit_list, "explicit", std::move(values));
}

MSequence MSequence::parse(const std::string& spec) {
  if (spec == "factorial") return factorial();
  if (spec == "factorial^2") return factorial_squared();
  if (spec == "factorial*2^n") return factorial_times_2n();
  throw DomainError("unknown weight sequence spec: " + spec);
}

bool MSequence::has_finite_value(std::size_t n) const {
  if (gen_ == Generator::explicit_list) return n < values_.size();
  return log_value(n) < std::log(std::numeric_limits<double>::max());
}

double MSequence::value(std::size_t n) const {
  switch (gen_) {
    case Generator::explicit_list:
      if (n >= values_.size())
        throw DomainError("weight sequence index past the stored prefix");
      return values_[n];
    case Generator::factorial:
    case Generator::factorial_squared:
    case Generator::factorial_times_2n: {
      if (!has_finite_value(n))
        throw DomainError("weight value overflows double; use log_value");
      double v = 1.0;
      for (std::size_t k = 2; k <= n; ++k) v *= static_cast<double>(k);
      if (gen_ == Generator::factorial_squared) v *= v;
      if (gen_ == Generator::factorial_times_2n) v = std::ldexp(v, static_cast<int>(n));
      return v;
    }
  }
  throw Error("unreachable");
}

double MSequence::log_value(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (gen_) {
    case Generator::explicit_list:
      return std::log(value(n));
    case Generator::factorial:
      return std::lgamma(x + 1.0);
    case Generator::factorial_squared:
      return 2.0 * std::lgamma(x + 1.0);
    case Generator::factorial_times_2n:
      return std::lgamma(x + 1.0) + x * std::log(2.0);
  }
  throw Error("unreachable");
}

namespace {

mp::cpp_int exact_factorial(std::size_t n) {
  mp::cpp_int v = 1;
  for (std::size_t k = 2; k <= n; ++k) v *= static_cast<unsigned>(k);
  return v;
}

// Exact integer value of a generated sequence entry.
mp::cpp_int exact_generated(MSequence::Generator gen, std::size_t n) {
  mp::cpp_int v = exact_factorial(n);
  if (gen == MSequence::Generator::factorial_squared) v *= v;
  if (gen == MSequence::Generator::factorial_times_2n) v <<= n;
  return v;
}

mp::cpp_int exact_binom(std::size_t n, std::size_t k) {
  mp::cpp_int v = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    v *= static_cast<unsigned>(n - k + i);
    v /= static_cast<unsigned>(i);
  }
  return v;
}

}  // namespace

AlgebraCheck is_algebra_sequence(const MSequence& M, std::size_t upto) {
  if (!M.unbounded() && upto >= M.prefix_terms())
    throw DomainError("algebra check needs weights up to the requested index");
  AlgebraCheck out;
  out.upto = upto;
  const bool generated = M.unbounded();
  // Every double is an exact rational, so explicit prefixes are checked
  // exactly against the stored values.
  using Rat = mp::cpp_rational;
  for (std::size_t s = 0; s <= upto && out.holds; ++s) {
    for (std::size_t m = 0; m <= s && out.holds; ++m) {
      const std::size_t n = s - m;
      const mp::cpp_int binom = exact_binom(s, n);
      bool ok;
      if (generated) {
        const mp::cpp_int lhs =
            binom * exact_generated(M.generator(), m) * exact_generated(M.generator(), n);
        ok = lhs <= exact_generated(M.generator(), s);
      } else {
        const Rat lhs = Rat(binom) * Rat(M.value(m)) * Rat(M.value(n));
        ok = lhs <= Rat(M.value(s));
      }
      if (!ok) {
        out.holds = false;
        out.first_violation = {m, n};
      }
    }
  }
  return out;
}

NonanalyticCheck is_nonanalytic(const MSequence& M, std::size_t upto) {
  if (upto < 1) throw DomainError("nonanalyticity check needs upto >= 1");
  if (!M.unbounded() && upto >= M.prefix_terms())
    throw DomainError("nonanalyticity check needs weights up to the requested index");
  NonanalyticCheck out;
  out.tail.reserve(upto);
  for (std::size_t n = 1; n <= upto; ++n) {
    const double x = static_cast<double>(n);
    out.tail.push_back(std::exp((std::lgamma(x + 1.0) - M.log_value(n)) / x));
  }

  const double last = out.tail.back();
  bool nonincreasing_tail = true;
  const std::size_t half = out.tail.size() / 2;
  double lo = last, hi = last;
  for (std::size_t i = half; i < out.tail.size(); ++i) {
    lo = std::min(lo, out.tail[i]);
    hi = std::max(hi, out.tail[i]);
    if (i > half && out.tail[i] > out.tail[i - 1] * (1.0 + 1e-12))
      nonincreasing_tail = false;
  }

  switch (M.generator()) {
    case MSequence::Generator::factorial:
    case MSequence::Generator::factorial_times_2n:
      // a_n is constant (1 and 1/2); the generator confirms a positive limit.
      out.verdict = NonanalyticCheck::Verdict::no;
      out.fitted_floor = last;
      return out;
    case MSequence::Generator::factorial_squared:
      // a_n = (1/n!)^{1/n} decreases to 0; confirm the numeric tail agrees.
      out.verdict = (nonincreasing_tail && last < 0.01)
                        ? NonanalyticCheck::Verdict::yes
                        : NonanalyticCheck::Verdict::inconclusive;
      return out;
    case MSequence::Generator::explicit_list:
      break;
  }
  // No generator: a finite prefix can bound the tail below but can never
  // confirm convergence to 0.
  if (lo >= 0.01 && hi <= 1.2 * lo) {
    out.verdict = NonanalyticCheck::Verdict::no;
    out.fitted_floor = lo;
  }
  return out;
}

namespace {

double sup_abs_on(const Fn& f, const std::vector<Point>& samples) {
  double s = 0.0;
  for (Point p : samples) s = std::max(s, std::abs(f(p)));
  return s;
}

}  // namespace

double dn_norm(const DerivativeStack& stack, const std::vector<Point>& samples,
               std::size_t n) {
  if (samples.empty()) throw DomainError("norm needs a nonempty carrier");
  if (stack.depth() < n + 1)
    throw DomainError("derivative stack too shallow for the requested degree");
  double total = 0.0;
  double kfact = 1.0;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 1) kfact *= static_cast<double>(k);
    total += sup_abs_on(stack[k], samples) / kfact;
  }
  return total;
}

double dn_norm(const DerivativeStack& stack, const PlaneSet& X, std::size_t n) {
  return dn_norm(stack, X.samples(), n);
}

DxmResult dxm_norm(const DerivativeStack& stack, const MSequence& M,
                   const std::vector<Point>& samples) {
  if (samples.empty()) throw DomainError("norm needs a nonempty carrier");
  if (stack.depth() < 2)
    throw DomainError("weighted norm needs a stack of depth at least 2");
  DxmResult out;
  for (std::size_t n = 0; n < stack.depth(); ++n) {
    if (!M.unbounded() && n >= M.prefix_terms()) break;
    const double sup = sup_abs_on(stack[n], samples);
    double term;
    if (sup == 0.0) {
      term = 0.0;
    } else if (M.has_finite_value(n)) {
      term = sup / M.value(n);
    } else {
      term = std::exp(std::log(sup) - M.log_value(n));
    }
    out.terms.push_back(term);
    out.partial += term;
  }

  const std::size_t len = out.terms.size();
  if (len >= 6) {
    const double t_last = out.terms[len - 1];
    if (t_last >= 0.9 * out.terms[len - 6] && t_last > 1e-9 * out.partial)
      out.diverged = true;
  }
  if (!out.diverged && len >= 4) {
    bool small_tail = true;
    for (std::size_t i = len - 3; i < len; ++i)
      if (out.terms[i] > 1e-12 * out.partial) small_tail = false;
    if (small_tail) {
      // Geometric tail certificate: ratios over the last stretch stay
      // below 1, so the remainder is dominated by a convergent series.
      double rho = 0.0;
      bool have_ratio = false;
      for (std::size_t i = len - 4; i + 1 < len; ++i) {
        if (out.terms[i] > 0.0) {
          rho = std::max(rho, out.terms[i + 1] / out.terms[i]);
          have_ratio = true;
        }
      }
      if (!have_ratio || rho < 1.0) out.converged = true;
    }
  }
  return out;
}

DxmResult dxm_norm(const DerivativeStack& stack, const MSequence& M,
                   const PlaneSet& X) {
  return dxm_norm(stack, M, X.samples());
}

double fnorm(const Fn& f, const PlaneSet& X, const CarrierFunction& g) {
  if (X.samples().empty()) throw DomainError("norm needs a nonempty set");
  return sup_abs_on(f, X.samples()) + g.sup_abs();
}

double fnorm(const Fn& f, const PlaneSet& X, const Fn& g,
             const std::vector<Point>& carrier) {
  if (X.samples().empty()) throw DomainError("norm needs a nonempty set");
  if (carrier.empty()) throw DomainError("norm needs a nonempty carrier");
  return sup_abs_on(f, X.samples()) + sup_abs_on(g, carrier);
}

namespace {

// Limit of v0, v1, v2 under the assumption of a stabilized or geometric
// tail (Aitken delta-squared; exact for both).
Complex extrapolate3(Complex v0, Complex v1, Complex v2) {
  const Complex d1 = v1 - v0;
  const Complex d2 = v2 - v1;
  const Complex dd = d2 - d1;
  const double scale = std::max({std::abs(v0), std::abs(v1), std::abs(v2), 1e-300});
  if (std::abs(dd) <= 1e-12 * scale) return v2;
  // Aitken acceleration assumes a contracting tail.  A value that changed
  // only at the newest entry (or widening differences) carries no tail to
  // extrapolate: keep the newest value instead of dividing by noise.
  if (std::abs(d2) >= std::abs(d1)) return v2;
  return v2 - d2 * d2 / dd;
}

}  // namespace

CauchyTrace cauchy_trace(const std::vector<std::pair<Fn, Fn>>& seq,
                         const PlaneSet& X, const std::vector<Point>& carrier,
                         Point bad_point, const std::vector<double>& radii) {
  if (seq.size() < 3)
    throw DomainError("a Cauchy trace needs at least three sequence entries");
  if (radii.empty()) throw DomainError("a Cauchy trace needs probe radii");

  CauchyTrace out;
  out.radii = radii;
  std::sort(out.radii.begin(), out.radii.end(), std::greater<>());

  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    out.gaps.push_back(fnorm(seq[i + 1].first - seq[i].first, X,
                             seq[i + 1].second - seq[i].second, carrier));
  // Summability needs the gaps to contract at a ratio bounded away from 1,
  // not merely to decrease.
  bool contracting = true;
  for (std::size_t i = 1; i < out.gaps.size(); ++i) {
    const bool negligible = out.gaps[i] <= 1e-15 * (out.gaps.front() + 1.0);
    if (!negligible && out.gaps[i] > 0.9 * out.gaps[i - 1])
      contracting = false;
  }
  out.cauchy = contracting;

  // Samplewise uniform limit from the last three entries.
  const auto& [fa, ga] = seq[seq.size() - 3];
  const auto& [fb, gb] = seq[seq.size() - 2];
  const auto& [fc, gc] = seq[seq.size() - 1];
  const auto limit_f = [&](Point z) {
    return extrapolate3(fa(z), fb(z), fc(z));
  };
  out.limit_at_bad = limit_f(bad_point);
  out.deriv_at_bad = extrapolate3(ga(bad_point), gb(bad_point), gc(bad_point));

  for (double r : out.radii) {
    double worst = 0.0;
    bool any = false;
    for (Point z : X.samples()) {
      const double d = std::abs(z - bad_point);
      if (d <= 0.0 || d > r) continue;
      any = true;
      const Complex q = (limit_f(z) - out.limit_at_bad) / (z - bad_point);
      worst = std::max(worst, std::abs(q - out.deriv_at_bad));
    }
    if (!any) {
      // No sample that close: deviation unobservable at this radius.
      out.limit_deviation.push_back(0.0);
      continue;
    }
    out.limit_deviation.push_back(worst);
  }

  // Certified when the deviation shrinks with the radius and ends well
  // below its starting level.
  bool dec = true;
  for (std::size_t i = 1; i < out.limit_deviation.size(); ++i)
    if (out.limit_deviation[i] > out.limit_deviation[i - 1] * (1.0 + 1e-9))
      dec = false;
  out.derivative_certified =
      dec && !out.limit_deviation.empty() &&
      out.limit_deviation.back() <= 0.1 * out.limit_deviation.front() + 1e-12;
  return out;
}

}  // namespace pathcalc
