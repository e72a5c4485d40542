#pragma once

#include <string>
#include <vector>

#include "pathcalc/fn.hpp"
#include "pathcalc/geometry.hpp"
#include "pathcalc/poly.hpp"

namespace pathcalc {

/// Least-squares polynomial fit over sample points, computed in an
/// orthogonalized monomial basis on a centered chart.
struct PolyFit {
  Polynomial p;
  double sup_error = 0.0;  ///< max residual over the fitting samples
  double l2_error = 0.0;   ///< rms residual
  int degree = 0;
};

PolyFit poly_fit(const Fn& g, const std::vector<Point>& samples, int degree);
PolyFit poly_fit(const Fn& g, const PlaneSet& X, int degree);

/// A cover of the sample set by clopen pieces, one per component.
struct ClopenPiece {
  std::vector<int> component_samples;  ///< indices into the set's samples
  std::vector<int> neighborhood;       ///< piece samples (own the component)
  Point anchor;                        ///< lexicographically least sample
};

struct ClopenCover {
  std::vector<ClopenPiece> pieces;
  double delta = 0.0;
  double min_gap = 0.0;  ///< smallest Euclidean gap between components
};

/// Builds the cover; requires delta > 2h and components pairwise farther
/// than delta apart.
ClopenCover clopen_cover(const PlaneSet& X, double delta);

/// The piecewise correction h(z) = F(z) - F(anchor_i) + f(anchor_i) on the
/// piece owning z.  Constant shifts per piece leave the derivative intact.
Fn idempotent_correct(const Fn& F_anti, const Fn& f, const PlaneSet& X,
                      const ClopenCover& cover);

/// One run of the constructive approximation pipeline: fit the carrier
/// derivative by a polynomial, antidifferentiate, and correct by piecewise
/// constants so the result tracks f on every component.
struct PipelineResult {
  bool success = false;
  Fn h = Fn::constant(0.0);  ///< corrected approximation
  Polynomial p;              ///< fitted derivative
  Polynomial F;              ///< its antiderivative
  int degree = 0;
  double tau = 0.0;        ///< fit target min(eps/3, eps/(3L))
  double fit_error = 0.0;  ///< achieved sup|p - g| on the carrier
  double delta = 0.0;      ///< modulus-of-continuity scale used for the cover
  std::size_t pieces = 0;
  double achieved = 0.0;  ///< sup|h - f| on X plus sup|p - g| on the carrier
  std::string note;       ///< failure explanation when success is false
  std::vector<std::pair<int, double>> ladder;  ///< (degree, sup error) tried
};

PipelineResult approx_pipeline(const Fn& f, const CarrierFunction& g,
                               const PlaneSet& X, const PathFamily& F,
                               double eps, int degree_cap = 64);

/// Rational function: polynomial part plus principal parts at fixed poles.
struct PoleTerm {
  Point pole;
  std::vector<Complex> coeffs;  ///< coeffs[m-1] multiplies (z - pole)^{-m}
};

struct RationalFn {
  Polynomial poly;
  std::vector<PoleTerm> pole_terms;

  Complex operator()(Point z) const;
  double sup_abs(const std::vector<Point>& samples) const;
  Fn to_fn(std::string descriptor = "rational") const;
};

/// Least-squares fit of g in the basis of chart monomials and pole powers,
/// followed by removal of every simple-pole coefficient so the result
/// admits a single-valued antiderivative.
struct RationalFitReport {
  RationalFn r;
  double sup_error_before = 0.0;  ///< residual of the raw fit
  double sup_error_after = 0.0;   ///< residual after residue removal
  std::vector<Complex> residues_removed;  ///< one per pole
};

/// poles[j] must lie off the set (farther than its resolution) and
/// loops[j] must wind around poles[j] a nonzero number of times.
RationalFitReport rational_fit_with_residue_correction(
    const Fn& g, const PlaneSet& X, const std::vector<Point>& poles,
    const std::vector<Path>& loops, int degree, int pole_order = 6);

/// Termwise antiderivative of r, normalized to v0 at z0.  Requires every
/// simple-pole coefficient to be exactly zero.
RationalFn rational_antiderivative(const RationalFn& r, Point z0, Complex v0);

/// The dilation z -> f(n z / (n+1)).
Fn dilate(const Fn& f, int n);

/// Dilation of a derivative stack: level k picks up the factor (n/(n+1))^k.
DerivativeStack dilate(const DerivativeStack& stack, int n);

/// Levelwise difference of two stacks of equal depth.
DerivativeStack stack_difference(const DerivativeStack& a,
                                 const DerivativeStack& b);

/// Radial interiority check for the dilation step: every sample, scaled by
/// n/(n+1), must sit inside the set with margin h in all probed directions.
bool radially_self_absorbing(const PlaneSet& X, int n);

/// Dilation approximation; throws when the radial check fails.
Fn dilation_approx(const Fn& f, const PlaneSet& X, int n);

}  // namespace pathcalc
