#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "pathcalc/approx.hpp"
#include "pathcalc/corpus.hpp"
#include "pathcalc/fn.hpp"
#include "pathcalc/poly.hpp"
#include "pathcalc/spaces.hpp"

using namespace pathcalc;

namespace {

const Point kAnnulusPole(1.5, 1.5);

Shape two_rects() {
  return UnionShape{
      {Shape(Rect{0.0, 0.0, 1.0, 1.0}), Shape(Rect{2.0, 0.0, 3.0, 1.0})}};
}

}  // namespace

TEST_SUITE("approx") {

TEST_CASE("polynomial fits recover polynomials and taper for exp") {
  const PlaneSet square = discretize(Rect{0.0, 0.0, 1.0, 1.0}, 0.1);
  const Polynomial target({Complex(1.0), Complex(-2.0), Complex(3.0)});
  const PolyFit exact = poly_fit(target.to_fn(), square, 2);
  CHECK(exact.sup_error < 1e-10);
  CHECK(exact.l2_error <= exact.sup_error + 1e-15);
  // Same function through the fitted chart.
  CHECK(std::abs(exact.p(Point(0.3, 0.7)) - target(Point(0.3, 0.7))) < 1e-10);

  const PlaneSet disk = discretize(Disk{Point(0.0), 1.0}, 0.05);
  const PolyFit e12 = poly_fit(Fn::exp(), disk, 12);
  CHECK(e12.sup_error < 1e-9);

  double prev = 1e300;
  for (int deg : {2, 4, 6}) {
    const PolyFit fit = poly_fit(Fn::exp(), disk, deg);
    CHECK(fit.sup_error < prev);
    prev = fit.sup_error;
  }

  CHECK_THROWS_AS(poly_fit(Fn::exp(), std::vector<Point>{Point(0.0)}, 2),
                  Error);
}

TEST_CASE("clopen covers split along components") {
  const PlaneSet one = discretize(Rect{0.0, 0.0, 1.0, 1.0}, 0.125);
  const ClopenCover single = clopen_cover(one, 0.5);
  REQUIRE(single.pieces.size() == 1);
  CHECK(std::abs(single.pieces[0].anchor - Point(0.0, 0.0)) < 1e-12);

  const PlaneSet two = discretize(two_rects(), 0.125);
  const ClopenCover both = clopen_cover(two, 0.5);
  REQUIRE(both.pieces.size() == 2);
  CHECK(both.min_gap == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(clopen_cover(two, 1.5), Error);   // wider than the gap
  CHECK_THROWS_AS(clopen_cover(two, 0.01), Error);  // below resolution
}

TEST_CASE("idempotent correction pins locally constant functions") {
  const PlaneSet two = discretize(two_rects(), 0.125);
  const ClopenCover cover = clopen_cover(two, 0.5);
  const Fn f("steps", [](Point z) {
    return Complex(z.real() < 1.5 ? 0.0 : 1.0, 0.0);
  });
  const Fn h = idempotent_correct(Fn::constant(0.0), f, two, cover);
  for (Point z : two.samples()) CHECK(std::abs(h(z) - f(z)) < 1e-14);
}

TEST_CASE("pipeline reproduces a polynomial to tight tolerance") {
  const CorpusEntry seg = build_standard("segment", 0.02);
  std::vector<CarrierSample> samples;
  for (Point p : seg.family.carrier_points(0.02))
    samples.push_back({p, seg.g(p), 0.0});
  const PipelineResult r = approx_pipeline(
      seg.f, CarrierFunction(std::move(samples)), seg.set, seg.family, 1e-4);
  CHECK(r.success);
  CHECK(r.pieces == 1);
  CHECK(r.degree <= 2);
  CHECK(r.achieved < 1e-4);
  CHECK(r.fit_error <= r.tau);
  REQUIRE(!r.ladder.empty());
  CHECK(r.ladder.back().second == doctest::Approx(r.fit_error));
}

TEST_CASE("pipeline handles locally constant data at degree zero") {
  const PlaneSet two = discretize(two_rects(), 0.125);
  const PathFamily F = grid_chord_family(two);
  const Fn f("steps", [](Point z) {
    return Complex(z.real() < 1.5 ? 0.0 : 1.0, 0.0);
  });
  std::vector<CarrierSample> samples;
  for (Point p : F.carrier_points(0.125))
    samples.push_back({p, Complex(0.0), 0.0});
  const PipelineResult r = approx_pipeline(
      f, CarrierFunction(std::move(samples)), two, F, 1e-3);
  CHECK(r.success);
  CHECK(r.degree == 0);
  CHECK(r.pieces == 2);
  CHECK(r.achieved < 1e-10);
}

TEST_CASE("rational fit recovers a double pole and flags a residue") {
  const CorpusEntry ann = build_standard("square_annulus", 0.1);
  const Point a = kAnnulusPole;

  // The derivative of 1/(z-a) lies in the basis; the residue is zero, the
  // fit exact, and the antiderivative reproduces 1/(z-a).
  const Fn g = (*ann.stack)[1];
  const RationalFitReport rep = rational_fit_with_residue_correction(
      g, ann.set, {a}, ann.loops, 4, 3);
  CHECK(rep.sup_error_after < 1e-9);
  REQUIRE(rep.residues_removed.size() == 1);
  CHECK(std::abs(rep.residues_removed[0]) < 1e-6);

  const Point z0 = ann.set.samples().front();
  const RationalFn anti =
      rational_antiderivative(rep.r, z0, ann.f(z0));
  for (Point z : ann.set.samples())
    CHECK(std::abs(anti(z) - ann.f(z)) < 1e-6);

  // Fitting 1/(z-a) itself surfaces the full residue, which the correction
  // removes at the cost of the fit.
  const RationalFitReport bad = rational_fit_with_residue_correction(
      Fn::inv_shift(a), ann.set, {a}, ann.loops, 4, 3);
  CHECK(std::abs(bad.residues_removed[0] - Complex(1.0)) < 1e-3);
  CHECK(bad.sup_error_before < 1e-9);
  CHECK(bad.sup_error_after > 1.0);

  RationalFn raw;
  raw.pole_terms.push_back({a, {Complex(1.0)}});
  CHECK_THROWS_AS(rational_antiderivative(raw, z0, Complex(0.0)), Error);
}

TEST_CASE("dilations contract toward the origin") {
  const Fn ident = Fn::identity();
  const Fn half = dilate(ident, 1);
  CHECK(std::abs(half(Point(1.0, 0.0)) - Complex(0.5)) < 1e-15);
  CHECK(std::abs(half(Point(0.0, 2.0)) - Complex(0.0, 1.0)) < 1e-15);

  const DerivativeStack dexp = dilate(exp_stack(3), 1);
  const Point z(0.4, -0.2);
  CHECK(std::abs(dexp[1](z) - 0.5 * std::exp(0.5 * z)) < 1e-14);
  CHECK(std::abs(dexp[2](z) - 0.25 * std::exp(0.5 * z)) < 1e-14);

  const DerivativeStack diff = stack_difference(dexp, exp_stack(3));
  CHECK(std::abs(diff[0](z) - (std::exp(0.5 * z) - std::exp(z))) < 1e-14);
}

TEST_CASE("radial interiority decides where dilation applies") {
  const CorpusEntry disk = build_standard("disk", 0.05);
  CHECK(radially_self_absorbing(disk.set, 2));
  const CorpusEntry star = build_standard("star", 0.02);
  CHECK(radially_self_absorbing(star.set, 2));

  const CorpusEntry ann = build_standard("square_annulus", 0.05);
  CHECK_FALSE(radially_self_absorbing(ann.set, 2));
  const CorpusEntry seg = build_standard("segment", 0.05);
  CHECK_FALSE(radially_self_absorbing(seg.set, 2));

  CHECK_THROWS_AS(dilation_approx(Fn::exp(), ann.set, 2), Error);
  const Fn ok = dilation_approx(Fn::exp(), disk.set, 2);
  CHECK(std::abs(ok(Point(0.9, 0.0)) - std::exp(0.6)) < 1e-14);
}

TEST_CASE("dilation gap in the weighted norm shrinks with n") {
  const CorpusEntry disk = build_standard("disk", 0.1);
  const MSequence M = MSequence::factorial();
  std::vector<double> gaps;
  for (int n : {1, 2}) {
    const DerivativeStack diff =
        stack_difference(dilate(exp_stack(30), n), exp_stack(30));
    const DxmResult r = dxm_norm(diff, M, disk.set);
    const double oracle =
        std::exp(2.0) -
        std::exp(2.0 * static_cast<double>(n) / static_cast<double>(n + 1));
    CHECK(r.partial == doctest::Approx(oracle).epsilon(1e-9));
    gaps.push_back(r.partial);
  }
  CHECK(gaps[1] < gaps[0]);
}

}  // TEST_SUITE
