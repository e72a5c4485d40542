#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "pathcalc/corpus.hpp"
#include "pathcalc/fderiv.hpp"
#include "pathcalc/fn.hpp"
#include "pathcalc/integrate.hpp"
#include "pathcalc/spaces.hpp"

using namespace pathcalc;

namespace {

double dyadic(int k) { return std::ldexp(1.0, -k); }

Path tooth_path(int n) {
  const double zn = dyadic(2 * n), znext = dyadic(2 * n + 2);
  const double xs = dyadic(2 * n + 1), height = dyadic(n);
  return Path({Point(zn, 0.0), Point(zn, height), Point(xs, height),
               Point(xs, 0.0), Point(znext, 0.0)});
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("zigzag keeps difference quotient one at the origin") {
  const CorpusEntry e = build_zigzag(6, 1e-3);
  CHECK(std::abs(e.f(Point(0.0))) == 0.0);
  for (int n = 1; n <= 6; ++n) {
    const double zn = dyadic(2 * n);
    const Complex q = (e.f(Point(zn, 0.0)) - e.f(Point(0.0))) / zn;
    CHECK(std::abs(q - Complex(1.0)) < 1e-15);
  }
}

TEST_CASE("zigzag derivative peaks at (9/8) 2^-n per tooth and dies at 0") {
  const CorpusEntry e = build_zigzag(6, 1e-3);
  CHECK(std::abs(e.g(Point(0.0))) == 0.0);
  for (int n = 1; n <= 6; ++n) {
    const Path tooth = tooth_path(n);
    double sup = 0.0;
    for (Point z : tooth.discretize(dyadic(n) / 64.0))
      sup = std::max(sup, std::abs(e.g(z)));
    const double oracle = 1.125 * dyadic(n);
    CHECK(sup <= oracle * (1.0 + 1e-12));
    CHECK(sup == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("zigzag arc is a Jordan arc ending at the origin") {
  const CorpusEntry e = build_zigzag(5, 1e-3);
  REQUIRE(e.family.generators().size() == 1);
  const Path& arc = e.family.generators().front();
  CHECK(std::abs(arc.front() - Point(0.25, 0.0)) < 1e-15);
  CHECK(std::abs(arc.back()) == 0.0);
  CHECK(is_jordan_arc(arc, 1e-12));
}

TEST_CASE("zigzag truncations are Cauchy in the family norm") {
  const CorpusEntry e = build_zigzag(6, 1e-3);
  REQUIRE(e.truncations.size() == 6);
  const std::vector<Point> carrier = e.family.carrier_points(1e-3);

  std::vector<double> gaps;
  for (std::size_t k = 0; k + 1 < e.truncations.size(); ++k) {
    const Fn df = e.truncations[k + 1].first - e.truncations[k].first;
    const Fn dg = e.truncations[k + 1].second - e.truncations[k].second;
    gaps.push_back(fnorm(df, e.set, dg, carrier));
  }
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    CHECK(gaps[k] < std::ldexp(4.0, -static_cast<int>(k) - 1));
    if (k > 0) {
      // The riser part of the gap halves per tooth while the plateau part
      // quarters, so consecutive ratios sit a little below 1/2.
      CHECK(gaps[k] < gaps[k - 1]);
      CHECK(gaps[k] / gaps[k - 1] > 0.40);
      CHECK(gaps[k] / gaps[k - 1] < 0.65);
    }
  }

  // Truncations approximate f uniformly at rate 4^-n.
  for (std::size_t n = 0; n < e.truncations.size(); ++n) {
    double sup = 0.0;
    for (Point z : e.set.samples())
      sup = std::max(sup, std::abs(e.f(z) - e.truncations[n].first(z)));
    CHECK(sup <= dyadic(2 * static_cast<int>(n) + 2) * (1.0 + 1e-12));
  }
}

TEST_CASE("zigzag designated derivative verifies on the arc") {
  const CorpusEntry e = build_zigzag(4, 1e-3);
  const FDerivReport rep = verify_fderivative(e.f, e.g, e.family, 1e-8, 6, 7);
  CHECK(rep.verified);
}

TEST_CASE("printed riser cubic lands on 7/4 of the tooth scale") {
  const CorpusEntry printed = build_zigzag(4, 1e-2, true);
  const CorpusEntry smooth = build_zigzag(4, 1e-2, false);
  const int n = 2;
  const Point riser_top(dyadic(2 * n), dyadic(n));
  // The sign-flipped cubic tops out at (7/4) 4^-n instead of continuing to
  // the next tooth level 4^-(n+1).
  CHECK(std::abs(printed.f(riser_top) - Complex(1.75 * dyadic(2 * n))) <
        1e-15);
  CHECK(std::abs(smooth.f(riser_top) - Complex(dyadic(2 * n + 2))) < 1e-15);
  CHECK(printed.notes != smooth.notes);
}

TEST_CASE("corpus builders are deterministic") {
  const CorpusEntry a = build_zigzag(5, 1e-3);
  const CorpusEntry b = build_zigzag(5, 1e-3);
  REQUIRE(a.set.size() == b.set.size());
  for (std::size_t i = 0; i < a.set.size(); ++i)
    CHECK(a.set.samples()[i] == b.set.samples()[i]);
  for (double x : {0.3, 0.11, 0.02, 0.004}) {
    CHECK(a.f(Point(x, 0.01)) == b.f(Point(x, 0.01)));
    CHECK(a.g(Point(x, 0.01)) == b.g(Point(x, 0.01)));
  }
}

TEST_CASE("many components: one per segment plus the limit bar") {
  const CorpusEntry e = build_many_components(5, 1.0 / 128.0);
  CHECK(components(e.set).count == 6);
  CHECK_THROWS_AS(build_many_components(5, 0.1), Error);

  for (int i = 1; i <= 5; ++i) {
    const double x = dyadic(i);
    const Complex q = (e.f(Point(x, 0.0)) - e.f(Point(0.0))) / x;
    CHECK(std::abs(q - Complex(1.0)) < 1e-15);
  }

  const FDerivReport rep = verify_fderivative(e.f, e.g, e.family, 1e-10, 4, 3);
  CHECK(rep.verified);

  REQUIRE(e.truncations.size() >= 3);
  const std::vector<Point> carrier = e.family.carrier_points(1.0 / 128.0);
  const std::vector<double> radii = {0.5, 0.25, 0.125, 0.0625};
  const CauchyTrace trace =
      cauchy_trace(e.truncations, e.set, carrier, e.bad_point, radii);
  CHECK(trace.cauchy);
  CHECK(std::abs(trace.limit_at_bad) < 1e-12);
  // The limit is Cauchy yet no classical derivative forms at 0: quotients
  // along the segment tips stay near 1.
  CHECK_FALSE(trace.derivative_certified);
  for (double dev : trace.limit_deviation) CHECK(dev > 0.9);
}

TEST_CASE("vertical-chord square sees Re z as constant, horizontals do not") {
  const CorpusEntry e = build_square_vertical(1.0 / 32.0);
  const FDerivReport rep = verify_fderivative(e.f, e.g, e.family, 1e-10, 4, 5);
  CHECK(rep.verified);
  CHECK(rep.max_normalized < 1e-12);

  const PathFamily horizontals =
      grid_chord_family(e.set, /*verticals=*/false, /*horizontals=*/true);
  double worst = 0.0;
  for (const Path& p : horizontals.generators())
    worst = std::max(
        worst, ftc_defect(e.f, [&e](Point z) { return e.g(z); }, p, 1e-10));
  CHECK(worst >= 0.9);
}

TEST_CASE("standard entries build coherently") {
  for (const std::string& name : corpus_names()) {
    const int N = 4;
    const double h =
        (name == "zigzag" || name == "zigzag_printed") ? 1.0 / 256.0
        : name == "many_components"                    ? 1.0 / 64.0
                                                       : 0.1;
    const CorpusEntry e = build_corpus(name, N, h);
    CHECK(e.name == name);
    CHECK(e.set.size() > 0);
    CHECK(!e.family.generators().empty());
    const Point z0 = e.set.samples().front();
    CHECK(std::isfinite(std::abs(e.f(z0))));
    CHECK(std::isfinite(std::abs(e.g(z0))));
  }

  const CorpusEntry ann = build_corpus("square_annulus", 4, 0.1);
  REQUIRE(ann.stack.has_value());
  CHECK(ann.stack->depth() >= 33);
  REQUIRE(!ann.loops.empty());
  REQUIRE(!ann.poles.empty());
  CHECK(winding_number(ann.loops.front(), ann.poles.front()).winding == 1);

  CHECK_THROWS_AS(build_corpus("nonsense", 4, 0.1), Error);
}

TEST_CASE("grid chord families trace the sample grid") {
  const CorpusEntry sq = build_standard("square", 0.25);
  const PathFamily F = sq.family;
  CHECK(F.generators().size() == 10);
  for (const Path& p : F.generators()) {
    const Point d = p.back() - p.front();
    CHECK((std::abs(d.real()) < 1e-12 || std::abs(d.imag()) < 1e-12));
    CHECK(p.length() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sq.set.segment_in_set(p.front(), p.back()));
  }

  const CorpusEntry ann = build_standard("square_annulus", 0.25);
  CHECK(ann.family.generators().size() > 12);
  for (const Path& p : ann.family.generators())
    CHECK(ann.set.segment_in_set(p.front(), p.back()));
}

}  // TEST_SUITE
