#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "pathcalc/corpus.hpp"
#include "pathcalc/fderiv.hpp"
#include "pathcalc/fn.hpp"
#include "pathcalc/poly.hpp"

using namespace pathcalc;

namespace {

const Polynomial kSquarePoly({Complex(0.0), Complex(0.0), Complex(1.0)});

Fn two_z() {
  return Fn("2z", [](Point z) { return 2.0 * z; });
}

}  // namespace

TEST_SUITE("fderiv") {

TEST_CASE("exp verifies against itself on the square grid family") {
  const CorpusEntry e = build_standard("square", 1.0 / 16.0);
  const FDerivReport rep =
      verify_fderivative(Fn::exp(), Fn::exp(), e.family, 1e-8, 4, 99);
  CHECK(rep.verified);
  CHECK(rep.max_normalized < 1e-10);
  CHECK(rep.paths_checked >= e.family.generators().size());
  CHECK(rep.seed == 99);
}

TEST_CASE("a wrong derivative is rejected with a worst path") {
  const CorpusEntry e = build_standard("square", 1.0 / 16.0);
  const Fn three_z("3z", [](Point z) { return 3.0 * z; });
  const FDerivReport rep =
      verify_fderivative(kSquarePoly.to_fn(), three_z, e.family, 1e-8, 4, 99);
  CHECK_FALSE(rep.verified);
  CHECK(rep.max_defect > 0.05);
  REQUIRE(rep.worst_path.has_value());
  CHECK(rep.worst_path->length() > 0.0);
}

TEST_CASE("chord quotients recover the derivative of z^2 exactly inside") {
  // Two crossing diagonals; the symmetric quotient of a quadratic along a
  // straight chord is exact, so interior samples carry no error at all.
  const Path d1({Point(-1.0, -1.0), Point(1.0, 1.0)});
  const Path d2({Point(-1.0, 1.0), Point(1.0, -1.0)});
  const PathFamily F({d1, d2});
  const double h = 1e-3;
  const CarrierFunction est =
      estimate_fderivative(kSquarePoly.to_fn(), F, h);
  CHECK(est.samples().size() > 100);
  double worst_interior = 0.0;
  for (const CarrierSample& s : est.samples()) {
    const double from_end =
        std::min({std::abs(s.at - d1.front()), std::abs(s.at - d1.back()),
                  std::abs(s.at - d2.front()), std::abs(s.at - d2.back())});
    const double err = std::abs(s.value - 2.0 * s.at);
    if (from_end > 2.0 * h) worst_interior = std::max(worst_interior, err);
    CHECK(err < 4.0 * h);
  }
  CHECK(worst_interior < 1e-10);
  // Both diagonals agree at the shared center.
  CHECK(est.max_spread() < 1e-10);
  // The diagonals have irrational length, so no carrier sample lands exactly
  // on the center; nearest-sample lookup is off by up to ~h/2.
  CHECK(std::abs(est(Point(0.0, 0.0))) < 4.0 * h);
}

TEST_CASE("bisection halves lengths and keeps the chord bound") {
  const Path p({Point(0.0, 0.0), Point(1.0, 0.0), Point(1.0, 1.0)});
  const auto [k, chain] = bisect_subpaths(p, 5);
  REQUIRE(chain.size() == 5);
  CHECK(k > std::sqrt(2.0));
  CHECK(k < 2.0);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    CHECK(chain[i].length() ==
          doctest::Approx(2.0 * std::pow(0.5, static_cast<double>(i)))
              .epsilon(1e-12));
    const double chord = std::abs(chain[i].back() - chain[i].front());
    CHECK(chain[i].length() <= k * chord * (1.0 + 1e-12));
  }
  // Each level nests in the previous one.
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const double lo = chain[i].length();
    CHECK(lo <= chain[i - 1].length() * 0.5 * (1.0 + 1e-12));
  }
}

TEST_CASE("separation witnesses appear exactly when functions differ") {
  const CorpusEntry e = build_standard("square", 1.0 / 16.0);
  const Fn zero = Fn::constant(0.0);
  const Fn hat("hat", [](Point z) {
    const double d = std::abs(z - Point(0.5, 0.5));
    return Complex(std::max(0.0, 1.0 - d / 0.3), 0.0);
  });

  const auto w = separation_witness(zero, hat, e.family, 0.5, 1.0 / 32.0);
  REQUIRE(w.has_value());
  CHECK(w->defect > 0.0);
  CHECK(std::abs(w->center - Point(0.5, 0.5)) < 0.31);
  const double chord = std::abs(w->path.back() - w->path.front());
  CHECK(w->defect > 0.125 * chord);
  CHECK(chord > 0.0);

  CHECK_FALSE(
      separation_witness(hat, hat, e.family, 1e-3, 1.0 / 32.0).has_value());
}

TEST_CASE("classical quotients converge for z^2 and stall for Re z") {
  const CorpusEntry e = build_standard("square", 1.0 / 64.0);
  const Point a(0.5, 0.5);
  const std::vector<double> radii = {0.25, 0.1, 0.05};

  const auto dev_sq = classical_limit_check(
      kSquarePoly.to_fn(), two_z(), e.set, a, radii);
  REQUIRE(dev_sq.size() == radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i)
    CHECK(dev_sq[i] <= radii[i] * (1.0 + 1e-9));
  CHECK(dev_sq.back() < dev_sq.front());

  const auto dev_re = classical_limit_check(
      Fn::re_part(), Fn::constant(0.0), e.set, a, radii);
  for (double d : dev_re) CHECK(d > 0.9);
}

}  // TEST_SUITE
