#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "pathcalc/fn.hpp"
#include "pathcalc/integrate.hpp"
#include "pathcalc/poly.hpp"

using namespace pathcalc;

namespace {

Path unit_square_loop() {
  return Path({Point(0.0, 0.0), Point(1.0, 0.0), Point(1.0, 1.0),
               Point(0.0, 1.0), Point(0.0, 0.0)});
}

Path circle(std::size_t n, double radius) {
  std::vector<Point> v;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k % n) /
                     static_cast<double>(n);
    v.emplace_back(radius * std::cos(t), radius * std::sin(t));
  }
  return Path(std::move(v));
}

}  // namespace

TEST_SUITE("integrate") {

TEST_CASE("integral of z matches the antiderivative increment") {
  const Path p = Path({Point(0.0, 0.0), Point(1.0, 0.0), Point(1.0, 1.0)});
  const IntegralResult r =
      path_integral([](Point z) { return z; }, p, 1e-12);
  // z^2 / 2 evaluated at the endpoints: ((1+i)^2 - 0) / 2 = i.
  CHECK(std::abs(r.value - Complex(0.0, 1.0)) < 1e-13);
  CHECK(r.est_error < 1e-12);
}

TEST_CASE("integral of conj(z) around a loop sees the area") {
  const IntegralResult r = path_integral(
      [](Point z) { return std::conj(z); }, unit_square_loop(), 1e-12);
  // The loop integral of conj(z) equals 2i times the enclosed area.
  CHECK(std::abs(r.value - Complex(0.0, 2.0)) < 1e-11);
}

TEST_CASE("1/z around a 4096-gon gives 2 pi i") {
  const IntegralResult r = path_integral(
      [](Point z) { return 1.0 / z; }, circle(4096, 1.0), 1e-10);
  CHECK(std::abs(r.value - Complex(0.0, 2.0 * M_PI)) < 1e-6);
}

TEST_CASE("fundamental-theorem defect of matched and mismatched pairs") {
  const Path p = Path({Point(0.0, 0.0), Point(1.0, 0.0), Point(1.0, 1.0)});
  const Polynomial sq({Complex(0.0), Complex(0.0), Complex(1.0)});
  CHECK(ftc_defect(sq.to_fn(), [](Point z) { return 2.0 * z; }, p, 1e-12) <
        1e-12);
  CHECK(ftc_defect(Fn::exp(), [](Point z) { return std::exp(z); }, p,
                   1e-12) < 1e-12);
  // With g = 3z the defect is |3i - 2i| = 1.
  CHECK(ftc_defect(sq.to_fn(), [](Point z) { return 3.0 * z; }, p, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("winding numbers around and away from a loop") {
  const Path loop = unit_square_loop();
  CHECK(winding_number(loop, Point(0.5, 0.5)).winding == 1);
  CHECK(winding_number(loop.reversed(), Point(0.5, 0.5)).winding == -1);
  CHECK(winding_number(loop, Point(5.0, 5.0)).winding == 0);
  CHECK(winding_number(loop, Point(0.5, 0.5)).residual < 1e-8);

  const Path open_path({Point(0.0, 0.0), Point(1.0, 0.0)});
  CHECK_THROWS_AS(winding_number(open_path, Point(0.5, 0.5)), Error);
  CHECK_THROWS_AS(winding_number(loop, Point(0.5, 0.0)), Error);
}

TEST_CASE("refinement failure is reported, not silently accepted") {
  // A deterministic value that changes with every node placement: panel
  // doubling can never make two levels agree.
  const Integrand noise = [](Point z) {
    std::uint64_t bits;
    const double x = z.real() + 3.0 * z.imag();
    std::memcpy(&bits, &x, sizeof bits);
    bits *= 0x9e3779b97f4a7c15ULL;
    return Complex(static_cast<double>(bits >> 40) / 16777216.0, 0.0);
  };
  const Path p({Point(0.0, 0.0), Point(1.0, 0.2)});
  CHECK_THROWS_AS(path_integral(noise, p, 1e-14), RefinementLimitError);
  try {
    path_integral(noise, p, 1e-14);
  } catch (const RefinementLimitError& e) {
    CHECK(std::isfinite(e.best.value.real()));
    CHECK(e.best.panels_used > 1);
  }
}

}  // TEST_SUITE
