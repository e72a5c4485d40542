#include "pathcalc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pathcalc/errors.hpp"
#include "pathcalc/poly.hpp"

namespace pathcalc {

namespace {

double dyadic(int k) { return std::ldexp(1.0, -k); }  // 2^{-k}

// Piecewise rule for the sawtooth arc function.  Tooth n runs between
// x = z_{n+1} and x = z_n (z_n = 2^{-2n}); the function interpolates from
// z_n down to z_{n+1} along the riser at x = z_n and is constant on the
// rest of the tooth.  A smooth ramp closes the arc from z_{N+1} to 0.
struct ZigzagRule {
  int N;
  bool printed;

  double z(int n) const { return dyadic(2 * n); }
  double xstar(int n) const { return dyadic(2 * n + 1); }
  double height(int n) const { return dyadic(n); }

  double riser_value(int n, double y) const {
    if (printed)
      return -3.0 * std::ldexp(1.0, n - 1) * y * y * y + 2.25 * y * y + z(n);
    const double t = std::clamp(y * std::ldexp(1.0, n), 0.0, 1.0);
    return z(n) + (z(n + 1) - z(n)) * (3.0 * t * t - 2.0 * t * t * t);
  }

  double riser_slope(int n, double y) const {  // d/dy of the riser value
    if (printed)
      return -9.0 * std::ldexp(1.0, n - 1) * y * y + 4.5 * y;
    const double s = std::ldexp(1.0, n);
    const double t = std::clamp(y * s, 0.0, 1.0);
    return (z(n + 1) - z(n)) * (6.0 * t - 6.0 * t * t) * s;
  }

  double tooth_const(int n) const {
    return printed ? riser_value(n, height(n)) : z(n + 1);
  }

  int riser_index(double x) const {
    for (int n = 1; n <= N; ++n)
      if (std::abs(x - z(n)) <= 1e-12 * z(n)) return n;
    return 0;
  }

  Complex value(Point p) const {
    const double x = p.real(), y = p.imag();
    if (const int n = riser_index(x)) return riser_value(n, y);
    for (int n = 1; n <= N; ++n)
      if (x >= z(n + 1) && x <= z(n)) return tooth_const(n);
    if (x < z(N + 1)) {
      const double t = std::clamp(x / z(N + 1), 0.0, 1.0);
      return tooth_const(N) * (3.0 * t * t - 2.0 * t * t * t);
    }
    return z(1);  // right of the first riser: clamp to the start value
  }

  Complex deriv(Point p) const {
    const double x = p.real(), y = p.imag();
    // riser direction is i, so g = (dH/dy) / i
    if (const int n = riser_index(x))
      return Complex(0.0, -1.0) * riser_slope(n, y);
    if (x < z(N + 1)) {
      const double t = std::clamp(x / z(N + 1), 0.0, 1.0);
      return tooth_const(N) * (6.0 * t - 6.0 * t * t) / z(N + 1);
    }
    return 0.0;
  }
};

}  // namespace

CorpusEntry build_zigzag(int N, double resolution, bool use_printed_cubic) {
  if (N < 2 || N > 12)
    throw DomainError("sawtooth depth must be between 2 and 12");
  if (!(resolution > 0.0)) throw DomainError("resolution must be positive");
  const ZigzagRule rule{N, use_printed_cubic};

  std::vector<Point> vertices;
  vertices.emplace_back(rule.z(1), 0.0);
  for (int n = 1; n <= N; ++n) {
    vertices.emplace_back(rule.z(n), rule.height(n));
    vertices.emplace_back(rule.xstar(n), rule.height(n));
    vertices.emplace_back(rule.xstar(n), 0.0);
    vertices.emplace_back(rule.z(n + 1), 0.0);
  }
  vertices.emplace_back(0.0, 0.0);
  Path arc(vertices);

  Shape shape = PolylineShape{vertices};
  PlaneSet set = discretize(shape, resolution);
  PathFamily family({arc});

  Fn f(use_printed_cubic ? "sawtooth-printed" : "sawtooth",
       [rule](Point p) { return rule.value(p); });
  Fn g("sawtooth-slope", [rule](Point p) { return rule.deriv(p); });

  std::vector<std::pair<Fn, Fn>> truncations;
  for (int k = 1; k <= N; ++k) {
    const double cut = rule.z(k);
    const Complex flat = rule.value(Point(cut, 0.0));
    truncations.emplace_back(
        Fn("sawtooth-trunc", [rule, cut, flat](Point p) {
          return p.real() > cut ? rule.value(p) : flat;
        }),
        Fn("sawtooth-trunc-slope", [rule, cut](Point p) {
          return p.real() > cut ? rule.deriv(p) : Complex(0.0);
        }));
  }

  std::vector<std::string> notes = {
      "difference-quotient-limit@origin=1",
      "designated-derivative@origin=0",
      "classical-derivative@origin=none",
      "sup-slope-on-tooth-n=(9/8)*2^-n",
      "truncations=smooth, Cauchy in the carrier norm",
  };
  if (use_printed_cubic)
    notes.push_back(
        "variant-note: this riser cubic reaches (7/4)*4^-n at the tooth top "
        "instead of the required z_{n+1}=(1/4)*4^-n; kept for comparison");

  return CorpusEntry{use_printed_cubic ? "zigzag_printed" : "zigzag",
                     std::move(shape),
                     std::move(set),
                     std::move(family),
                     std::move(f),
                     std::move(g),
                     std::nullopt,
                     std::move(truncations),
                     {},
                     {},
                     Point(0.0),
                     std::move(notes)};
}

CorpusEntry build_many_components(int N, double resolution) {
  if (N < 3 || N > 24)
    throw DomainError("component count parameter must be between 3 and 24");
  const double min_gap = dyadic(N);  // distance from the last segment to x=0
  if (!(resolution > 0.0) || resolution > min_gap / 4.0)
    throw DomainError("resolution too coarse to separate the components");

  UnionShape parts;
  parts.parts.push_back(SegmentShape{Point(0.0, 0.0), Point(0.0, dyadic(N))});
  for (int n = 1; n <= N; ++n)
    parts.parts.push_back(
        SegmentShape{Point(dyadic(n), 0.0), Point(dyadic(n), dyadic(n))});
  Shape shape = parts;
  PlaneSet set = discretize(shape, resolution);

  std::vector<Path> generators;
  generators.emplace_back(
      std::vector<Point>{Point(0.0, 0.0), Point(0.0, dyadic(N))});
  for (int n = 1; n <= N; ++n)
    generators.emplace_back(std::vector<Point>{
        Point(dyadic(n), 0.0), Point(dyadic(n), dyadic(n))});
  PathFamily family(std::move(generators));

  const auto level_of = [N](double x) -> double {
    if (std::abs(x) <= 1e-15) return 0.0;
    for (int n = 1; n <= N; ++n)
      if (std::abs(x - dyadic(n)) <= 1e-12 * dyadic(n)) return dyadic(n);
    return 0.0;
  };
  Fn f("segment-levels", [level_of](Point p) {
    return Complex(level_of(p.real()));
  });
  Fn g = Fn::constant(0.0);

  std::vector<std::pair<Fn, Fn>> truncations;
  for (int i = 1; i <= N; ++i) {
    const double cut = dyadic(i) * (1.0 - 1e-9);
    truncations.emplace_back(Fn("segment-levels-trunc",
                                [level_of, cut](Point p) {
                                  return p.real() >= cut
                                             ? Complex(level_of(p.real()))
                                             : Complex(0.0);
                                }),
                             Fn::constant(0.0));
  }

  std::vector<std::string> notes = {
      "components=" + std::to_string(N + 1),
      "difference-quotient-limit@origin=1",
      "designated-derivative@origin=0",
      "truncation-derivatives=0 (locally constant)",
      "truncations=Cauchy in the carrier norm",
  };

  return CorpusEntry{"many_components",
                     std::move(shape),
                     std::move(set),
                     std::move(family),
                     std::move(f),
                     std::move(g),
                     std::nullopt,
                     std::move(truncations),
                     {},
                     {},
                     Point(0.0),
                     std::move(notes)};
}

PathFamily grid_chord_family(const PlaneSet& X, bool verticals,
                             bool horizontals) {
  const std::vector<Point>& pts = X.samples();
  const double gap_cap = 1.5 * X.resolution();
  std::vector<Path> chords;

  const auto sweep = [&](const std::vector<std::size_t>& order, bool vertical) {
    std::size_t run_start = 0;
    const auto key = [&](std::size_t i) {
      return vertical ? pts[order[i]].real() : pts[order[i]].imag();
    };
    const auto pos = [&](std::size_t i) {
      return vertical ? pts[order[i]].imag() : pts[order[i]].real();
    };
    const auto flush = [&](std::size_t begin, std::size_t end) {
      if (end - begin < 2) return;
      const Point a = pts[order[begin]];
      const Point b = pts[order[end - 1]];
      if (X.segment_in_set(a, b)) chords.emplace_back(std::vector<Point>{a, b});
    };
    for (std::size_t i = 1; i <= order.size(); ++i) {
      const bool brk = i == order.size() || key(i) != key(i - 1) ||
                       pos(i) - pos(i - 1) > gap_cap;
      if (brk) {
        flush(run_start, i);
        run_start = i;
      }
    }
  };

  if (verticals) {
    // samples are already sorted by (re, im)
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    sweep(order, true);
  }
  if (horizontals) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (pts[a].imag() != pts[b].imag()) return pts[a].imag() < pts[b].imag();
      return pts[a].real() < pts[b].real();
    });
    sweep(order, false);
  }
  if (chords.empty())
    throw DomainError("set has no grid chords at this resolution");
  return PathFamily(std::move(chords), /*piecewise=*/true);
}

CorpusEntry build_square_vertical(double resolution) {
  Shape shape = Rect{0.0, 0.0, 1.0, 1.0};
  PlaneSet set = discretize(shape, resolution);
  PathFamily family = grid_chord_family(set, true, false);
  return CorpusEntry{"square_vertical",
                     std::move(shape),
                     std::move(set),
                     std::move(family),
                     Fn::re_part(),
                     Fn::constant(0.0),
                     std::nullopt,
                     {},
                     {},
                     {},
                     Point(0.5, 0.5),
                     {"carrier-derivative=0 (vertical family)",
                      "classical-derivative=none (horizontal quotient 1)",
                      "carrier-closure=full set"}};
}

CorpusEntry build_standard(const std::string& name, double resolution) {
  if (!(resolution > 0.0)) throw DomainError("resolution must be positive");
  if (name == "square" || name == "segment") {
    Shape shape = name == "square"
                      ? Shape(Rect{0.0, 0.0, 1.0, 1.0})
                      : Shape(SegmentShape{Point(0.0), Point(1.0)});
    PlaneSet set = discretize(shape, resolution);
    PathFamily family =
        name == "square"
            ? grid_chord_family(set)
            : PathFamily({Path({Point(0.0), Point(1.0)})});
    DerivativeStack stack = Polynomial({0.0, 0.0, 1.0}).stack(33);
    Fn f = stack[0];
    Fn g = stack[1];
    return CorpusEntry{name,
                       std::move(shape),
                       std::move(set),
                       std::move(family),
                       std::move(f),
                       std::move(g),
                       std::move(stack),
                       {},
                       {},
                       {},
                       Point(0.5, 0.0),
                       {"uniform-regularity=1 (convex)",
                        "classical-derivative=everywhere"}};
  }
  if (name == "disk") {
    Shape shape = Disk{Point(0.0), 1.0};
    PlaneSet set = discretize(shape, resolution);
    PathFamily family = grid_chord_family(set);
    DerivativeStack stack = exp_stack(33);
    Fn f = stack[0];
    Fn g = stack[1];
    return CorpusEntry{"disk",
                       std::move(shape),
                       std::move(set),
                       std::move(family),
                       std::move(f),
                       std::move(g),
                       std::move(stack),
                       {},
                       {},
                       {},
                       Point(0.0),
                       {"uniform-regularity=1 (convex)",
                        "radially-self-absorbing=yes"}};
  }
  if (name == "square_annulus") {
    UnionShape ring;
    ring.parts = {Rect{0.0, 0.0, 3.0, 1.0}, Rect{0.0, 2.0, 3.0, 3.0},
                  Rect{0.0, 1.0, 1.0, 2.0}, Rect{2.0, 1.0, 3.0, 2.0}};
    Shape shape = ring;
    PlaneSet set = discretize(shape, resolution);
    PathFamily family = grid_chord_family(set);
    const Point a(1.5, 1.5);
    DerivativeStack stack = inv_shift_stack(a, 33);
    Fn f = stack[0];
    Fn g = stack[1];
    Path loop({Point(0.5, 0.5), Point(2.5, 0.5), Point(2.5, 2.5),
               Point(0.5, 2.5), Point(0.5, 0.5)});
    return CorpusEntry{"square_annulus",
                       std::move(shape),
                       std::move(set),
                       std::move(family),
                       std::move(f),
                       std::move(g),
                       std::move(stack),
                       {},
                       {loop},
                       {a},
                       Point(0.5, 0.5),
                       {"radially-self-absorbing=no (hole scales away)",
                        "loop-winding@hole-center=1",
                        "derivative-loop-integrals=0"}};
  }
  if (name == "star") {
    UnionShape star;
    star.parts = {Disk{Point(0.0), 0.55}, Rect{-1.0, -0.15, 1.0, 0.15},
                  Rect{-0.15, -1.0, 0.15, 1.0}};
    Shape shape = star;
    PlaneSet set = discretize(shape, resolution);
    PathFamily family = grid_chord_family(set);
    DerivativeStack stack = exp_stack(33);
    Fn f = stack[0];
    Fn g = stack[1];
    return CorpusEntry{"star",
                       std::move(shape),
                       std::move(set),
                       std::move(family),
                       std::move(f),
                       std::move(g),
                       std::move(stack),
                       {},
                       {},
                       {},
                       Point(0.0),
                       {"radially-self-absorbing=yes (0 interior, spikes)"}};
  }
  throw DomainError("unknown corpus shape: " + name);
}

std::vector<std::string> corpus_names() {
  return {"zigzag",          "zigzag_printed", "many_components",
          "square_vertical", "square",         "disk",
          "segment",         "square_annulus", "star"};
}

CorpusEntry build_corpus(const std::string& name, int N, double resolution) {
  if (name == "zigzag") return build_zigzag(N, resolution);
  if (name == "zigzag_printed") return build_zigzag(N, resolution, true);
  if (name == "many_components") return build_many_components(N, resolution);
  if (name == "square_vertical") return build_square_vertical(resolution);
  return build_standard(name, resolution);
}

}  // namespace pathcalc
