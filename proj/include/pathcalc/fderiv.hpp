#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pathcalc/fn.hpp"
#include "pathcalc/geometry.hpp"
#include "pathcalc/integrate.hpp"

namespace pathcalc {

/// Outcome of checking that g integrates to the increments of f along a
/// path family.
struct FDerivReport {
  bool verified = false;
  double tol = 0.0;
  double max_defect = 0.0;        ///< worst absolute defect
  double max_normalized = 0.0;    ///< defect / (1 + |path| * sup|g| on path)
  std::size_t paths_checked = 0;
  std::optional<Path> worst_path;
  std::uint64_t seed = 0;
};

/// Checks the fundamental-theorem identity for (f, g) on every generator
/// and on `probes_per_path` random subpaths of each (seeded, reproducible).
/// Defects are normalized by 1 + |path| * sup|g| before comparing to tol.
FDerivReport verify_fderivative(const Fn& f, const Fn& g, const PathFamily& F,
                                double tol = 1e-8, int probes_per_path = 8,
                                std::uint64_t seed = 0x5eed);

/// Chord difference quotients of f along each generator at arc-length step
/// h: interior points use the symmetric quotient across [s-h, s+h],
/// endpoints the one-sided one.  Estimates from different generators that
/// land in the same h/2 cell are averaged and their spread recorded.
/// A chord shorter than 1e-3 * h signals a near-closed probe and is an
/// error.
CarrierFunction estimate_fderivative(const Fn& f, const PathFamily& F,
                                     double h);

/// Constructive bisection: k slightly above |p| / |chord(p)| makes the
/// length-vs-chord bound |q| < k |chord(q)| hold for p itself, and at each
/// halving at least one half keeps it.  Returns k and the nested chain
/// p = q_1, q_2, ..., q_levels with |q_{i+1}| = |q_i| / 2.
std::pair<double, std::vector<Path>> bisect_subpaths(const Path& p,
                                                     int levels);

struct SeparationWitness {
  Path path;       ///< subpath where the integrals of g and h must differ
  double defect;   ///< |integral of (g - h) over path|
  Point center;    ///< carrier point where |g - h| peaks
  double radius;   ///< ball around center on which |g - h| >= delta / 2
};

/// Looks for a short family subpath certifying that g and h cannot both be
/// derivatives of one function: if sup |g - h| >= delta on the carrier,
/// some bisection subpath q inside the ball satisfies
/// |integral (g - h)| > (delta/4) |chord(q)| > 0.  Returns nothing when the
/// carrier gap stays below delta.
std::optional<SeparationWitness> separation_witness(
    const Fn& g, const Fn& h, const PathFamily& F, double delta,
    double carrier_spacing);

/// Classical difference-quotient scan at a: for each radius r the largest
/// |(f(z) - f(a)) / (z - a) - g(a)| over set samples with 0 < |z-a| <= r.
/// Radii must be positive; the smallest must capture at least one sample.
std::vector<double> classical_limit_check(const Fn& f, const Fn& g,
                                          const PlaneSet& X, Point a,
                                          const std::vector<double>& radii);

}  // namespace pathcalc
