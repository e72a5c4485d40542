#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathcalc/fn.hpp"
#include "pathcalc/geometry.hpp"

namespace pathcalc {

/// A named example: a shape with its discretization, a path family, the
/// function of interest with its designated carrier derivative, optional
/// truncation sequences and verification loops, and descriptors of the
/// phenomena the example exhibits.
struct CorpusEntry {
  std::string name;
  Shape shape;
  PlaneSet set;
  PathFamily family;
  Fn f;
  Fn g;  ///< designated carrier derivative of f
  std::optional<DerivativeStack> stack;  ///< closed-form levels when known
  std::vector<std::pair<Fn, Fn>> truncations;  ///< (f_i, g_i) sequences
  std::vector<Path> loops;   ///< closed verification loops (around holes)
  std::vector<Point> poles;  ///< hole centers the loops wind around
  Point bad_point = 0.0;     ///< where the classical derivative misbehaves
  std::vector<std::string> notes;  ///< expected-phenomenon descriptors
};

/// The rectifiable-arc example: N sawteeth between z_n = 2^{-2n} and the
/// origin, carrying the function that is smooth on every tooth yet keeps
/// difference quotient 1 at 0 against a designated derivative that
/// vanishes there.  When use_printed_cubic is set, the riser cubic is the
/// variant with flipped cubic/quadratic signs, kept for comparison; it
/// breaks the endpoint conditions (see the regression note in `notes`).
CorpusEntry build_zigzag(int N, double resolution,
                         bool use_printed_cubic = false);

/// N shrinking vertical segments accumulating at a segment on the
/// imaginary axis, with the locally constant function whose truncations
/// are Cauchy while the limit keeps difference quotient 1 at 0.
CorpusEntry build_many_components(int N, double resolution);

/// The unit square with the family of vertical segments and f(x+iy) = x:
/// carrier derivative 0, no classical derivative anywhere.
CorpusEntry build_square_vertical(double resolution);

/// Canonical shapes with full grid-chord families:
/// "square", "disk", "segment", "square_annulus", "star".
CorpusEntry build_standard(const std::string& name, double resolution);

std::vector<std::string> corpus_names();

/// Dispatcher: standard names plus "zigzag", "zigzag_printed",
/// "many_components", "square_vertical" (N used where applicable).
CorpusEntry build_corpus(const std::string& name, int N, double resolution);

/// The family of maximal axis-aligned chords through the sample grid.
PathFamily grid_chord_family(const PlaneSet& X, bool verticals = true,
                             bool horizontals = true);

}  // namespace pathcalc
