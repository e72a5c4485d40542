#include "pathcalc/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "pathcalc/errors.hpp"
#include "pathcalc/integrate.hpp"

namespace pathcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Least squares by modified Gram-Schmidt with re-orthogonalization; cols
// are consumed.  Returns the coefficient vector (one entry per column).
std::vector<Complex> lstsq(std::vector<std::vector<Complex>> cols,
                           const std::vector<Complex>& y) {
  const std::size_t k = cols.size();
  const std::size_t n = y.size();
  std::vector<std::vector<Complex>> r(k, std::vector<Complex>(k, 0.0));
  const auto dot = [n](const std::vector<Complex>& a,
                       const std::vector<Complex>& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
    return s;
  };
  for (std::size_t j = 0; j < k; ++j) {
    double before = std::sqrt(std::abs(dot(cols[j], cols[j])));
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const Complex c = dot(cols[i], cols[j]);
        r[i][j] += c;
        for (std::size_t t = 0; t < n; ++t) cols[j][t] -= c * cols[i][t];
      }
    }
    const double norm = std::sqrt(std::abs(dot(cols[j], cols[j])));
    if (norm <= 1e-14 * std::max(before, 1.0))
      throw DomainError("fit basis is numerically rank deficient");
    r[j][j] = norm;
    for (std::size_t t = 0; t < n; ++t) cols[j][t] /= norm;
  }
  std::vector<Complex> beta(k);
  for (std::size_t j = 0; j < k; ++j) beta[j] = dot(cols[j], y);
  // back substitution for R a = beta
  std::vector<Complex> a(k);
  for (std::size_t j = k; j-- > 0;) {
    Complex s = beta[j];
    for (std::size_t i = j + 1; i < k; ++i) s -= r[j][i] * a[i];
    a[j] = s / r[j][j];
  }
  return a;
}

struct Chart {
  Point center;
  double scale;
};

Chart chart_of(const std::vector<Point>& samples) {
  double x0 = kInf, y0 = kInf, x1 = -kInf, y1 = -kInf;
  for (Point p : samples) {
    x0 = std::min(x0, p.real());
    y0 = std::min(y0, p.imag());
    x1 = std::max(x1, p.real());
    y1 = std::max(y1, p.imag());
  }
  const Point c{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
  double s = 0.0;
  for (Point p : samples) s = std::max(s, std::abs(p - c));
  return {c, s > 0.0 ? s : 1.0};
}

std::vector<std::vector<Complex>> monomial_columns(
    const std::vector<Point>& samples, const Chart& ch, int degree) {
  std::vector<std::vector<Complex>> cols(
      static_cast<std::size_t>(degree) + 1,
      std::vector<Complex>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Complex w = (samples[i] - ch.center) / ch.scale;
    Complex pw = 1.0;
    for (int d = 0; d <= degree; ++d) {
      cols[static_cast<std::size_t>(d)][i] = pw;
      pw *= w;
    }
  }
  return cols;
}

}  // namespace

PolyFit poly_fit(const Fn& g, const std::vector<Point>& samples, int degree) {
  if (degree < 0) throw DomainError("fit degree must be nonnegative");
  if (static_cast<std::size_t>(degree) + 1 > samples.size())
    throw DomainError("fit is underdetermined: degree + 1 exceeds sample count");
  const Chart ch = chart_of(samples);
  std::vector<Complex> y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) y[i] = g(samples[i]);
  const std::vector<Complex> a =
      lstsq(monomial_columns(samples, ch, degree), y);

  PolyFit out;
  out.p = Polynomial(a, ch.center, ch.scale);
  out.degree = degree;
  double sq = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double r = std::abs(out.p(samples[i]) - y[i]);
    out.sup_error = std::max(out.sup_error, r);
    sq += r * r;
  }
  out.l2_error = std::sqrt(sq / static_cast<double>(samples.size()));
  return out;
}

PolyFit poly_fit(const Fn& g, const PlaneSet& X, int degree) {
  return poly_fit(g, X.samples(), degree);
}

namespace {

// Smallest Euclidean gap between samples of distinct components; +inf for
// connected sets.  Bounding boxes prune far pairs.
double min_component_gap(const PlaneSet& X, const Components& comp) {
  double gap = kInf;
  const auto bbox_gap = [](const std::array<double, 4>& a,
                           const std::array<double, 4>& b) {
    const double dx = std::max({a[0] - b[2], b[0] - a[2], 0.0});
    const double dy = std::max({a[1] - b[3], b[1] - a[3], 0.0});
    return std::hypot(dx, dy);
  };
  for (int i = 0; i < comp.count; ++i) {
    for (int j = i + 1; j < comp.count; ++j) {
      if (bbox_gap(comp.bbox[static_cast<std::size_t>(i)],
                   comp.bbox[static_cast<std::size_t>(j)]) >= gap)
        continue;
      for (int a : comp.members[static_cast<std::size_t>(i)])
        for (int b : comp.members[static_cast<std::size_t>(j)])
          gap = std::min(gap,
                         std::abs(X.samples()[static_cast<std::size_t>(a)] -
                                  X.samples()[static_cast<std::size_t>(b)]));
    }
  }
  return gap;
}

}  // namespace

ClopenCover clopen_cover(const PlaneSet& X, double delta) {
  if (!(delta > 2.0 * X.resolution()))
    throw DomainError("cover scale must exceed twice the sampling resolution");
  const Components comp = components(X);
  ClopenCover cover;
  cover.delta = delta;
  cover.min_gap = min_component_gap(X, comp);
  if (cover.min_gap <= delta)
    throw DomainError(
        "cover scale too coarse: two components are within delta");
  for (int c = 0; c < comp.count; ++c) {
    ClopenPiece piece;
    piece.component_samples = comp.members[static_cast<std::size_t>(c)];
    piece.neighborhood = piece.component_samples;
    // samples are sorted, so the least index is the lexicographic least
    const int least = *std::min_element(piece.component_samples.begin(),
                                        piece.component_samples.end());
    piece.anchor = X.samples()[static_cast<std::size_t>(least)];
    cover.pieces.push_back(std::move(piece));
  }
  return cover;
}

Fn idempotent_correct(const Fn& F_anti, const Fn& f, const PlaneSet& X,
                      const ClopenCover& cover) {
  auto labels = std::make_shared<std::vector<int>>(X.size(), -1);
  auto shifts = std::make_shared<std::vector<Complex>>();
  for (std::size_t pi = 0; pi < cover.pieces.size(); ++pi) {
    const ClopenPiece& piece = cover.pieces[pi];
    for (int s : piece.neighborhood)
      (*labels)[static_cast<std::size_t>(s)] = static_cast<int>(pi);
    shifts->push_back(f(piece.anchor) - F_anti(piece.anchor));
  }
  for (int l : *labels)
    if (l < 0) throw DomainError("cover does not reach every sample");
  auto Xp = std::make_shared<PlaneSet>(X);
  return Fn("idempotent-corrected",
            [F_anti, Xp, labels, shifts](Point z) {
              const int piece =
                  (*labels)[static_cast<std::size_t>(Xp->nearest_sample(z))];
              return F_anti(z) + (*shifts)[static_cast<std::size_t>(piece)];
            });
}

PipelineResult approx_pipeline(const Fn& f, const CarrierFunction& g,
                               const PlaneSet& X, const PathFamily& F,
                               double eps, int degree_cap) {
  if (!(eps > 0.0)) throw DomainError("tolerance must be positive");
  const double L = F.max_length().value_or(F.longest());
  PipelineResult out;
  out.tau = std::min(eps / 3.0, eps / (3.0 * L));

  std::vector<Point> carrier;
  std::vector<Complex> gvals;
  carrier.reserve(g.samples().size());
  for (const CarrierSample& s : g.samples()) {
    carrier.push_back(s.at);
    gvals.push_back(s.value);
  }
  const Fn g_fn = g.to_fn();

  // Degree escalation until the fit undercuts tau or the ladder ends.
  const int ladder[] = {0, 1, 2, 4, 6, 8, 12, 16, 24, 32, 48, 64};
  PolyFit best;
  bool have_fit = false;
  for (int d : ladder) {
    if (d > degree_cap) break;
    if (static_cast<std::size_t>(d) + 1 > carrier.size()) break;
    const PolyFit fit = poly_fit(g_fn, carrier, d);
    out.ladder.emplace_back(d, fit.sup_error);
    if (!have_fit || fit.sup_error < best.sup_error) {
      best = fit;
      have_fit = true;
    }
    if (best.sup_error < out.tau) break;
  }
  if (!have_fit) throw DomainError("no admissible fit degree for the carrier");
  out.p = best.p;
  out.degree = best.degree;
  // Exact sup of the fit against the known carrier values.
  for (std::size_t i = 0; i < carrier.size(); ++i)
    out.fit_error =
        std::max(out.fit_error, std::abs(out.p(carrier[i]) - gvals[i]));
  const bool fit_ok = out.fit_error < out.tau;
  if (!fit_ok) out.note = "fit tolerance not met at the degree cap";

  const Point z0 = X.samples().front();
  out.F = out.p.antiderivative(z0, f(z0));
  const Fn F_fn = out.F.to_fn();

  // Modulus-of-continuity scan for u = F - f over the set samples: delta
  // is the closest distance at which u still jumps by eps/3.
  std::vector<Complex> u(X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    u[i] = F_fn(X.samples()[i]) - f(X.samples()[i]);
  double delta_bound = kInf;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j)
      if (std::abs(u[i] - u[j]) >= eps / 3.0)
        delta_bound =
            std::min(delta_bound, std::abs(X.samples()[i] - X.samples()[j]));

  const Components comp = components(X);
  const double min_gap = min_component_gap(X, comp);
  double delta = 0.999 * std::min(delta_bound, min_gap);
  if (!std::isfinite(delta)) {
    const auto bb = shape_bbox(X.shape());
    delta = std::hypot(bb[2] - bb[0], bb[3] - bb[1]) + 1.0;
  }
  if (delta <= 2.0 * X.resolution()) {
    out.note = "continuity scale collapsed below the sampling resolution";
    delta = 2.0 * X.resolution() * (1.0 + 1e-6);
  }
  out.delta = delta;

  try {
    const ClopenCover cover = clopen_cover(X, delta);
    out.pieces = cover.pieces.size();
    out.h = idempotent_correct(F_fn, f, X, cover);
  } catch (const DomainError& e) {
    out.note = e.what();
    out.h = F_fn;
    out.pieces = 0;
  }

  double sup_hf = 0.0;
  for (Point z : X.samples())
    sup_hf = std::max(sup_hf, std::abs(out.h(z) - f(z)));
  out.achieved = sup_hf + out.fit_error;
  out.success = fit_ok && out.achieved < eps && out.pieces > 0;
  return out;
}

Complex RationalFn::operator()(Point z) const {
  Complex v = poly(z);
  for (const PoleTerm& t : pole_terms) {
    const Complex d = z - t.pole;
    Complex invp = 1.0;
    for (std::size_t m = 0; m < t.coeffs.size(); ++m) {
      invp /= d;
      v += t.coeffs[m] * invp;
    }
  }
  return v;
}

double RationalFn::sup_abs(const std::vector<Point>& samples) const {
  double s = 0.0;
  for (Point p : samples) s = std::max(s, std::abs((*this)(p)));
  return s;
}

Fn RationalFn::to_fn(std::string descriptor) const {
  RationalFn copy = *this;
  return Fn(std::move(descriptor),
            [copy](Point z) { return copy(z); });
}

RationalFitReport rational_fit_with_residue_correction(
    const Fn& g, const PlaneSet& X, const std::vector<Point>& poles,
    const std::vector<Path>& loops, int degree, int pole_order) {
  if (degree < 0) throw DomainError("fit degree must be nonnegative");
  if (pole_order < 1) throw DomainError("pole order must be at least 1");
  if (loops.size() != poles.size())
    throw DomainError("one verification loop is required per pole");
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const int near = X.nearest_sample(poles[j]);
    if (std::abs(X.samples()[static_cast<std::size_t>(near)] - poles[j]) <=
        X.resolution())
      throw DomainError("pole lies on or next to the set");
    const WindingResult w = winding_number(loops[j], poles[j]);
    if (w.winding == 0)
      throw DomainError("verification loop does not wind around its pole");
  }

  const std::vector<Point>& samples = X.samples();
  const std::size_t cols_needed = static_cast<std::size_t>(degree) + 1 +
                                  poles.size() * static_cast<std::size_t>(pole_order);
  if (cols_needed > samples.size())
    throw DomainError("fit is underdetermined: basis exceeds sample count");

  const Chart ch = chart_of(samples);
  std::vector<std::vector<Complex>> cols =
      monomial_columns(samples, ch, degree);
  for (const Point a : poles) {
    std::vector<std::vector<Complex>> pcols(
        static_cast<std::size_t>(pole_order),
        std::vector<Complex>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Complex d = samples[i] - a;
      Complex invp = 1.0;
      for (int m = 0; m < pole_order; ++m) {
        invp /= d;
        pcols[static_cast<std::size_t>(m)][i] = invp;
      }
    }
    for (auto& c : pcols) cols.push_back(std::move(c));
  }

  std::vector<Complex> y(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) y[i] = g(samples[i]);
  const std::vector<Complex> a = lstsq(std::move(cols), y);

  RationalFitReport rep;
  rep.r.poly = Polynomial(
      std::vector<Complex>(a.begin(), a.begin() + degree + 1), ch.center,
      ch.scale);
  std::size_t at = static_cast<std::size_t>(degree) + 1;
  for (const Point p : poles) {
    PoleTerm t;
    t.pole = p;
    t.coeffs.assign(a.begin() + static_cast<std::ptrdiff_t>(at),
                    a.begin() + static_cast<std::ptrdiff_t>(at) +
                        pole_order);
    at += static_cast<std::size_t>(pole_order);
    rep.r.pole_terms.push_back(std::move(t));
  }

  for (std::size_t i = 0; i < samples.size(); ++i)
    rep.sup_error_before =
        std::max(rep.sup_error_before, std::abs(rep.r(samples[i]) - y[i]));

  for (PoleTerm& t : rep.r.pole_terms) {
    rep.residues_removed.push_back(t.coeffs[0]);
    t.coeffs[0] = 0.0;
  }
  for (std::size_t i = 0; i < samples.size(); ++i)
    rep.sup_error_after =
        std::max(rep.sup_error_after, std::abs(rep.r(samples[i]) - y[i]));
  return rep;
}

RationalFn rational_antiderivative(const RationalFn& r, Point z0, Complex v0) {
  for (const PoleTerm& t : r.pole_terms)
    if (t.coeffs[0] != Complex(0.0))
      throw DomainError(
          "no single-valued antiderivative: simple-pole coefficient present");
  RationalFn out;
  out.poly = r.poly.antiderivative(z0, 0.0);
  for (const PoleTerm& t : r.pole_terms) {
    PoleTerm at;
    at.pole = t.pole;
    if (t.coeffs.size() > 1) {
      at.coeffs.assign(t.coeffs.size() - 1, 0.0);
      // (z-a)^{-m} integrates to (z-a)^{1-m} / (1-m) for m >= 2
      for (std::size_t m = 2; m <= t.coeffs.size(); ++m)
        at.coeffs[m - 2] =
            t.coeffs[m - 1] / (1.0 - static_cast<double>(m));
    }
    if (!at.coeffs.empty()) out.pole_terms.push_back(std::move(at));
  }
  // absolute constant: a shift of the chart constant term shifts the value
  const Complex adjust = v0 - out(z0);
  std::vector<Complex> c = out.poly.coeffs();
  c[0] += adjust;
  out.poly = Polynomial(c, out.poly.center(), out.poly.scale());
  return out;
}

Fn dilate(const Fn& f, int n) {
  if (n < 1) throw DomainError("dilation index must be positive");
  const double ratio = static_cast<double>(n) / (n + 1.0);
  return Fn(f.descriptor() + "-dilated",
            [f, ratio](Point z) { return f(ratio * z); });
}

DerivativeStack dilate(const DerivativeStack& stack, int n) {
  if (n < 1) throw DomainError("dilation index must be positive");
  const double ratio = static_cast<double>(n) / (n + 1.0);
  DerivativeStack out;
  double factor = 1.0;
  for (std::size_t k = 0; k < stack.depth(); ++k) {
    const Fn level = stack[k];
    const double fk = factor;
    out.levels.push_back(Fn(level.descriptor() + "-dilated",
                            [level, ratio, fk](Point z) {
                              return fk * level(ratio * z);
                            }));
    factor *= ratio;
  }
  return out;
}

DerivativeStack stack_difference(const DerivativeStack& a,
                                 const DerivativeStack& b) {
  if (a.depth() != b.depth())
    throw DomainError("stack difference needs equal depths");
  DerivativeStack out;
  for (std::size_t k = 0; k < a.depth(); ++k)
    out.levels.push_back(a[k] - b[k]);
  return out;
}

bool radially_self_absorbing(const PlaneSet& X, int n) {
  if (n < 1) throw DomainError("dilation index must be positive");
  const double ratio = static_cast<double>(n) / (n + 1.0);
  const double h = X.resolution();
  for (Point z : X.samples()) {
    const Point c = ratio * z;
    if (!X.contains(c)) return false;
    for (int k = 0; k < 16; ++k) {
      const double th = 2.0 * M_PI * k / 16.0;
      if (!X.contains(c + h * Complex(std::cos(th), std::sin(th))))
        return false;
    }
  }
  return true;
}

Fn dilation_approx(const Fn& f, const PlaneSet& X, int n) {
  if (!radially_self_absorbing(X, n))
    throw DomainError(
        "set fails the radial interiority check for this dilation");
  return dilate(f, n);
}

}  // namespace pathcalc
