#include "pathcalc/fderiv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace pathcalc {

namespace {

// Sup of |g| over a modest sample of the path (vertices plus a fixed grid
// along the arc) -- enough to scale defects, not a certified bound.
double sup_on_path(const Fn& g, const Path& p) {
  double m = 0.0;
  for (const Point& v : p.vertices()) m = std::max(m, std::abs(g(v)));
  const int n = 32;
  for (int i = 0; i <= n; ++i)
    m = std::max(m, std::abs(g(p.point_at(p.length() * i / n))));
  return m;
}

}  // namespace

FDerivReport verify_fderivative(const Fn& f, const Fn& g, const PathFamily& F,
                                double tol, int probes_per_path,
                                std::uint64_t seed) {
  if (probes_per_path < 0) throw DomainError("negative probe count");
  FDerivReport rep;
  rep.tol = tol;
  rep.seed = seed;
  const double quad_tol = std::min(tol / 10.0, 1e-10);

  for (std::size_t gi = 0; gi < F.generators().size(); ++gi) {
    const Path& gen = F.generators()[gi];
    // Probe list: the full generator, then seeded random subpaths.
    std::vector<Path> probes;
    probes.push_back(gen);
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (gi + 1)));
    std::uniform_real_distribution<double> uni(0.0, gen.length());
    for (int k = 0; k < probes_per_path; ++k) {
      double s0 = 0.0, s1 = 0.0;
      for (int attempt = 0; attempt < 64; ++attempt) {
        const double u = uni(rng);
        const double v = uni(rng);
        s0 = std::min(u, v);
        s1 = std::max(u, v);
        if (s1 - s0 > 1e-9 * gen.length()) break;
        s0 = 0.0;
        s1 = gen.length();
      }
      probes.push_back(gen.subpath(s0, s1));
    }
    for (const Path& q : probes) {
      const double defect =
          ftc_defect(f, [&g](Point z) { return g(z); }, q, quad_tol);
      const double normalized =
          defect / (1.0 + q.length() * sup_on_path(g, q));
      ++rep.paths_checked;
      if (normalized > rep.max_normalized) {
        rep.max_normalized = normalized;
        rep.worst_path = q;
      }
      rep.max_defect = std::max(rep.max_defect, defect);
    }
  }
  rep.verified = rep.max_normalized < tol;
  return rep;
}

CarrierFunction estimate_fderivative(const Fn& f, const PathFamily& F,
                                     double h) {
  if (!(h > 0.0)) throw DomainError("estimate step must be positive");
  struct Raw {
    Point at;
    Complex value;
  };
  std::vector<Raw> raw;
  for (const Path& gen : F.generators()) {
    const double L = gen.length();
    const auto n = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(L / h)));
    const double step = L / static_cast<double>(n);
    for (std::size_t k = 0; k <= n; ++k) {
      const double s = step * static_cast<double>(k);
      const double lo = (k == 0) ? 0.0 : s - step;
      const double hi = (k == n) ? L : s + step;
      const Point za = gen.point_at(lo);
      const Point zb = gen.point_at(hi);
      const Complex chord = zb - za;
      if (std::abs(chord) < 1e-3 * step) {
        std::ostringstream msg;
        msg << "difference quotient ill-conditioned: chord " << std::abs(chord)
            << " across arc step " << (hi - lo) << " near (" << za.real()
            << ", " << za.imag() << ")";
        throw DomainError(msg.str());
      }
      raw.push_back({gen.point_at(s), (f(zb) - f(za)) / chord});
    }
  }

  // Merge estimates landing in the same h/2 cell; record their spread.
  const double cell = h / 2.0;
  std::map<std::pair<long, long>, std::vector<Raw>> cells;
  for (const Raw& r : raw) {
    cells[{static_cast<long>(std::floor(r.at.real() / cell)),
           static_cast<long>(std::floor(r.at.imag() / cell))}]
        .push_back(r);
  }
  std::vector<CarrierSample> merged;
  for (const auto& [key, group] : cells) {
    (void)key;
    Complex mean = 0.0;
    Point at = 0.0;
    for (const Raw& r : group) {
      mean += r.value;
      at += r.at;
    }
    mean /= static_cast<double>(group.size());
    at /= static_cast<double>(group.size());
    double spread = 0.0;
    for (const Raw& r : group)
      spread = std::max(spread, std::abs(r.value - mean));
    merged.push_back({at, mean, spread});
  }
  return CarrierFunction(std::move(merged));
}

std::pair<double, std::vector<Path>> bisect_subpaths(const Path& p,
                                                     int levels) {
  if (levels < 1) throw DomainError("bisection needs at least one level");
  const double chord = std::abs(p.back() - p.front());
  if (chord <= 0.0)
    throw DomainError("bisection needs a path with distinct endpoints");
  const double k = (1.0 + 1e-9) * p.length() / chord;

  std::vector<Path> chain;
  chain.push_back(p);
  for (int lvl = 1; lvl < levels; ++lvl) {
    const Path& cur = chain.back();
    const double mid = cur.length() / 2.0;
    const Path a = cur.subpath(0.0, mid);
    const Path b = cur.subpath(mid, cur.length());
    const auto fits = [k](const Path& q) {
      return q.length() < k * std::abs(q.back() - q.front());
    };
    if (fits(a)) {
      chain.push_back(a);
    } else if (fits(b)) {
      chain.push_back(b);
    } else {
      // Impossible when the current level satisfies the bound:
      // |cur| = |a| + |b| >= k(|chord a| + |chord b|) >= k |chord cur|
      // would contradict it.
      throw Error("bisection dichotomy failed (numerical degeneracy)");
    }
  }
  return {k, chain};
}

std::optional<SeparationWitness> separation_witness(const Fn& g, const Fn& h,
                                                    const PathFamily& F,
                                                    double delta,
                                                    double carrier_spacing) {
  if (!(delta > 0.0)) throw DomainError("separation threshold must be positive");
  const std::vector<Point> carrier = F.carrier_points(carrier_spacing);
  const auto gap = [&](Point z) { return std::abs(g(z) - h(z)); };

  // Peak of |g - h| on the carrier.
  Point z0 = carrier.front();
  double peak = -1.0;
  for (const Point& z : carrier) {
    const double d = gap(z);
    if (d > peak) {
      peak = d;
      z0 = z;
    }
  }
  if (peak < delta) return std::nullopt;

  // Radius around z0 on which the carrier gap stays >= delta / 2.
  std::vector<double> dists;
  double radius = std::numeric_limits<double>::max();
  for (const Point& z : carrier) {
    if (gap(z) < delta / 2.0)
      radius = std::min(radius, std::abs(z - z0));
  }
  if (radius == std::numeric_limits<double>::max()) {
    double diam = 0.0;
    for (const Point& z : carrier) diam = std::max(diam, std::abs(z - z0));
    radius = std::max(diam, carrier_spacing);
  }

  // Longest generator window inside the ball, by arc-length scan.
  std::optional<Path> window;
  double best_len = 0.0;
  for (const Path& gen : F.generators()) {
    const double L = gen.length();
    const auto n = std::max<std::size_t>(
        8, static_cast<std::size_t>(std::ceil(L / (carrier_spacing / 2.0))));
    double run_start = -1.0;
    for (std::size_t k = 0; k <= n + 1; ++k) {
      const double s = L * static_cast<double>(std::min(k, n)) /
                       static_cast<double>(n);
      const bool inside =
          k <= n && std::abs(gen.point_at(s) - z0) <= radius;
      if (inside && run_start < 0.0) run_start = s;
      if (!inside && run_start >= 0.0) {
        const double run_end = s;
        if (run_end - run_start > best_len) {
          const Path q = gen.subpath(run_start, run_end);
          if (std::abs(q.back() - q.front()) > 0.0) {
            best_len = run_end - run_start;
            window = q;
          }
        }
        run_start = -1.0;
      }
    }
  }
  if (!window) return std::nullopt;

  // Walk the bisection chain; the integral bound must fire on some level.
  const Integrand diff = [&](Point z) { return g(z) - h(z); };
  const auto [k, chain] = bisect_subpaths(*window, 12);
  (void)k;
  for (const Path& q : chain) {
    const double chord = std::abs(q.back() - q.front());
    const double defect = std::abs(path_integral(diff, q, 1e-12).value);
    if (defect > (delta / 2.0) * chord - (delta / 4.0) * chord)
      return SeparationWitness{q, defect, z0, radius};
  }
  return std::nullopt;
}

std::vector<double> classical_limit_check(const Fn& f, const Fn& g,
                                          const PlaneSet& X, Point a,
                                          const std::vector<double>& radii) {
  if (radii.empty()) throw DomainError("limit check needs radii");
  for (double r : radii)
    if (!(r > 0.0)) throw DomainError("limit-check radii must be positive");
  const Complex fa = f(a);
  const Complex ga = g(a);
  const double scale = std::max(1.0, std::abs(a));

  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    double worst = -1.0;
    for (const Point& z : X.samples()) {
      const double d = std::abs(z - a);
      if (d <= 1e-15 * scale || d > r) continue;
      worst = std::max(worst, std::abs((f(z) - fa) / (z - a) - ga));
    }
    if (worst < 0.0) {
      std::ostringstream msg;
      msg << "no set samples within radius " << r << " of (" << a.real()
          << ", " << a.imag() << ")";
      throw DomainError(msg.str());
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace pathcalc
