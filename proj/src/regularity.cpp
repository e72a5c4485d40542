#include "pathcalc/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "pathcalc/errors.hpp"

namespace pathcalc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void dijkstra(const PlaneSet& X, int src, std::vector<double>& dist,
              std::vector<int>* pred = nullptr) {
  const int n = static_cast<int>(X.size());
  dist.assign(static_cast<std::size_t>(n), kInf);
  if (pred) pred->assign(static_cast<std::size_t>(n), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[static_cast<std::size_t>(src)] = 0.0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    const auto [tgt, wts] = X.neighbors(u);
    for (std::size_t k = 0; k < X.degree(u); ++k) {
      const int v = tgt[k];
      const double nd = d + wts[k];
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        if (pred) (*pred)[static_cast<std::size_t>(v)] = u;
        pq.emplace(nd, v);
      }
    }
  }
}

std::vector<Point> backtrack(const PlaneSet& X, const std::vector<int>& pred,
                             int src, int dst) {
  std::vector<Point> pts;
  for (int v = dst; v != -1; v = pred[static_cast<std::size_t>(v)]) {
    pts.push_back(X.samples()[static_cast<std::size_t>(v)]);
    if (v == src) break;
  }
  std::reverse(pts.begin(), pts.end());
  return pts;
}

double polyline_length(const std::vector<Point>& pts) {
  double L = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    L += std::abs(pts[i] - pts[i - 1]);
  return L;
}

// True when pts[i..j] all lie on the chord pts[i] -> pts[j]; such a run is
// in the set because every graph step is.
bool run_collinear(const std::vector<Point>& pts, std::size_t i,
                   std::size_t j) {
  const Complex d = pts[j] - pts[i];
  const double len = std::abs(d);
  if (len == 0.0) return false;
  const double tol = 1e-12 * std::max(len, 1.0);
  for (std::size_t k = i + 1; k < j; ++k) {
    const Complex e = pts[k] - pts[i];
    const double crossv =
        std::abs(d.real() * e.imag() - d.imag() * e.real()) / len;
    if (crossv > tol) return false;
    // must also lie between the endpoints
    const double dot = d.real() * e.real() + d.imag() * e.imag();
    if (dot < -tol * len || dot > len * len + tol * len) return false;
  }
  return true;
}

// Chord-shortcut pass over a graph path: repeatedly jump to the farthest
// visible vertex (exponential probing plus refinement).  Every shortcut is
// verified against the set, so the result is a valid in-set path.
std::vector<Point> straighten(const PlaneSet& X,
                              const std::vector<Point>& pts) {
  if (pts.size() <= 2) return pts;
  const auto visible = [&](std::size_t i, std::size_t j) {
    if (j == i + 1) return true;
    if (run_collinear(pts, i, j)) return true;
    return X.segment_in_set(pts[i], pts[j]);
  };
  std::vector<Point> out;
  out.push_back(pts.front());
  std::size_t i = 0;
  const std::size_t last = pts.size() - 1;
  while (i < last) {
    std::size_t lo = i + 1;
    std::size_t step = 1;
    while (lo < last) {
      const std::size_t j = std::min(last, i + 2 * step);
      if (visible(i, j)) {
        lo = j;
        step *= 2;
        if (j == last) break;
      } else {
        // refine the largest visible index in (lo, j)
        std::size_t hi = j;
        while (hi - lo > 1) {
          const std::size_t mid = (lo + hi) / 2;
          if (visible(i, mid))
            lo = mid;
          else
            hi = mid;
        }
        break;
      }
    }
    out.push_back(pts[lo]);
    i = lo;
  }
  return out;
}

int require_sample_near(const PlaneSet& X, Point z) {
  const int i = X.nearest_sample(z);
  const double d = std::abs(X.samples()[static_cast<std::size_t>(i)] - z);
  if (d > X.resolution() * (1.0 + 1e-9))
    throw DomainError("point is farther than one resolution step from the set");
  return i;
}

}  // namespace

GeodesicResult geodesic_between(const PlaneSet& X, Point z, Point w) {
  const int src = require_sample_near(X, z);
  const int dst = require_sample_near(X, w);
  std::vector<double> dist;
  std::vector<int> pred;
  dijkstra(X, src, dist, &pred);
  GeodesicResult out;
  if (!(dist[static_cast<std::size_t>(dst)] < kInf)) {
    out.raw = out.straightened = kInf;
    out.connected = false;
    return out;
  }
  out.raw = dist[static_cast<std::size_t>(dst)];
  out.polyline = straighten(X, backtrack(X, pred, src, dst));
  out.straightened = polyline_length(out.polyline);
  return out;
}

double geodesic_distance(const PlaneSet& X, Point z, Point w) {
  return geodesic_between(X, z, w).straightened;
}

namespace {

struct RatioCand {
  double ratio;
  int src;
  int dst;
};

// Shared straightening sweep: processes candidate pairs in descending raw
// ratio, re-measuring each on the straightened path, until either the
// remaining raw ratios cannot beat the best straightened one or the budget
// runs out.
struct SweepResult {
  double k = 1.0;
  int worst_src = -1;
  int worst_dst = -1;
  bool budget_hit = false;
};

SweepResult straighten_sweep(const PlaneSet& X, std::vector<RatioCand>& cands,
                             int budget,
                             const std::vector<std::vector<int>*>& preds,
                             const std::vector<int>& pred_src) {
  std::sort(cands.begin(), cands.end(), [](const RatioCand& a,
                                           const RatioCand& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    if (a.src != b.src) return a.src < b.src;
    return a.dst < b.dst;
  });
  SweepResult res;
  int used = 0;
  for (const RatioCand& c : cands) {
    if (c.ratio <= res.k) break;  // straightened <= raw: cannot improve
    if (used >= budget) {
      res.budget_hit = true;
      break;
    }
    ++used;
    // locate the predecessor tree of this source
    const std::vector<int>* pred = nullptr;
    for (std::size_t i = 0; i < pred_src.size(); ++i)
      if (pred_src[i] == c.src) pred = preds[i];
    if (!pred) continue;
    const auto pts = straighten(X, backtrack(X, *pred, c.src, c.dst));
    const double euclid =
        std::abs(X.samples()[static_cast<std::size_t>(c.dst)] -
                 X.samples()[static_cast<std::size_t>(c.src)]);
    if (euclid <= 0.0) continue;
    const double ratio = polyline_length(pts) / euclid;
    if (ratio > res.k) {
      res.k = ratio;
      res.worst_src = c.src;
      res.worst_dst = c.dst;
    }
  }
  return res;
}

}  // namespace

PointReport pointwise_constant(const PlaneSet& X, Point z,
                               int straighten_budget) {
  const int src = require_sample_near(X, z);
  std::vector<double> dist;
  std::vector<int> pred;
  dijkstra(X, src, dist, &pred);

  PointReport rep;
  rep.z = z;
  std::vector<RatioCand> cands;
  const Point zs = X.samples()[static_cast<std::size_t>(src)];
  for (int w = 0; w < static_cast<int>(X.size()); ++w) {
    if (w == src || !(dist[static_cast<std::size_t>(w)] < kInf)) continue;
    const double euclid =
        std::abs(X.samples()[static_cast<std::size_t>(w)] - zs);
    if (euclid <= 0.0) continue;
    const double ratio = dist[static_cast<std::size_t>(w)] / euclid;
    rep.k_raw = std::max(rep.k_raw, ratio);
    cands.push_back({ratio, src, w});
  }
  std::vector<std::vector<int>*> preds = {&pred};
  const std::vector<int> pred_src = {src};
  const SweepResult sw =
      straighten_sweep(X, cands, straighten_budget, preds, pred_src);
  rep.k = sw.k;
  rep.budget_hit = sw.budget_hit;
  if (sw.worst_dst >= 0)
    rep.worst = X.samples()[static_cast<std::size_t>(sw.worst_dst)];
  return rep;
}

UniformReport uniform_constant(const PlaneSet& X, std::size_t max_full,
                               std::size_t max_sources,
                               int straighten_budget) {
  UniformReport rep;
  const int n = static_cast<int>(X.size());
  if (n < 2) return rep;

  // Sources: everything for small sets, farthest-point seeds otherwise.
  std::vector<int> sources;
  if (static_cast<std::size_t>(n) <= max_full) {
    sources.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sources[static_cast<std::size_t>(i)] = i;
  } else {
    rep.subset_sampled = true;
    std::vector<double> mind(static_cast<std::size_t>(n), kInf);
    int cur = 0;  // samples are sorted, so 0 is the lexicographic least
    for (std::size_t s = 0; s < max_sources; ++s) {
      sources.push_back(cur);
      int next = -1;
      double far = -1.0;
      for (int i = 0; i < n; ++i) {
        const double d =
            std::abs(X.samples()[static_cast<std::size_t>(i)] -
                     X.samples()[static_cast<std::size_t>(cur)]);
        mind[static_cast<std::size_t>(i)] =
            std::min(mind[static_cast<std::size_t>(i)], d);
        if (mind[static_cast<std::size_t>(i)] > far) {
          far = mind[static_cast<std::size_t>(i)];
          next = i;
        }
      }
      if (next < 0 || far <= 0.0) break;
      cur = next;
    }
  }

  std::vector<std::vector<int>> pred_store(sources.size());
  std::vector<std::vector<int>*> preds;
  std::vector<int> pred_src;
  std::vector<RatioCand> cands;
  for (std::size_t si = 0; si < sources.size(); ++si) {
    const int src = sources[si];
    std::vector<double> dist;
    dijkstra(X, src, dist, &pred_store[si]);
    preds.push_back(&pred_store[si]);
    pred_src.push_back(src);
    const Point zs = X.samples()[static_cast<std::size_t>(src)];
    for (int w = 0; w < n; ++w) {
      if (w == src || !(dist[static_cast<std::size_t>(w)] < kInf)) continue;
      if (!rep.subset_sampled && w < src) continue;  // each pair once
      const double euclid =
          std::abs(X.samples()[static_cast<std::size_t>(w)] - zs);
      if (euclid <= 0.0) continue;
      const double ratio = dist[static_cast<std::size_t>(w)] / euclid;
      rep.k_raw = std::max(rep.k_raw, ratio);
      ++rep.pairs_considered;
      cands.push_back({ratio, src, w});
    }
  }
  const SweepResult sw =
      straighten_sweep(X, cands, straighten_budget, preds, pred_src);
  rep.k = sw.k;
  rep.budget_hit = sw.budget_hit;
  if (sw.worst_dst >= 0)
    rep.worst = {X.samples()[static_cast<std::size_t>(sw.worst_src)],
                 X.samples()[static_cast<std::size_t>(sw.worst_dst)]};
  return rep;
}

double lift_boundary_uniform(double k) {
  if (!(k >= 1.0)) throw DomainError("boundary constant must be >= 1");
  return k + 1.0;
}

double lift_boundary_pointwise(double k_w) {
  if (!(k_w >= 1.0)) throw DomainError("boundary constant must be >= 1");
  return 2.0 + 3.0 * k_w;
}

namespace {

// Largest pointwise constant per component at one resolution.  Large
// components are probed from farthest-point seeds instead of every sample.
std::vector<std::pair<std::array<double, 4>, double>> component_maxima(
    const PlaneSet& X) {
  const Components comp = components(X);
  std::vector<std::pair<std::array<double, 4>, double>> out;
  constexpr std::size_t kFullScan = 512;
  constexpr std::size_t kSeeds = 64;
  for (int c = 0; c < comp.count; ++c) {
    const auto& members = comp.members[static_cast<std::size_t>(c)];
    std::vector<int> srcs;
    if (members.size() <= kFullScan) {
      srcs = members;
    } else {
      // farthest-point seeding restricted to this component
      std::vector<double> mind(members.size(), kInf);
      std::size_t cur = 0;
      for (std::size_t s = 0; s < kSeeds; ++s) {
        srcs.push_back(members[cur]);
        std::size_t next = 0;
        double far = -1.0;
        for (std::size_t i = 0; i < members.size(); ++i) {
          const double d = std::abs(
              X.samples()[static_cast<std::size_t>(members[i])] -
              X.samples()[static_cast<std::size_t>(members[cur])]);
          mind[i] = std::min(mind[i], d);
          if (mind[i] > far) {
            far = mind[i];
            next = i;
          }
        }
        if (far <= 0.0) break;
        cur = next;
      }
    }
    double max_k = 1.0;
    for (int src : srcs) {
      const PointReport pr = pointwise_constant(
          X, X.samples()[static_cast<std::size_t>(src)], 16);
      max_k = std::max(max_k, pr.k);
    }
    out.emplace_back(comp.bbox[static_cast<std::size_t>(c)], max_k);
  }
  return out;
}

}  // namespace

ComponentwiseReport componentwise_regularity(const Shape& shape, double h,
                                             double cutoff) {
  const PlaneSet coarse = discretize(shape, h);
  const PlaneSet fine = discretize(shape, h / 2.0);
  const auto coarse_max = component_maxima(coarse);
  const auto fine_max = component_maxima(fine);

  ComponentwiseReport rep;
  rep.cutoff = cutoff;
  const Components cc = components(coarse);
  for (int c = 0; c < cc.count; ++c) {
    ComponentRegularity r;
    r.component = c;
    r.bbox = coarse_max[static_cast<std::size_t>(c)].first;
    r.max_k = coarse_max[static_cast<std::size_t>(c)].second;
    // Fine components are matched by centroid containment in the coarse
    // bounding box (expanded by h to absorb sampling drift).
    for (const auto& [fb, fk] : fine_max) {
      const double cx = 0.5 * (fb[0] + fb[2]);
      const double cy = 0.5 * (fb[1] + fb[3]);
      if (cx >= r.bbox[0] - h && cx <= r.bbox[2] + h && cy >= r.bbox[1] - h &&
          cy <= r.bbox[3] + h)
        r.max_k_fine = std::max(r.max_k_fine, fk);
    }
    r.suspect = r.max_k > cutoff && r.max_k_fine > cutoff;
    rep.per_component.push_back(r);
  }
  return rep;
}

}  // namespace pathcalc
