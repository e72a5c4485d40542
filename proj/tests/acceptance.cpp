// Acceptance gate: eleven end-to-end checks with pinned tolerances, one
// verdict line each.  Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathcalc/approx.hpp"
#include "pathcalc/cli.hpp"
#include "pathcalc/corpus.hpp"
#include "pathcalc/errors.hpp"
#include "pathcalc/fderiv.hpp"
#include "pathcalc/fn.hpp"
#include "pathcalc/integrate.hpp"
#include "pathcalc/poly.hpp"
#include "pathcalc/regularity.hpp"
#include "pathcalc/spaces.hpp"

using namespace pathcalc;

namespace {

int g_failures = 0;

void verdict(const std::string& label, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << label;
  if (!detail.empty()) std::cout << "  -- " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double dyadic(int k) { return std::ldexp(1.0, -k); }

Polynomial random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& v : c) v = Complex(coef(rng), coef(rng));
  if (std::abs(c.back()) < 1e-3) c.back() += Complex(0.5, 0.0);
  return Polynomial(std::move(c));
}

double sup_on_path(const Fn& g, const Path& p) {
  double sup = 0.0;
  for (Point z : p.discretize(p.length() / 128.0))
    sup = std::max(sup, std::abs(g(z)));
  return sup;
}

// ---------------------------------------------------------------------- 1
void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const int N = 10;
  const CorpusEntry e = build_zigzag(N, 1e-5);
  std::ostringstream detail;
  bool ok = true;

  double worst_quotient = 0.0;
  for (int n = 1; n <= N; ++n) {
    const double zn = dyadic(2 * n);
    const Complex q = (e.f(Point(zn, 0.0)) - e.f(Point(0.0))) / zn;
    worst_quotient = std::max(worst_quotient, std::abs(q - Complex(1.0)));
  }
  ok = ok && worst_quotient <= 1e-9;

  double worst_sup_excess = 0.0;
  for (int n = 1; n <= N; ++n) {
    const Path tooth({Point(dyadic(2 * n), 0.0),
                      Point(dyadic(2 * n), dyadic(n)),
                      Point(dyadic(2 * n + 1), dyadic(n)),
                      Point(dyadic(2 * n + 1), 0.0),
                      Point(dyadic(2 * n + 2), 0.0)});
    double sup = 0.0;
    for (Point z : tooth.discretize(dyadic(n) / 512.0))
      sup = std::max(sup, std::abs(e.g(z)));
    worst_sup_excess =
        std::max(worst_sup_excess, sup - 1.125 * dyadic(n) * (1.0 + 1e-12));
  }
  ok = ok && worst_sup_excess <= 0.0;

  const std::vector<Point> carrier = e.family.carrier_points(1e-5);
  bool gaps_ok = true;
  for (std::size_t k = 0; k + 1 < e.truncations.size(); ++k) {
    const Fn df = e.truncations[k + 1].first - e.truncations[k].first;
    const Fn dg = e.truncations[k + 1].second - e.truncations[k].second;
    const double gap = fnorm(df, e.set, dg, carrier);
    gaps_ok = gaps_ok && gap < std::ldexp(4.0, -static_cast<int>(k) - 1);
  }
  ok = ok && gaps_ok;

  bool uniform_ok = true;
  for (std::size_t n = 0; n < e.truncations.size(); ++n) {
    double sup = 0.0;
    for (Point z : e.set.samples())
      sup = std::max(sup, std::abs(e.f(z) - e.truncations[n].first(z)));
    uniform_ok = uniform_ok && sup < std::ldexp(4.0, -static_cast<int>(n) - 1);
  }
  ok = ok && uniform_ok;

  const double dt = seconds_since(t0);
  ok = ok && dt < 10.0;
  detail << "max |quotient-1| " << worst_quotient << ", gaps "
         << (gaps_ok ? "in" : "OUT of") << " bound, uniform "
         << (uniform_ok ? "in" : "OUT of") << " bound, " << dt << " s";
  verdict("criterion 1: zigzag N=10 invariants", ok, detail.str());
}

// ---------------------------------------------------------------------- 2
void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const CorpusEntry e = build_square_vertical(0.01);
  const FDerivReport vertical =
      verify_fderivative(e.f, e.g, e.family, 1e-10, 8, 11);

  const PathFamily grid = grid_chord_family(e.set);
  double worst_defect = 0.0;
  for (const Path& p : grid.generators()) {
    if (std::abs(p.back().imag() - p.front().imag()) > 1e-12) continue;
    worst_defect = std::max(
        worst_defect, ftc_defect(e.f, [&e](Point z) { return e.g(z); }, p));
  }
  const double dt = seconds_since(t0);
  const bool ok = vertical.verified && vertical.max_normalized < 1e-10 &&
                  worst_defect >= 0.9 && dt < 5.0;
  std::ostringstream detail;
  detail << "vertical normalized defect " << vertical.max_normalized
         << ", worst horizontal defect " << worst_defect << ", " << dt << " s";
  verdict("criterion 2: Re z has vertical derivative 0 only", ok, detail.str());
}

// ---------------------------------------------------------------------- 3
void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240817u);

  std::vector<Path> pool;
  for (const char* name : {"square", "disk", "star"}) {
    const CorpusEntry e = build_standard(name, 0.05);
    for (const Path& p : e.family.generators()) pool.push_back(p);
  }
  const CorpusEntry ann = build_standard("square_annulus", 0.1);
  for (const Path& p : ann.loops) pool.push_back(p);

  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_ratio = 0.0;
  std::size_t violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Polynomial P = random_poly(rng, 8);
    const Path& base = pool[pick(rng)];
    const double len = base.length();
    double s0 = unit(rng) * len, s1 = unit(rng) * len;
    if (s0 > s1) std::swap(s0, s1);
    if (s1 - s0 < 0.2 * len) {
      s0 = 0.25 * len;
      s1 = 0.75 * len;
    }
    const Path p = base.subpath(s0, s1);
    const Polynomial dP = P.derivative();
    const double defect =
        ftc_defect(P.to_fn(), [&dP](Point z) { return dP(z); }, p, 1e-12);
    const double bound =
        1e-8 * (1.0 + sup_on_path(dP.to_fn(), p) * p.length());
    worst_ratio = std::max(worst_ratio, defect / bound);
    if (defect >= bound) ++violations;
  }
  const double dt = seconds_since(t0);
  const bool ok = violations == 0 && dt < 30.0;
  std::ostringstream detail;
  detail << violations << "/500 over bound, worst defect/bound " << worst_ratio
         << ", " << dt << " s";
  verdict("criterion 3: random polynomial pairs meet the defect bound", ok,
          detail.str());
}

// ---------------------------------------------------------------------- 4
void criterion4() {
  const CorpusEntry e = build_standard("square", 0.05);
  std::mt19937_64 rng(4242u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<Point> carrier = e.family.carrier_points(0.05);

  std::size_t found = 0, valid = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial g = random_poly(rng, 4);
    const Point center = carrier[static_cast<std::size_t>(
        unit(rng) * static_cast<double>(carrier.size() - 1))];
    const double radius = 0.1 + 0.3 * unit(rng);
    const double amp = 1e-3 * std::pow(10.0, 3.0 * unit(rng));  // up to 1
    const Fn gfn = g.to_fn();
    const Fn hfn("g+bump", [g, center, radius, amp](Point z) {
      const double d = std::abs(z - center);
      return g(z) + Complex(amp * std::max(0.0, 1.0 - d / radius), 0.0);
    });
    const auto w = separation_witness(gfn, hfn, e.family, 0.5 * amp, 0.05);
    if (w.has_value()) {
      ++found;
      if (w->defect > 0.0 &&
          w->defect > 0.125 * amp * std::abs(w->path.back() - w->path.front()))
        ++valid;
    }
  }
  const Polynomial same = random_poly(rng, 4);
  const bool none = !separation_witness(same.to_fn(), same.to_fn(), e.family,
                                        1e-3, 0.05)
                         .has_value();
  const bool ok = found == 100 && valid == 100 && none;
  std::ostringstream detail;
  detail << found << "/100 witnesses (" << valid
         << " with positive separation), identical pair: "
         << (none ? "none" : "spurious witness");
  verdict("criterion 4: separation witnesses", ok, detail.str());
}

// ---------------------------------------------------------------------- 5
void criterion5() {
  std::ostringstream detail;
  const UniformReport sq =
      uniform_constant(discretize(Rect{0.0, 0.0, 1.0, 1.0}, 0.005));
  const UniformReport dk =
      uniform_constant(discretize(Disk{Point(0.0), 1.0}, 0.005));
  const bool convex_ok = sq.k <= 1.02 && dk.k <= 1.02;

  const CorpusEntry ann = build_standard("square_annulus", 0.02);
  const double d = geodesic_distance(ann.set, Point(1.5, 0.5), Point(1.5, 2.5));
  const bool annulus_ok = std::abs(d - 2.4142) <= 0.02;

  std::vector<double> ks;
  bool zig_ok = true;
  const int Ns[3] = {4, 6, 8};
  const double hs[3] = {2e-4, 1.2e-5, 4e-6};
  for (int i = 0; i < 3; ++i) {
    const CorpusEntry z = build_zigzag(Ns[i], hs[i]);
    const PointReport p = pointwise_constant(z.set, Point(0.0, 0.0));
    ks.push_back(p.k);
    zig_ok = zig_ok && p.k > std::ldexp(1.0, Ns[i]);
  }
  zig_ok = zig_ok && ks[0] < ks[1] && ks[1] < ks[2];

  const bool ok = convex_ok && annulus_ok && zig_ok;
  detail << "square k " << sq.k << ", disk k " << dk.k << ", annulus geodesic "
         << d << ", zigzag k " << ks[0] << " < " << ks[1] << " < " << ks[2];
  verdict("criterion 5: regularity constants", ok, detail.str());
}

// ---------------------------------------------------------------------- 6
void criterion6() {
  const PlaneSet disk_fine = discretize(Disk{Point(0.0), 1.0}, 0.005);
  const DxmResult e2 =
      dxm_norm(exp_stack(30), MSequence::factorial(),
               discretize(Disk{Point(0.0), 1.0}, 0.01));
  const bool dxm_ok = std::abs(e2.partial - 7.389056) <= 1e-4;

  const Polynomial sqp({Complex(0.0), Complex(0.0), Complex(1.0)});
  const double d2 = dn_norm(sqp.stack(3), disk_fine, 2);
  const bool dn_ok = std::abs(d2 - 4.0) <= 1e-9;

  const CorpusEntry square = build_standard("square", 1.0 / 64.0);
  const std::vector<Point> carrier = square.family.carrier_points(1.0 / 64.0);
  std::mt19937_64 rng(616u);
  double worst_gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial P = random_poly(rng, 5);
    const double via_family =
        fnorm(P.to_fn(), square.set, P.derivative().to_fn(), carrier);
    const double via_degree = dn_norm(P.stack(2), square.set, 1);
    worst_gap = std::max(worst_gap, std::abs(via_family - via_degree));
  }
  const bool iso_ok = worst_gap <= 1e-6;

  const bool ok = dxm_ok && dn_ok && iso_ok;
  std::ostringstream detail;
  detail << "dxm(exp) " << e2.partial << ", d2(z^2) " << d2
         << ", worst norm gap " << worst_gap;
  verdict("criterion 6: norm values", ok, detail.str());
}

// ---------------------------------------------------------------------- 7
void criterion7() {
  const AlgebraCheck fact = is_algebra_sequence(MSequence::factorial(), 40);
  const AlgebraCheck ones = is_algebra_sequence(
      MSequence::from_values(std::vector<double>(41, 1.0)), 40);
  const bool ones_ok = !ones.holds && ones.first_violation.has_value() &&
                       ones.first_violation->first == 1 &&
                       ones.first_violation->second == 1;

  const NonanalyticCheck squared =
      is_nonanalytic(MSequence::factorial_squared(), 300);
  const NonanalyticCheck doubled =
      is_nonanalytic(MSequence::factorial_times_2n(), 300);
  const bool tails_ok =
      squared.verdict == NonanalyticCheck::Verdict::yes &&
      doubled.verdict == NonanalyticCheck::Verdict::no &&
      std::abs(doubled.tail.back() - 0.5) <= 1e-12;

  const bool ok = fact.holds && ones_ok && tails_ok;
  std::ostringstream detail;
  detail << "n! algebra " << (fact.holds ? "holds" : "violated")
         << ", ones first violation "
         << (ones.first_violation
                 ? "(" + std::to_string(ones.first_violation->first) + "," +
                       std::to_string(ones.first_violation->second) + ")"
                 : "none")
         << ", n!2^n tail " << doubled.tail.back();
  verdict("criterion 7: weight sequence checks", ok, detail.str());
}

// ---------------------------------------------------------------------- 8
void criterion8() {
  const CorpusEntry e = build_zigzag(6, 5e-4);
  std::vector<CarrierSample> samples;
  for (Point p : e.family.carrier_points(5e-4))
    samples.push_back({p, e.g(p), 0.0});
  const CarrierFunction carrier(std::move(samples));
  const PipelineResult r =
      approx_pipeline(e.f, carrier, e.set, e.family, 0.1);

  double recomputed = 0.0;
  if (r.success) {
    double sup_f = 0.0;
    for (Point z : e.set.samples())
      sup_f = std::max(sup_f, std::abs(r.h(z) - e.f(z)));
    double sup_g = 0.0;
    for (const CarrierSample& s : carrier.samples())
      sup_g = std::max(sup_g, std::abs(r.p(s.at) - s.value));
    recomputed = sup_f + sup_g;
  }
  const bool zig_ok = r.success && recomputed < 0.1;

  const Shape two = UnionShape{
      {Shape(Rect{0.0, 0.0, 1.0, 1.0}), Shape(Rect{2.0, 0.0, 3.0, 1.0})}};
  const PlaneSet X = discretize(two, 0.125);
  const PathFamily F = grid_chord_family(X);
  const Fn steps("steps", [](Point z) {
    return Complex(z.real() < 1.5 ? 0.0 : 1.0, 0.0);
  });
  std::vector<CarrierSample> zero;
  for (Point p : F.carrier_points(0.125)) zero.push_back({p, Complex(0.0), 0.0});
  const PipelineResult lc =
      approx_pipeline(steps, CarrierFunction(std::move(zero)), X, F, 1e-3);
  const bool lc_ok = lc.success && lc.degree == 0 && lc.achieved < 1e-10;

  const bool ok = zig_ok && lc_ok;
  std::ostringstream detail;
  detail << "zigzag success "
         << (r.success ? "yes" : std::string("no: ") + r.note) << " (degree "
         << r.degree << ", fit " << r.fit_error << " vs tau " << r.tau << ")";
  if (r.success) detail << ", recomputed norm " << recomputed;
  detail << ", locally-constant achieved " << lc.achieved;
  verdict("criterion 8: approximation pipeline", ok, detail.str());
}

// ---------------------------------------------------------------------- 9
void criterion9() {
  const CorpusEntry e = build_standard("square_annulus", 0.05);
  const Fn g = (*e.stack)[1];  // derivative of 1/(z-a)
  const RationalFitReport rep = rational_fit_with_residue_correction(
      g, e.set, e.poles, e.loops, 8, 6);

  double worst_residue = 0.0;
  for (Complex r : rep.residues_removed)
    worst_residue = std::max(worst_residue, std::abs(r));

  double worst_loop = 0.0;
  const RationalFn& r = rep.r;
  for (const Path& loop : e.loops)
    worst_loop = std::max(
        worst_loop,
        std::abs(path_integral([&r](Point z) { return r(z); }, loop, 1e-12)
                     .value));

  const Point z0 = e.set.samples().front();
  const RationalFn anti = rational_antiderivative(rep.r, z0, e.f(z0));
  double worst_anti = 0.0;
  for (Point z : e.set.samples())
    worst_anti = std::max(worst_anti, std::abs(anti(z) - e.f(z)));

  const bool ok =
      worst_residue < 1e-6 && worst_loop < 1e-9 && worst_anti < 1e-6;
  std::ostringstream detail;
  detail << "residues " << worst_residue << ", corrected loop integral "
         << worst_loop << ", antiderivative error " << worst_anti;
  verdict("criterion 9: rational fit with residue correction", ok,
          detail.str());
}

// --------------------------------------------------------------------- 10
void criterion10() {
  const PlaneSet disk = discretize(Disk{Point(0.0), 1.0}, 0.01);
  const MSequence M = MSequence::factorial();
  std::vector<double> gaps;
  for (int n : {1, 2, 4, 8, 16}) {
    const DerivativeStack diff =
        stack_difference(dilate(exp_stack(31), n), exp_stack(31));
    gaps.push_back(dxm_norm(diff, M, disk).partial);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < gaps.size(); ++i)
    monotone = monotone && gaps[i] < gaps[i - 1];
  const bool small_enough = gaps.back() < 1e-3;
  const double oracle = std::exp(2.0) - std::exp(32.0 / 17.0);

  const CorpusEntry ann = build_standard("square_annulus", 0.05);
  const bool annulus_rejected = !radially_self_absorbing(ann.set, 16);

  const bool ok = monotone && small_enough && annulus_rejected;
  std::ostringstream detail;
  detail << "gaps " << gaps[0] << " .. " << gaps.back()
         << (monotone ? " (monotone)" : " (NOT monotone)")
         << ", gap at n=16 measured " << gaps.back()
         << " vs closed form e^2 - e^(32/17) = " << oracle
         << ", annulus radial check "
         << (annulus_rejected ? "rejected" : "accepted");
  verdict("criterion 10: dilation approximation gap", ok, detail.str());
}

// --------------------------------------------------------------------- 11
void criterion11() {
  const std::string a = "acc_rep_a.json", b = "acc_rep_b.json";
  const std::string c = "acc_rep_c.json", d = "acc_rep_d.json";
  auto run = [](const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("pathcalc");
    for (const std::string& s : args) argv.push_back(s.c_str());
    return cli::run_cli(static_cast<int>(argv.size()), argv.data());
  };
  auto stripped = [](const std::string& path) {
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    j.erase("timestamp");
    return j.dump();
  };

  const std::vector<std::string> verify_args = {
      "fderiv", "verify", "--corpus", "square", "--h",
      "0.05",   "--seed", "77",       "--out"};
  auto va = verify_args;
  va.push_back(a);
  auto vb = verify_args;
  vb.push_back(b);
  const int rc1 = run(va), rc2 = run(vb);

  const std::vector<std::string> demo_args = {"demo", "zigzag", "--N", "5",
                                              "--h",  "0.002",  "--seed",
                                              "13",   "--out"};
  auto dc = demo_args;
  dc.push_back(c);
  auto dd = demo_args;
  dd.push_back(d);
  const int rc3 = run(dc), rc4 = run(dd);

  const bool ok = rc1 == 0 && rc1 == rc2 && rc3 == 0 && rc3 == rc4 &&
                  stripped(a) == stripped(b) && stripped(c) == stripped(d);
  for (const std::string& f : {a, b, c, d}) std::remove(f.c_str());
  std::ostringstream detail;
  detail << "verify and demo reports byte-identical modulo timestamp";
  verdict("criterion 11: deterministic reports", ok, detail.str());
}

}  // namespace

int main() {
  using CriterionFn = void (*)();
  const CriterionFn criteria[] = {
      criterion1, criterion2, criterion3, criterion4,  criterion5,
      criterion6, criterion7, criterion8, criterion9,  criterion10,
      criterion11};
  int index = 0;
  for (CriterionFn fn : criteria) {
    ++index;
    try {
      fn();
    } catch (const std::exception& e) {
      verdict("criterion " + std::to_string(index), false,
              std::string("exception: ") + e.what());
    }
  }
  std::cout << (g_failures == 0 ? "all criteria passed"
                                : std::to_string(g_failures) +
                                      " criteria failed")
            << std::endl;
  return g_failures;
}
