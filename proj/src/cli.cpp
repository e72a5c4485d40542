#include "pathcalc/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathcalc/approx.hpp"
#include "pathcalc/corpus.hpp"
#include "pathcalc/errors.hpp"
#include "pathcalc/fderiv.hpp"
#include "pathcalc/integrate.hpp"
#include "pathcalc/json_io.hpp"
#include "pathcalc/regularity.hpp"
#include "pathcalc/spaces.hpp"
#include "pathcalc/svg.hpp"
#include "pathcalc/version.hpp"

namespace pathcalc::cli {

namespace {

using nlohmann::json;

std::string now_iso8601() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string threads_setting() {
  const char* t = std::getenv("PATHCALC_THREADS");
  return t ? t : "1";
}

// The resolution option is spelled --h, so subcommands must not grab the
// short -h for help.
CLI::App* add_sub(CLI::App* parent, const std::string& name,
                  const std::string& desc) {
  CLI::App* sub = parent->add_subcommand(name, desc);
  sub->set_help_flag("--help", "print usage");
  return sub;
}

json make_report(const std::string& command, json params, json result,
                 std::uint64_t seed) {
  return json{{"engine", kEngineVersion},
              {"command", command},
              {"timestamp", now_iso8601()},
              {"seed", seed},
              {"threads", threads_setting()},
              {"params", std::move(params)},
              {"result", std::move(result)}};
}

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2);
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error("cannot write report: " + out_path);
  f << text << "\n";
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write csv: " + path);
  f << header << "\n";
  f << std::setprecision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      f << (i ? "," : "") << row[i];
    f << "\n";
  }
}

Point parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw DomainError("point must be re,im: " + s);
  return Point(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
}

json complex_json(Complex c) { return io::point_to_json(c); }

// --------------------------------------------------------------------------
// Input source shared by most commands: a corpus entry or explicit files.
// --------------------------------------------------------------------------

struct Source {
  std::string corpus;
  int N = 6;
  double h = 1.0 / 128.0;
  std::string set_file;
  std::string family_file;

  std::optional<CorpusEntry> entry;

  void add_options(CLI::App* sub, bool with_family = true) {
    sub->add_option("--corpus", corpus, "corpus entry name");
    sub->add_option("--N", N, "corpus depth parameter");
    sub->add_option("--h", h, "sampling resolution");
    sub->add_option("--set", set_file, "shape JSON file");
    if (with_family)
      sub->add_option("--family", family_file, "path family JSON file");
  }

  const CorpusEntry& require_entry() {
    if (!entry) {
      if (corpus.empty())
        throw DomainError("this command needs --corpus (or explicit inputs)");
      entry = build_corpus(corpus, N, h);
    }
    return *entry;
  }

  Shape shape() {
    if (!corpus.empty()) return require_entry().shape;
    if (set_file.empty()) throw DomainError("need --corpus or --set");
    return io::shape_from_json(io::load_json_file(set_file));
  }

  PlaneSet set() {
    if (!corpus.empty()) return require_entry().set;
    return discretize(shape(), h);
  }

  PathFamily family() {
    if (!family_file.empty())
      return io::family_from_json(io::load_json_file(family_file));
    if (!corpus.empty()) return require_entry().family;
    throw DomainError("need --corpus or --family");
  }

  json params() const {
    json p;
    if (!corpus.empty()) {
      p["corpus"] = corpus;
      p["N"] = N;
    }
    if (!set_file.empty()) p["set"] = set_file;
    if (!family_file.empty()) p["family"] = family_file;
    p["h"] = h;
    return p;
  }
};

json fderiv_report_json(const FDerivReport& rep) {
  json out{{"verified", rep.verified},
           {"tol", rep.tol},
           {"max_defect", rep.max_defect},
           {"max_normalized", rep.max_normalized},
           {"paths_checked", rep.paths_checked},
           {"seed", rep.seed}};
  if (rep.worst_path) out["worst_path"] = io::path_to_json(*rep.worst_path);
  return out;
}

// --------------------------------------------------------------------------
// Subcommand handlers
// --------------------------------------------------------------------------

struct IntegrateCmd {
  std::string fn_spec, path_file, out;
  double tol = 1e-10;

  int run() {
    const Fn g = io::fn_from_spec(fn_spec);
    const Path p = io::path_from_json(io::load_json_file(path_file));
    const IntegralResult r = path_integral(
        [&g](Point z) { return g(z); }, p, tol);
    emit(make_report("integrate",
                     {{"fn", fn_spec}, {"path", path_file}, {"tol", tol}},
                     {{"value", complex_json(r.value)},
                      {"est_error", r.est_error},
                      {"panels_used", r.panels_used},
                      {"path_length", p.length()}},
                     0),
         out);
    return 0;
  }
};

struct FtcCheckCmd {
  std::string fn_spec, dfn_spec, path_file, out;
  double tol = 1e-10;
  double bound_scale = 1e-8;

  int run() {
    const Fn f = io::fn_from_spec(fn_spec);
    const Fn g = io::fn_from_spec(dfn_spec);
    const Path p = io::path_from_json(io::load_json_file(path_file));
    const double defect =
        ftc_defect(f, [&g](Point z) { return g(z); }, p, tol);
    double sup_g = 0.0;
    for (Point z : p.discretize(p.length() / 256.0))
      sup_g = std::max(sup_g, std::abs(g(z)));
    const double bound = bound_scale * (1.0 + sup_g * p.length());
    const bool pass = defect <= bound;
    emit(make_report("ftc-check",
                     {{"fn", fn_spec},
                      {"dfn", dfn_spec},
                      {"path", path_file},
                      {"tol", tol},
                      {"bound_scale", bound_scale}},
                     {{"defect", defect},
                      {"bound", bound},
                      {"sup_derivative", sup_g},
                      {"path_length", p.length()},
                      {"pass", pass}},
                     0),
         out);
    return pass ? 0 : 2;
  }
};

struct FderivVerifyCmd {
  Source src;
  std::string fn_spec, dfn_spec, out;
  double tol = 1e-8;
  int probes = 8;
  std::uint64_t seed = 24389;

  int run() {
    const PathFamily F = src.family();
    const Fn f = fn_spec.empty() ? src.require_entry().f
                                 : io::fn_from_spec(fn_spec);
    const Fn g = dfn_spec.empty() ? src.require_entry().g
                                  : io::fn_from_spec(dfn_spec);
    const FDerivReport rep = verify_fderivative(f, g, F, tol, probes, seed);
    json params = src.params();
    params["fn"] = fn_spec.empty() ? "corpus:f" : fn_spec;
    params["dfn"] = dfn_spec.empty() ? "corpus:g" : dfn_spec;
    params["tol"] = tol;
    params["probes"] = probes;
    emit(make_report("fderiv-verify", params, fderiv_report_json(rep), seed),
         out);
    return rep.verified ? 0 : 2;
  }
};

struct FderivEstimateCmd {
  Source src;
  std::string fn_spec, out, csv;
  double spacing = 1.0 / 128.0;

  int run() {
    const PathFamily F = src.family();
    const Fn f = fn_spec.empty() ? src.require_entry().f
                                 : io::fn_from_spec(fn_spec);
    const CarrierFunction cf = estimate_fderivative(f, F, spacing);
    json params = src.params();
    params["fn"] = fn_spec.empty() ? "corpus:f" : fn_spec;
    params["spacing"] = spacing;
    json samples = json::array();
    std::vector<std::vector<double>> rows;
    for (const CarrierSample& s : cf.samples()) {
      samples.push_back({{"at", complex_json(s.at)},
                         {"value", complex_json(s.value)},
                         {"spread", s.spread}});
      rows.push_back({s.at.real(), s.at.imag(), s.value.real(),
                      s.value.imag(), s.spread});
    }
    if (!csv.empty()) write_csv(csv, "at_re,at_im,re,im,spread", rows);
    emit(make_report("fderiv-estimate", params,
                     {{"count", cf.samples().size()},
                      {"sup_abs", cf.sup_abs()},
                      {"max_spread", cf.max_spread()},
                      {"samples", samples}},
                     0),
         out);
    return 0;
  }
};

struct FderivBisectCmd {
  std::string fn_spec, dfn_spec, path_file, out;
  int levels = 8;
  double tol = 1e-10;

  int run() {
    const Fn f = io::fn_from_spec(fn_spec);
    const Fn g = io::fn_from_spec(dfn_spec);
    const Path p = io::path_from_json(io::load_json_file(path_file));
    const auto [k, chain] = bisect_subpaths(p, levels);
    json levels_json = json::array();
    for (const Path& q : chain) {
      const double chord = std::abs(q.back() - q.front());
      levels_json.push_back(
          {{"length", q.length()},
           {"chord", chord},
           {"defect", ftc_defect(f, [&g](Point z) { return g(z); }, q, tol)}});
    }
    emit(make_report("fderiv-bisect",
                     {{"fn", fn_spec},
                      {"dfn", dfn_spec},
                      {"path", path_file},
                      {"levels", levels}},
                     {{"k", k}, {"chain", levels_json}},
                     0),
         out);
    return 0;
  }
};

struct RegularityScanCmd {
  Source src;
  std::string point_spec, out, svg, csv;
  double cutoff = 1e3;
  bool uniform = false;

  int run() {
    const Shape shape = src.shape();
    const ComponentwiseReport rep =
        componentwise_regularity(shape, src.h, cutoff);
    json comps = json::array();
    std::vector<std::vector<double>> rows;
    bool any_suspect = false;
    double max_k = 1.0;
    for (const ComponentRegularity& c : rep.per_component) {
      comps.push_back({{"component", c.component},
                       {"bbox", c.bbox},
                       {"max_k", c.max_k},
                       {"max_k_fine", c.max_k_fine},
                       {"suspect", c.suspect}});
      rows.push_back({static_cast<double>(c.component), c.max_k, c.max_k_fine,
                      c.suspect ? 1.0 : 0.0});
      any_suspect = any_suspect || c.suspect;
      max_k = std::max({max_k, c.max_k, c.max_k_fine});
    }
    json result{{"cutoff", rep.cutoff}, {"components", comps}};

    if (!point_spec.empty() || uniform) {
      const PlaneSet X = src.set();
      if (!point_spec.empty()) {
        const PointReport pr = pointwise_constant(X, parse_point(point_spec));
        result["pointwise"] = {{"z", complex_json(pr.z)},
                               {"k", pr.k},
                               {"k_raw", pr.k_raw},
                               {"worst", complex_json(pr.worst)},
                               {"budget_hit", pr.budget_hit}};
      }
      if (uniform) {
        const UniformReport ur = uniform_constant(X);
        result["uniform"] = {{"k", ur.k},
                             {"k_raw", ur.k_raw},
                             {"worst", json::array({complex_json(ur.worst.first),
                                                    complex_json(ur.worst.second)})},
                             {"subset_sampled", ur.subset_sampled},
                             {"budget_hit", ur.budget_hit},
                             {"pairs_considered", ur.pairs_considered}};
      }
    }

    if (!csv.empty()) write_csv(csv, "component,max_k,max_k_fine,suspect", rows);
    if (!svg.empty()) {
      const auto bb = shape_bbox(shape);
      const double pad = 0.05 * std::max(bb[2] - bb[0], bb[3] - bb[1]);
      SvgCanvas canvas(bb[0] - pad, bb[1] - pad, bb[2] + pad, bb[3] + pad);
      for (const ComponentRegularity& c : rep.per_component)
        canvas.rect(c.bbox[0], c.bbox[1], c.bbox[2] - c.bbox[0],
                    c.bbox[3] - c.bbox[1], heat_color(c.max_k, 1.0, max_k));
      canvas.write(svg);
    }

    json params = src.params();
    params["cutoff"] = cutoff;
    if (!point_spec.empty()) params["point"] = point_spec;
    params["uniform"] = uniform;
    emit(make_report("regularity-scan", params, result, 0), out);
    return any_suspect ? 2 : 0;
  }
};

struct NormCmd {
  Source src;
  std::string space = "d1";
  std::string fn_spec, dfn_spec, mseq_spec = "factorial", out;
  std::size_t depth = 30;
  std::size_t n = 1;
  double spacing = 0.0;

  int run() {
    const PlaneSet X = src.set();
    json params = src.params();
    params["space"] = space;
    params["fn"] = fn_spec;
    json result{{"resolution", X.resolution()}};
    int rc = 0;

    if (space == "d1" || space == "dn") {
      const std::size_t deg = space == "d1" ? 1 : n;
      const DerivativeStack stack = io::stack_from_spec(fn_spec, deg + 1);
      params["n"] = deg;
      result["value"] = dn_norm(stack, X, deg);
    } else if (space == "dxm") {
      const DerivativeStack stack = io::stack_from_spec(fn_spec, depth);
      const MSequence M = io::mseq_from_spec(mseq_spec);
      const DxmResult r = dxm_norm(stack, M, X);
      params["M"] = mseq_spec;
      params["depth"] = depth;
      result["partial"] = r.partial;
      result["terms"] = r.terms;
      result["converged"] = r.converged;
      result["diverged"] = r.diverged;
      result["verdict"] = r.verdict();
      if (r.diverged) rc = 2;
    } else if (space == "df") {
      const PathFamily F = src.family();
      const double sp = spacing > 0.0 ? spacing : src.h;
      const Fn f = fn_spec.empty() ? src.require_entry().f
                                   : io::fn_from_spec(fn_spec);
      const Fn g = dfn_spec.empty() ? src.require_entry().g
                                    : io::fn_from_spec(dfn_spec);
      const std::vector<Point> carrier = F.carrier_points(sp);
      params["dfn"] = dfn_spec.empty() ? "corpus:g" : dfn_spec;
      params["spacing"] = sp;
      result["value"] = fnorm(f, X, g, carrier);
      result["carrier_points"] = carrier.size();
    } else {
      throw DomainError("unknown norm space: " + space);
    }
    emit(make_report("norm", params, result, 0), out);
    return rc;
  }
};

struct ApproxPipelineCmd {
  Source src;
  std::string fn_spec, dfn_spec, out, csv, svg;
  double eps = 0.1;
  int cap = 64;
  double spacing = 0.0;

  int run() {
    const PlaneSet X = src.set();
    const PathFamily F = src.family();
    const Fn f = fn_spec.empty() ? src.require_entry().f
                                 : io::fn_from_spec(fn_spec);
    const Fn g = dfn_spec.empty() ? src.require_entry().g
                                  : io::fn_from_spec(dfn_spec);
    const double sp = spacing > 0.0 ? spacing : src.h;
    std::vector<CarrierSample> samples;
    for (Point p : F.carrier_points(sp)) samples.push_back({p, g(p), 0.0});
    const CarrierFunction carrier(std::move(samples));

    const PipelineResult r = approx_pipeline(f, carrier, X, F, eps, cap);
    json ladder = json::array();
    std::vector<std::vector<double>> rows;
    for (const auto& [deg, err] : r.ladder) {
      ladder.push_back({{"degree", deg}, {"sup_error", err}});
      rows.push_back({static_cast<double>(deg), err});
    }
    if (!csv.empty()) write_csv(csv, "degree,sup_error", rows);
    if (!svg.empty() && rows.size() >= 2) {
      double emax = 0.0;
      for (const auto& row : rows) emax = std::max(emax, row[1]);
      SvgCanvas canvas(0.0, 0.0, rows.back()[0] + 1.0, emax * 1.1 + 1e-30);
      std::vector<Point> curve;
      for (const auto& row : rows) curve.emplace_back(row[0], row[1]);
      canvas.polyline(curve, "steelblue");
      canvas.write(svg);
    }

    json params = src.params();
    params["eps"] = eps;
    params["degree_cap"] = cap;
    params["spacing"] = sp;
    emit(make_report("approx-pipeline", params,
                     {{"success", r.success},
                      {"degree", r.degree},
                      {"tau", r.tau},
                      {"fit_error", r.fit_error},
                      {"delta", r.delta},
                      {"pieces", r.pieces},
                      {"achieved", r.achieved},
                      {"note", r.note},
                      {"ladder", ladder}},
                     0),
         out);
    return r.success ? 0 : 2;
  }
};

struct ApproxRationalCmd {
  Source src;
  std::string fn_spec, poles_spec, loops_file, out;
  int degree = 8;
  int pole_order = 6;

  int run() {
    const PlaneSet X = src.set();
    const Fn g = fn_spec.empty() ? src.require_entry().g
                                 : io::fn_from_spec(fn_spec);
    std::vector<Point> poles;
    std::vector<Path> loops;
    if (!poles_spec.empty()) {
      for (const json& p : json::parse(poles_spec))
        poles.push_back(io::point_from_json(p));
      for (const json& l : io::load_json_file(loops_file))
        loops.push_back(io::path_from_json(l));
    } else {
      poles = src.require_entry().poles;
      loops = src.require_entry().loops;
    }
    const RationalFitReport rep = rational_fit_with_residue_correction(
        g, X, poles, loops, degree, pole_order);

    json residues = json::array();
    for (Complex r : rep.residues_removed) residues.push_back(complex_json(r));
    json loop_integrals = json::array();
    const RationalFn& r = rep.r;
    for (const Path& loop : loops) {
      const IntegralResult ir =
          path_integral([&r](Point z) { return r(z); }, loop, 1e-12);
      loop_integrals.push_back({{"value", complex_json(ir.value)},
                                {"abs", std::abs(ir.value)}});
    }

    json params = src.params();
    params["degree"] = degree;
    params["pole_order"] = pole_order;
    emit(make_report("approx-rational", params,
                     {{"sup_error_before", rep.sup_error_before},
                      {"sup_error_after", rep.sup_error_after},
                      {"residues_removed", residues},
                      {"loop_integrals", loop_integrals}},
                     0),
         out);
    return 0;
  }
};

struct ApproxDilateCmd {
  Source src;
  std::string fn_spec, mseq_spec = "factorial", out;
  int n = 4;
  std::size_t depth = 30;

  int run() {
    const PlaneSet X = src.set();
    json params = src.params();
    params["n"] = n;
    params["M"] = mseq_spec;
    params["depth"] = depth;

    const bool radial = radially_self_absorbing(X, n);
    if (!radial) {
      emit(make_report("approx-dilate", params,
                       {{"radial_check", false},
                        {"note", "set fails the radial interiority check"}},
                       0),
           out);
      return 2;
    }

    DerivativeStack stack = [&]() -> DerivativeStack {
      if (!fn_spec.empty()) return io::stack_from_spec(fn_spec, depth);
      const CorpusEntry& e = src.require_entry();
      if (!e.stack || e.stack->depth() < depth)
        throw DomainError("corpus entry lacks a deep enough derivative stack");
      DerivativeStack s;
      s.levels.assign(e.stack->levels.begin(),
                      e.stack->levels.begin() + static_cast<long>(depth));
      return s;
    }();

    const MSequence M = io::mseq_from_spec(mseq_spec);
    const DxmResult gap =
        dxm_norm(stack_difference(dilate(stack, n), stack), M, X);
    emit(make_report("approx-dilate", params,
                     {{"radial_check", true},
                      {"gap", gap.partial},
                      {"gap_verdict", gap.verdict()}},
                     0),
         out);
    return 0;
  }
};

struct DemoCmd {
  std::string name;
  int N = 6;
  double h = 1.0 / 128.0;
  std::string out, svg, csv;
  std::uint64_t seed = 24389;

  int run() {
    const CorpusEntry e = build_corpus(name, N, h);
    const Components comp = components(e.set);
    const FDerivReport verify =
        verify_fderivative(e.f, e.g, e.family, 1e-8, 4, seed);

    json result{{"name", e.name},
                {"notes", e.notes},
                {"samples", e.set.size()},
                {"resolution", e.set.resolution()},
                {"components", comp.count},
                {"fderiv", fderiv_report_json(verify)}};
    std::vector<std::vector<double>> rows;
    std::string csv_header;

    if (name == "zigzag" || name == "zigzag_printed") {
      json trace = json::array();
      double last_q = 0.0;
      for (int k = 1; k <= N; ++k) {
        const double zk = std::ldexp(1.0, -2 * k);
        const Complex q = (e.f(Point(zk, 0.0)) - e.f(Point(0.0))) / zk;
        trace.push_back({{"n", k}, {"quotient", complex_json(q)}});
        rows.push_back({static_cast<double>(k), q.real(), q.imag()});
        last_q = q.real();
      }
      csv_header = "n,quotient_re,quotient_im";
      result["quotient_trace"] = trace;
      result["trace_end_gap_to_1"] = std::abs(last_q - 1.0);
      if (!svg.empty()) {
        SvgCanvas canvas(-0.02, -0.02, 0.30, 0.55);
        std::vector<Point> arc = e.family.generators().front().vertices();
        canvas.polyline(arc, "black", 1.0);
        std::vector<Point> curve;
        for (const auto& row : rows)
          curve.emplace_back(0.02 * row[0], 0.5 * row[1]);
        canvas.polyline(curve, "crimson");
        canvas.text(Point(0.15, 0.52), "difference quotients at 0 (scaled)");
        canvas.write(svg);
      }
    } else if (name == "many_components") {
      std::vector<double> radii;
      for (int k = 0; k <= N; ++k) radii.push_back(std::ldexp(1.0, -k));
      const CauchyTrace trace =
          cauchy_trace(e.truncations, e.set, e.family.carrier_points(h),
                       e.bad_point, radii);
      result["cauchy"] = {{"gaps", trace.gaps},
                          {"is_cauchy", trace.cauchy},
                          {"limit_deviation", trace.limit_deviation},
                          {"derivative_certified", trace.derivative_certified}};
      csv_header = "gap";
      for (double gap : trace.gaps) rows.push_back({gap});
    } else if (name == "square_vertical") {
      const std::vector<double> radii = {0.25, 0.1, 0.05, 0.02};
      result["classical_deviation"] =
          classical_limit_check(e.f, e.g, e.set, e.bad_point, radii);
    } else if (name == "square_annulus") {
      json loops = json::array();
      for (const Path& loop : e.loops) {
        const WindingResult w = winding_number(loop, e.poles.front());
        const IntegralResult ir = path_integral(
            [&e](Point z) { return e.g(z); }, loop, 1e-12);
        loops.push_back({{"winding", w.winding},
                         {"derivative_integral_abs", std::abs(ir.value)}});
      }
      result["loops"] = loops;
    } else if (name == "disk" || name == "star") {
      result["radially_self_absorbing_n2"] = radially_self_absorbing(e.set, 2);
    } else {
      const UniformReport ur = uniform_constant(e.set);
      result["uniform_k"] = ur.k;
    }

    if (!csv.empty() && !rows.empty()) write_csv(csv, csv_header, rows);
    emit(make_report("demo", {{"name", name}, {"N", N}, {"h", h}}, result,
                     seed),
         out);
    return verify.verified ? 0 : 2;
  }
};

struct MseqCheckCmd {
  std::string mseq_spec, out;
  std::size_t algebra_upto = 20;
  std::size_t tail_upto = 300;

  int run() {
    const MSequence M = io::mseq_from_spec(mseq_spec);
    std::size_t au = algebra_upto, tu = tail_upto;
    if (!M.unbounded()) {
      au = std::min(au, M.prefix_terms() - 1);
      tu = std::min(tu, M.prefix_terms() - 1);
    }
    const AlgebraCheck alg = is_algebra_sequence(M, au);
    const NonanalyticCheck na = is_nonanalytic(M, tu);
    json alg_json{{"holds", alg.holds}, {"upto", alg.upto}};
    if (alg.first_violation)
      alg_json["first_violation"] =
          json::array({alg.first_violation->first, alg.first_violation->second});
    const char* verdict =
        na.verdict == NonanalyticCheck::Verdict::yes
            ? "yes"
            : na.verdict == NonanalyticCheck::Verdict::no ? "no"
                                                          : "inconclusive";
    emit(make_report("mseq-check",
                     {{"M", mseq_spec},
                      {"algebra_upto", au},
                      {"tail_upto", tu}},
                     {{"algebra", alg_json},
                      {"nonanalytic",
                       {{"verdict", verdict},
                        {"tail_last", na.tail.empty() ? 0.0 : na.tail.back()},
                        {"fitted_floor", na.fitted_floor}}}},
                     0),
         out);
    return 0;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"path-integral calculus on compact plane sets"};
  app.require_subcommand(1);
  int rc = 0;

  IntegrateCmd integrate_cmd;
  auto* s_int = add_sub(&app, "integrate", "contour integral along a path");
  s_int->add_option("--fn", integrate_cmd.fn_spec, "integrand spec")->required();
  s_int->add_option("--path", integrate_cmd.path_file, "path JSON file")->required();
  s_int->add_option("--tol", integrate_cmd.tol, "refinement tolerance");
  s_int->add_option("--out", integrate_cmd.out, "report path (default stdout)");
  s_int->callback([&] { rc = integrate_cmd.run(); });

  FtcCheckCmd ftc_cmd;
  auto* s_ftc = add_sub(&app, "ftc-check", "fundamental-theorem defect of (f, g) on a path");
  s_ftc->add_option("--fn", ftc_cmd.fn_spec, "function spec")->required();
  s_ftc->add_option("--dfn", ftc_cmd.dfn_spec, "derivative spec")->required();
  s_ftc->add_option("--path", ftc_cmd.path_file, "path JSON file")->required();
  s_ftc->add_option("--tol", ftc_cmd.tol, "quadrature tolerance");
  s_ftc->add_option("--bound-scale", ftc_cmd.bound_scale, "pass bound scale");
  s_ftc->add_option("--out", ftc_cmd.out, "report path");
  s_ftc->callback([&] { rc = ftc_cmd.run(); });

  auto* s_fderiv = add_sub(&app, "fderiv", "carrier-derivative operations");
  s_fderiv->require_subcommand(1);

  FderivVerifyCmd fv_cmd;
  auto* s_fv = add_sub(s_fderiv, "verify", "check g against f on a family");
  fv_cmd.src.add_options(s_fv);
  s_fv->add_option("--fn", fv_cmd.fn_spec, "function spec (default: corpus f)");
  s_fv->add_option("--dfn", fv_cmd.dfn_spec, "derivative spec (default: corpus g)");
  s_fv->add_option("--tol", fv_cmd.tol, "normalized defect tolerance");
  s_fv->add_option("--probes", fv_cmd.probes, "random subpaths per generator");
  s_fv->add_option("--seed", fv_cmd.seed, "probe seed");
  s_fv->add_option("--out", fv_cmd.out, "report path");
  s_fv->callback([&] { rc = fv_cmd.run(); });

  FderivEstimateCmd fe_cmd;
  auto* s_fe = add_sub(s_fderiv, "estimate", "chord-quotient derivative estimate");
  fe_cmd.src.add_options(s_fe);
  s_fe->add_option("--fn", fe_cmd.fn_spec, "function spec (default: corpus f)");
  s_fe->add_option("--spacing", fe_cmd.spacing, "arc-length step");
  s_fe->add_option("--out", fe_cmd.out, "report path");
  s_fe->add_option("--csv", fe_cmd.csv, "csv output path");
  s_fe->callback([&] { rc = fe_cmd.run(); });

  FderivBisectCmd fb_cmd;
  auto* s_fb = add_sub(s_fderiv, "bisect", "nested subpath chain with defects");
  s_fb->add_option("--fn", fb_cmd.fn_spec, "function spec")->required();
  s_fb->add_option("--dfn", fb_cmd.dfn_spec, "derivative spec")->required();
  s_fb->add_option("--path", fb_cmd.path_file, "path JSON file")->required();
  s_fb->add_option("--levels", fb_cmd.levels, "bisection levels");
  s_fb->add_option("--tol", fb_cmd.tol, "quadrature tolerance");
  s_fb->add_option("--out", fb_cmd.out, "report path");
  s_fb->callback([&] { rc = fb_cmd.run(); });

  auto* s_reg = add_sub(&app, "regularity", "geodesic regularity analysis");
  s_reg->require_subcommand(1);

  RegularityScanCmd rs_cmd;
  auto* s_rs = add_sub(s_reg, "scan", "componentwise regularity constants");
  rs_cmd.src.add_options(s_rs, /*with_family=*/false);
  s_rs->add_option("--cutoff", rs_cmd.cutoff, "suspect threshold");
  s_rs->add_option("--point", rs_cmd.point_spec, "pointwise constant at re,im");
  s_rs->add_flag("--uniform", rs_cmd.uniform, "also compute the uniform constant");
  s_rs->add_option("--out", rs_cmd.out, "report path");
  s_rs->add_option("--svg", rs_cmd.svg, "heatmap svg path");
  s_rs->add_option("--csv", rs_cmd.csv, "csv output path");
  s_rs->callback([&] { rc = rs_cmd.run(); });

  NormCmd norm_cmd;
  auto* s_norm = add_sub(&app, "norm", "norms of the function spaces");
  norm_cmd.src.add_options(s_norm);
  s_norm->add_option("--space", norm_cmd.space, "d1|dn|dxm|df")->required();
  s_norm->add_option("--fn", norm_cmd.fn_spec, "function spec");
  s_norm->add_option("--dfn", norm_cmd.dfn_spec, "derivative spec (df)");
  s_norm->add_option("--M", norm_cmd.mseq_spec, "weight sequence (dxm)");
  s_norm->add_option("--depth", norm_cmd.depth, "series terms (dxm)");
  s_norm->add_option("--n", norm_cmd.n, "degree (dn)");
  s_norm->add_option("--spacing", norm_cmd.spacing, "carrier spacing (df)");
  s_norm->add_option("--out", norm_cmd.out, "report path");
  s_norm->callback([&] { rc = norm_cmd.run(); });

  auto* s_approx = add_sub(&app, "approx", "constructive approximation");
  s_approx->require_subcommand(1);

  ApproxPipelineCmd ap_cmd;
  auto* s_ap = add_sub(s_approx, "pipeline", "fit, antidifferentiate, correct");
  ap_cmd.src.add_options(s_ap);
  s_ap->add_option("--fn", ap_cmd.fn_spec, "target function (default: corpus f)");
  s_ap->add_option("--dfn", ap_cmd.dfn_spec, "carrier derivative (default: corpus g)");
  s_ap->add_option("--eps", ap_cmd.eps, "target norm error")->required();
  s_ap->add_option("--cap", ap_cmd.cap, "degree cap");
  s_ap->add_option("--spacing", ap_cmd.spacing, "carrier spacing");
  s_ap->add_option("--out", ap_cmd.out, "report path");
  s_ap->add_option("--csv", ap_cmd.csv, "error-curve csv path");
  s_ap->add_option("--svg", ap_cmd.svg, "error-curve svg path");
  s_ap->callback([&] { rc = ap_cmd.run(); });

  ApproxRationalCmd ar_cmd;
  auto* s_ar = add_sub(s_approx, "rational", "pole-basis fit with residue removal");
  ar_cmd.src.add_options(s_ar, /*with_family=*/false);
  s_ar->add_option("--fn", ar_cmd.fn_spec, "target function (default: corpus g)");
  s_ar->add_option("--poles", ar_cmd.poles_spec, "poles JSON list [[re,im],...]");
  s_ar->add_option("--loops", ar_cmd.loops_file, "loops JSON file");
  s_ar->add_option("--degree", ar_cmd.degree, "polynomial degree");
  s_ar->add_option("--pole-order", ar_cmd.pole_order, "max pole power");
  s_ar->add_option("--out", ar_cmd.out, "report path");
  s_ar->callback([&] { rc = ar_cmd.run(); });

  ApproxDilateCmd ad_cmd;
  auto* s_ad = add_sub(s_approx, "dilate", "dilation approximation gap");
  ad_cmd.src.add_options(s_ad, /*with_family=*/false);
  s_ad->add_option("--fn", ad_cmd.fn_spec, "function spec (default: corpus stack)");
  s_ad->add_option("--n", ad_cmd.n, "dilation index")->required();
  s_ad->add_option("--depth", ad_cmd.depth, "stack depth");
  s_ad->add_option("--M", ad_cmd.mseq_spec, "weight sequence");
  s_ad->add_option("--out", ad_cmd.out, "report path");
  s_ad->callback([&] { rc = ad_cmd.run(); });

  DemoCmd demo_cmd;
  auto* s_demo = add_sub(&app, "demo", "run a corpus entry's signature checks");
  s_demo->add_option("name", demo_cmd.name, "corpus entry name")->required();
  s_demo->add_option("--N", demo_cmd.N, "depth parameter");
  s_demo->add_option("--h", demo_cmd.h, "sampling resolution");
  s_demo->add_option("--seed", demo_cmd.seed, "probe seed");
  s_demo->add_option("--out", demo_cmd.out, "report path");
  s_demo->add_option("--svg", demo_cmd.svg, "plot svg path");
  s_demo->add_option("--csv", demo_cmd.csv, "csv output path");
  s_demo->callback([&] { rc = demo_cmd.run(); });

  MseqCheckCmd mseq_cmd;
  auto* s_mseq = add_sub(&app, "mseq", "weight-sequence analysis");
  s_mseq->require_subcommand(1);
  auto* s_mc = add_sub(s_mseq, "check", "algebra and nonanalyticity checks");
  s_mc->add_option("--M", mseq_cmd.mseq_spec, "weight sequence spec")->required();
  s_mc->add_option("--algebra-upto", mseq_cmd.algebra_upto, "largest m+n checked");
  s_mc->add_option("--tail-upto", mseq_cmd.tail_upto, "tail terms computed");
  s_mc->add_option("--out", mseq_cmd.out, "report path");
  s_mc->callback([&] { rc = mseq_cmd.run(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace pathcalc::cli
