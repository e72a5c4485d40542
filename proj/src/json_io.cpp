#include "pathcalc/json_io.hpp"

#include <fstream>

#include "pathcalc/corpus.hpp"
#include "pathcalc/errors.hpp"
#include "pathcalc/poly.hpp"

namespace pathcalc::io {

json point_to_json(Point p) { return json::array({p.real(), p.imag()}); }

Point point_from_json(const json& j) {
  if (j.is_number()) return Point(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw DomainError("point must be [re, im]: " + j.dump());
  return Point(j[0].get<double>(), j[1].get<double>());
}

json path_to_json(const Path& p) {
  json verts = json::array();
  for (Point v : p.vertices()) verts.push_back(point_to_json(v));
  return json{{"vertices", verts}};
}

Path path_from_json(const json& j) {
  const json& verts = j.is_array() ? j : j.at("vertices");
  std::vector<Point> pts;
  for (const json& v : verts) pts.push_back(point_from_json(v));
  return Path(std::move(pts));
}

json shape_to_json(const Shape& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rect>) {
          return json{{"shape", "rect"},
                      {"x0", v.x0},
                      {"y0", v.y0},
                      {"x1", v.x1},
                      {"y1", v.y1}};
        } else if constexpr (std::is_same_v<T, Disk>) {
          return json{{"shape", "disk"},
                      {"center", point_to_json(v.center)},
                      {"radius", v.radius}};
        } else if constexpr (std::is_same_v<T, SegmentShape>) {
          return json{{"shape", "segment"},
                      {"a", point_to_json(v.a)},
                      {"b", point_to_json(v.b)}};
        } else if constexpr (std::is_same_v<T, PolylineShape>) {
          json verts = json::array();
          for (Point p : v.vertices) verts.push_back(point_to_json(p));
          return json{{"shape", "polyline"}, {"vertices", verts}};
        } else if constexpr (std::is_same_v<T, RasterShape>) {
          json mask = json::array();
          for (auto b : v.mask) mask.push_back(static_cast<int>(b));
          return json{{"shape", "raster"}, {"x0", v.x0},   {"y0", v.y0},
                      {"res", v.res},      {"nx", v.nx},   {"ny", v.ny},
                      {"mask", mask}};
        } else {
          json parts = json::array();
          for (const Shape& p : v.parts) parts.push_back(shape_to_json(p));
          return json{{"shape", "union"}, {"parts", parts}};
        }
      },
      s);
}

Shape shape_from_json(const json& j) {
  const std::string kind = j.at("shape").get<std::string>();
  if (kind == "rect")
    return Rect{j.at("x0").get<double>(), j.at("y0").get<double>(),
                j.at("x1").get<double>(), j.at("y1").get<double>()};
  if (kind == "disk")
    return Disk{point_from_json(j.at("center")), j.at("radius").get<double>()};
  if (kind == "segment")
    return SegmentShape{point_from_json(j.at("a")), point_from_json(j.at("b"))};
  if (kind == "polyline") {
    PolylineShape p;
    for (const json& v : j.at("vertices")) p.vertices.push_back(point_from_json(v));
    return p;
  }
  if (kind == "raster") {
    RasterShape r;
    r.x0 = j.at("x0").get<double>();
    r.y0 = j.at("y0").get<double>();
    r.res = j.at("res").get<double>();
    r.nx = j.at("nx").get<std::size_t>();
    r.ny = j.at("ny").get<std::size_t>();
    for (const json& m : j.at("mask"))
      r.mask.push_back(static_cast<std::uint8_t>(m.get<int>() != 0));
    return r;
  }
  if (kind == "union") {
    UnionShape u;
    for (const json& p : j.at("parts")) u.parts.push_back(shape_from_json(p));
    return u;
  }
  throw DomainError("unknown shape kind: " + kind);
}

namespace {

CorpusEntry corpus_from_descriptor(const json& j) {
  const std::string entry = j.at("entry").get<std::string>();
  const int N = j.value("N", 6);
  const double h = j.value("h", 1.0 / 128.0);
  return build_corpus(entry, N, h);
}

}  // namespace

Fn fn_from_json(const json& j) {
  const std::string kind = j.at("fn").get<std::string>();
  if (kind == "poly") {
    std::vector<Complex> coeffs;
    for (const json& c : j.at("coeffs")) coeffs.push_back(point_from_json(c));
    const Point center =
        j.contains("center") ? point_from_json(j.at("center")) : Point(0.0);
    const double scale = j.value("scale", 1.0);
    return Polynomial(std::move(coeffs), center, scale).to_fn();
  }
  if (kind == "exp") return Fn::exp();
  if (kind == "re_part") return Fn::re_part();
  if (kind == "identity") return Fn::identity();
  if (kind == "constant") return Fn::constant(point_from_json(j.at("c")));
  if (kind == "inv_shift") return Fn::inv_shift(point_from_json(j.at("a")));
  if (kind == "corpus") {
    const CorpusEntry e = corpus_from_descriptor(j);
    const std::string which = j.value("name", "f");
    if (which == "f") return e.f;
    if (which == "g") return e.g;
    if (which.rfind("trunc", 0) == 0) {
      const std::size_t k = std::stoul(which.substr(5));
      if (k < 1 || k > e.truncations.size())
        throw DomainError("truncation index out of range: " + which);
      return e.truncations[k - 1].first;
    }
    throw DomainError("unknown corpus function: " + which);
  }
  throw DomainError("unknown function descriptor: " + kind);
}

Fn fn_from_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return fn_from_json(json::parse(spec));
  if (spec == "exp") return Fn::exp();
  if (spec == "re_part") return Fn::re_part();
  if (spec == "identity") return Fn::identity();
  if (spec == "inv_z") return Fn::inv_shift(0.0);
  if (spec == "zsq") return Polynomial({0.0, 0.0, 1.0}).to_fn("zsq");
  if (spec == "zero") return Fn::constant(0.0);
  throw DomainError("unknown function spec: " + spec);
}

DerivativeStack stack_from_spec(const std::string& spec, std::size_t depth) {
  if (depth < 1) throw DomainError("stack depth must be positive");
  const auto from_json_desc = [depth](const json& j) -> DerivativeStack {
    const std::string kind = j.at("fn").get<std::string>();
    if (kind == "poly") {
      std::vector<Complex> coeffs;
      for (const json& c : j.at("coeffs")) coeffs.push_back(point_from_json(c));
      const Point center =
          j.contains("center") ? point_from_json(j.at("center")) : Point(0.0);
      return Polynomial(std::move(coeffs), center, j.value("scale", 1.0))
          .stack(depth);
    }
    if (kind == "exp") return exp_stack(depth);
    if (kind == "inv_shift")
      return inv_shift_stack(point_from_json(j.at("a")), depth);
    if (kind == "constant")
      return Polynomial({point_from_json(j.at("c"))}).stack(depth);
    if (kind == "identity") return Polynomial({0.0, 1.0}).stack(depth);
    if (kind == "corpus") {
      const CorpusEntry e = corpus_from_descriptor(j);
      if (!e.stack)
        throw DomainError("corpus entry has no closed-form derivative stack");
      if (e.stack->depth() < depth)
        throw DomainError("corpus stack shallower than the requested depth");
      DerivativeStack out;
      out.levels.assign(e.stack->levels.begin(),
                        e.stack->levels.begin() + static_cast<long>(depth));
      return out;
    }
    throw DomainError("no derivative stack for descriptor: " + kind);
  };
  if (!spec.empty() && spec.front() == '{')
    return from_json_desc(json::parse(spec));
  if (spec == "exp") return exp_stack(depth);
  if (spec == "inv_z") return inv_shift_stack(0.0, depth);
  if (spec == "zsq") return Polynomial({0.0, 0.0, 1.0}).stack(depth);
  if (spec == "identity") return Polynomial({0.0, 1.0}).stack(depth);
  if (spec == "zero") return Polynomial({0.0}).stack(depth);
  throw DomainError("no derivative stack for spec: " + spec);
}

MSequence mseq_from_spec(const std::string& spec) {
  if (!spec.empty() && spec.front() == '[') {
    std::vector<double> values;
    for (const json& v : json::parse(spec)) values.push_back(v.get<double>());
    return MSequence::from_values(std::move(values));
  }
  return MSequence::parse(spec);
}

PathFamily family_from_json(const json& j) {
  const json& gens = j.is_array() ? j : j.at("generators");
  std::vector<Path> paths;
  for (const json& g : gens) paths.push_back(path_from_json(g));
  const bool piecewise = j.is_object() && j.value("piecewise", false);
  std::optional<double> max_length;
  if (j.is_object() && j.contains("max_length"))
    max_length = j.at("max_length").get<double>();
  return PathFamily(std::move(paths), piecewise, max_length);
}

json family_to_json(const PathFamily& f) {
  json gens = json::array();
  for (const Path& p : f.generators()) gens.push_back(path_to_json(p));
  json out{{"generators", gens}, {"piecewise", f.piecewise()}};
  if (f.max_length()) out["max_length"] = *f.max_length();
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("parse error in " + path + ": " + e.what());
  }
}

}  // namespace pathcalc::io
