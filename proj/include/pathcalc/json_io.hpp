#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pathcalc/approx.hpp"
#include "pathcalc/fn.hpp"
#include "pathcalc/geometry.hpp"
#include "pathcalc/spaces.hpp"

namespace pathcalc::io {

using nlohmann::json;

json point_to_json(Point p);
Point point_from_json(const json& j);

json path_to_json(const Path& p);
Path path_from_json(const json& j);

json shape_to_json(const Shape& s);
Shape shape_from_json(const json& j);

/// Function descriptors:
///   {"fn":"poly","coeffs":[[re,im],...],"center":[re,im],"scale":s}
///   {"fn":"exp"} {"fn":"re_part"} {"fn":"identity"} {"fn":"constant","c":[re,im]}
///   {"fn":"inv_shift","a":[re,im]}
///   {"fn":"corpus","entry":"zigzag","name":"f","N":8,"h":1e-4}
Fn fn_from_json(const json& j);

/// Shorthand: a bare name ("exp", "re_part", "identity", "inv_z", "zsq",
/// "zero") or an inline JSON descriptor starting with '{'.
Fn fn_from_spec(const std::string& spec);

/// Derivative stack for descriptors with closed-form derivatives (poly,
/// exp, inv_shift, constant, identity, corpus entries carrying a stack).
DerivativeStack stack_from_spec(const std::string& spec, std::size_t depth);

/// Weight-sequence spec: "factorial", "factorial^2", "factorial*2^n", or a
/// JSON list of values.
MSequence mseq_from_spec(const std::string& spec);

/// Path family from {"generators":[path,...],"piecewise":bool} or from a
/// bare list of paths.
PathFamily family_from_json(const json& j);
json family_to_json(const PathFamily& f);

/// Reads a JSON file; errors carry the path and parse position.
json load_json_file(const std::string& path);

}  // namespace pathcalc::io
