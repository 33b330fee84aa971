#pragma once

#include <string>

#include <json.hpp>

#include "geoctl/control_system.hpp"
#include "geoctl/convex.hpp"
#include "geoctl/fields.hpp"
#include "geoctl/lie_so14.hpp"
#include "geoctl/orbits.hpp"

namespace geoctl::io {

using Json = nlohmann::json;

/// Parses `arg` as inline JSON when it starts with '{' or '[' (after blanks), otherwise reads
/// it as a file path. Error(kIo) for an unreadable file, Error(kArgument) for bad JSON.
Json load_json_arg(const std::string& arg);

// Shapes:
//   Quaternion      [w, x, y, z]
//   PureQuaternion  [x, y, z]
//   FieldSpec       {"q": [4], "z": [3], "w": [3]}   (missing parts are zero)
//   So14Matrix      25 reals, row-major
//   SphericalRegion {"kind": "dome", "axis": [4], "level": a}
//                   {"kind": "segment", "p1": [4], "p2": [4]}
//                   {"kind": "hull", "generators": [[4], ...]}
//   ControlSystem   {"drift": FieldSpec, "controls": [FieldSpec...], "range": range}
//   range           {"kind": "box", "lo": a, "hi": b} | {"kind": "finite", "values": [[..]..]}
//                   | {"kind": "ball", "radius": r}   (box and ball take m from "controls")
// Malformed input raises Error(kArgument); semantic violations raise the constructor's error.

Quaternion quaternion_from_json(const Json& j);
Json to_json(const Quaternion& q);
PureQuaternion pure_from_json(const Json& j);
Json to_json(const PureQuaternion& p);
UnitQuaternion unit_from_json(const Json& j);

FieldSpec field_from_json(const Json& j);
Json to_json(const FieldSpec& f);

So14Matrix so14_from_json(const Json& j);
Json to_json(const So14Matrix& m);

SphericalRegion region_from_json(const Json& j);
Json to_json(const SphericalRegion& r);

ControlRange range_from_json(const Json& j, int dim);
Json to_json(const ControlRange& r);

ControlSystem system_from_json(const Json& j);
Json to_json(const ControlSystem& s);

Json to_json(const ConditionResult& c);

}  // namespace geoctl::io
