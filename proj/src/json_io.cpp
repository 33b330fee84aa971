#include "geoctl/json_io.hpp"

#include <fstream>
#include <sstream>

#include "geoctl/errors.hpp"

namespace geoctl::io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kArgument, what); }

std::vector<double> numbers(const Json& j, std::size_t expected, const char* what) {
  if (!j.is_array() || (expected != 0 && j.size() != expected)) {
    bad(std::string(what) + ": expected an array of " + std::to_string(expected) + " numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) bad(std::string(what) + ": non-numeric entry");
    out.push_back(e.get<double>());
  }
  return out;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number()) bad(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::string kind(const Json& j) {
  const Json& k = member(j, "kind");
  if (!k.is_string()) bad("\"kind\" must be a string");
  return k.get<std::string>();
}

}  // namespace

Json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + arg);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Quaternion quaternion_from_json(const Json& j) {
  const auto v = numbers(j, 4, "quaternion");
  return {v[0], v[1], v[2], v[3]};
}

Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }

PureQuaternion pure_from_json(const Json& j) {
  const auto v = numbers(j, 3, "pure quaternion");
  return {v[0], v[1], v[2]};
}

Json to_json(const PureQuaternion& p) { return Json::array({p.x, p.y, p.z}); }

UnitQuaternion unit_from_json(const Json& j) { return UnitQuaternion::normalize(quaternion_from_json(j)); }

FieldSpec field_from_json(const Json& j) {
  if (!j.is_object()) bad("field spec must be an object");
  FieldSpec f;
  if (j.contains("q")) f.q = quaternion_from_json(j.at("q"));
  if (j.contains("z")) f.z = pure_from_json(j.at("z"));
  if (j.contains("w")) f.w = pure_from_json(j.at("w"));
  return f;
}

Json to_json(const FieldSpec& f) { return {{"q", to_json(f.q)}, {"z", to_json(f.z)}, {"w", to_json(f.w)}}; }

So14Matrix so14_from_json(const Json& j) {
  const auto v = numbers(j, 25, "so(1,4) matrix");
  return So14Matrix::from_row_major(v);
}

Json to_json(const So14Matrix& m) {
  const auto e = m.row_major();
  return Json(std::vector<double>(e.begin(), e.end()));
}

SphericalRegion region_from_json(const Json& j) {
  const std::string k = kind(j);
  if (k == "dome") {
    return SphericalRegion::dome(unit_from_json(member(j, "axis")), number(j, "level"));
  }
  if (k == "segment") {
    return SphericalRegion::segment(unit_from_json(member(j, "p1")), unit_from_json(member(j, "p2")));
  }
  if (k == "hull") {
    const Json& g = member(j, "generators");
    if (!g.is_array()) bad("\"generators\" must be an array");
    std::vector<UnitQuaternion> gens;
    for (const auto& e : g) gens.push_back(unit_from_json(e));
    return SphericalRegion::hull(std::move(gens));
  }
  bad("unknown region kind \"" + k + "\"");
}

Json to_json(const SphericalRegion& r) {
  return std::visit(
      Overloaded{[](const SphericalRegion::Dome& d) {
                   return Json{{"kind", "dome"}, {"axis", to_json(d.axis.value())}, {"level", d.level}};
                 },
                 [](const SphericalRegion::Segment& s) {
                   return Json{{"kind", "segment"}, {"p1", to_json(s.p1.value())}, {"p2", to_json(s.p2.value())}};
                 },
                 [](const SphericalRegion::Hull& h) {
                   Json gens = Json::array();
                   for (const auto& g : h.generators) gens.push_back(to_json(g.value()));
                   return Json{{"kind", "hull"}, {"generators", gens}};
                 }},
      r.variant());
}

ControlRange range_from_json(const Json& j, int dim) {
  const std::string k = kind(j);
  if (k == "box") return ControlRange::box(dim, number(j, "lo"), number(j, "hi"));
  if (k == "ball") return ControlRange::ball(dim, number(j, "radius"));
  if (k == "finite") {
    const Json& v = member(j, "values");
    if (!v.is_array()) bad("\"values\" must be an array");
    std::vector<ControlValue> values;
    for (const auto& e : v) values.push_back(numbers(e, static_cast<std::size_t>(dim), "control value"));
    return ControlRange::finite(std::move(values));
  }
  bad("unknown range kind \"" + k + "\"");
}

Json to_json(const ControlRange& r) {
  return std::visit(Overloaded{[](const ControlRange::Box& b) {
                                 return Json{{"kind", "box"}, {"lo", b.lo}, {"hi", b.hi}};
                               },
                               [](const ControlRange::Finite& f) {
                                 return Json{{"kind", "finite"}, {"values", f.values}};
                               },
                               [](const ControlRange::Ball& b) {
                                 return Json{{"kind", "ball"}, {"radius", b.radius}};
                               }},
                    r.variant());
}

ControlSystem system_from_json(const Json& j) {
  ControlSystem s;
  s.drift = field_from_json(member(j, "drift"));
  if (j.contains("controls")) {
    if (!j.at("controls").is_array()) bad("\"controls\" must be an array");
    for (const auto& c : j.at("controls")) s.controls.push_back(field_from_json(c));
  }
  const int m = static_cast<int>(s.controls.size());
  s.range = j.contains("range") ? range_from_json(j.at("range"), m) : ControlRange::box(m, -1.0, 1.0);
  s.validate();
  return s;
}

Json to_json(const ControlSystem& s) {
  Json controls = Json::array();
  for (const auto& c : s.controls) controls.push_back(to_json(c));
  return {{"drift", to_json(s.drift)}, {"controls", controls}, {"range", to_json(s.range)}};
}

Json to_json(const ConditionResult& c) {
  return {{"name", c.name},           {"passed", c.passed},   {"worst", c.worst},
          {"tolerance", c.tolerance}, {"checked", c.checked}, {"failures", c.failures}};
}

}  // namespace geoctl::io
