#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "geoctl/csv_io.hpp"
#include "geoctl/errors.hpp"
#include "geoctl/json_io.hpp"
#include "geoctl/report.hpp"

namespace geoctl::io {
namespace {

namespace fs = std::filesystem;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kDomain;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("geoctl_io_test_" + name);
  fs::remove_all(dir);
  return dir;
}

// Max absolute difference over numeric leaves; infinity when the structure differs.
double json_distance(const Json& a, const Json& b) {
  if (a.is_number() && b.is_number()) return std::abs(a.get<double>() - b.get<double>());
  if (a.type() != b.type() || a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.is_array()) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, json_distance(a[k], b[k]));
    return d;
  }
  if (a.is_object()) {
    double d = 0.0;
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return std::numeric_limits<double>::infinity();
      d = std::max(d, json_distance(it.value(), b.at(it.key())));
    }
    return d;
  }
  return a == b ? 0.0 : std::numeric_limits<double>::infinity();
}

TEST(JsonIoTest, QuaternionRoundTrip) {
  const Quaternion q{0.1, -2.5, 1e-300, 3.0};
  EXPECT_EQ(quaternion_from_json(Json::parse(to_json(q).dump())), q);
  const PureQuaternion p{1, 2, 3};
  EXPECT_EQ(pure_from_json(to_json(p)), p);
  EXPECT_EQ(code_of([] { (void)quaternion_from_json(Json::parse("[1,2,3]")); }), ErrorCode::kArgument);
  EXPECT_EQ(code_of([] { (void)pure_from_json(Json::parse("[1,\"a\",3]")); }), ErrorCode::kArgument);
  EXPECT_EQ(code_of([] { (void)unit_from_json(Json::parse("[0,0,0,0]")); }), ErrorCode::kDegeneratePoint);
  EXPECT_NEAR(unit_from_json(Json::parse("[3,4,0,0]")).value().w, 0.6, 1e-15);
}

TEST(JsonIoTest, FieldAndSo14RoundTrip) {
  const FieldSpec f{Quaternion{1, 2, 3, 4}, {0.5, 0, -1}, {0, 0, 2}};
  const FieldSpec g = field_from_json(Json::parse(to_json(f).dump()));
  EXPECT_EQ(g.q, f.q);
  EXPECT_EQ(g.z, f.z);
  EXPECT_EQ(g.w, f.w);
  const FieldSpec partial = field_from_json(Json::parse(R"({"q": [1, 0, 0, 0]})"));
  EXPECT_EQ(partial.z, PureQuaternion{});
  const So14Matrix m = to_matrix(f);
  EXPECT_EQ(so14_from_json(to_json(m)).matrix(), m.matrix());
  EXPECT_EQ(code_of([] { (void)so14_from_json(Json::array({1, 2, 3})); }), ErrorCode::kArgument);
}

TEST(JsonIoTest, RegionRoundTrip) {
  const auto a = UnitQuaternion::normalize({1, 1, 0, 0});
  const auto b = UnitQuaternion::normalize({1, 0, 1, 0});
  const auto c = UnitQuaternion::normalize({1, 0, 0, 1});
  for (const auto& r : {SphericalRegion::dome(a, 0.25), SphericalRegion::segment(a, b),
                        SphericalRegion::hull({a, b, c})}) {
    // Parsing renormalizes unit quaternions, which may move the last bit.
    const Json back = to_json(region_from_json(Json::parse(to_json(r).dump())));
    EXPECT_LE(json_distance(back, to_json(r)), 1e-15) << back.dump();
  }
  EXPECT_EQ(code_of([] { (void)region_from_json(Json::parse(R"({"kind": "cube"})")); }), ErrorCode::kArgument);
  EXPECT_EQ(code_of([] { (void)region_from_json(Json::parse(R"({"kind": "dome", "axis": [1,0,0,0], "level": 2})")); }),
            ErrorCode::kConfiguration);
}

TEST(JsonIoTest, SystemFromJson) {
  const auto sys = system_from_json(Json::parse(R"({
    "drift": {"q": [1, 0, 0, 0]},
    "controls": [{"q": [0, 1, 0, 0]}, {"q": [0, 0, 1, 0]}],
    "range": {"kind": "finite", "values": [[0, 0], [1, 0], [0, 1]]}
  })"));
  EXPECT_EQ(sys.controls.size(), 2u);
  EXPECT_TRUE(sys.is_symmetric());
  EXPECT_EQ(std::get<ControlRange::Finite>(sys.range.variant()).values.size(), 3u);

  const auto defaulted = system_from_json(Json::parse(R"({"drift": {"q": [1,0,0,0]}, "controls": [{"z": [0,0,1]}]})"));
  const auto& box = std::get<ControlRange::Box>(defaulted.range.variant());
  EXPECT_EQ(box.lo, -1.0);
  EXPECT_EQ(box.hi, 1.0);
  EXPECT_EQ(box.dim, 1);

  const auto back = system_from_json(to_json(sys));
  EXPECT_LE(json_distance(to_json(back), to_json(sys)), 0.0);

  // Two controls but one-dimensional finite values.
  EXPECT_EQ(code_of([] {
              (void)system_from_json(Json::parse(R"({"drift": {}, "controls": [{}, {}],
                 "range": {"kind": "finite", "values": [[1]]}})"));
            }),
            ErrorCode::kArgument);
  EXPECT_EQ(code_of([] { (void)system_from_json(Json::parse("[]")); }), ErrorCode::kArgument);
}

TEST(JsonIoTest, LoadJsonArg) {
  EXPECT_EQ(load_json_arg("  [1, 2]")[1], 2);
  EXPECT_EQ(load_json_arg(R"({"a": 1})")["a"], 1);
  const fs::path dir = scratch_dir("load");
  fs::create_directories(dir);
  std::ofstream(dir / "x.json") << R"({"b": [true]})";
  EXPECT_TRUE(load_json_arg((dir / "x.json").string())["b"][0].get<bool>());
  EXPECT_EQ(code_of([&] { (void)load_json_arg((dir / "missing.json").string()); }), ErrorCode::kIo);
  EXPECT_EQ(code_of([] { (void)load_json_arg("{not json"); }), ErrorCode::kArgument);
  std::ofstream(dir / "bad.json") << "[1,";
  EXPECT_EQ(code_of([&] { (void)load_json_arg((dir / "bad.json").string()); }), ErrorCode::kArgument);
}

TEST(CsvIoTest, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int t = 0; t < 10000; ++t) {
    const double v = std::bit_cast<double>(bits(rng));
    if (!std::isfinite(v)) continue;
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-0.0), "-0");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(CsvIoTest, Tables) {
  CsvTable t({"a", "b"});
  const double row[] = {1.5, -2.0};
  t.add_row(row);
  EXPECT_EQ(t.str(), "a,b\n1.5,-2\n");
  const double wide[] = {1, 2, 3};
  EXPECT_EQ(code_of([&] { t.add_row(wide); }), ErrorCode::kArgument);

  const std::vector<UnitQuaternion> pts{UnitQuaternion{}, UnitQuaternion::normalize({0, 0, 0, 2})};
  EXPECT_EQ(points_table(pts).str(), "w,x,y,z\n1,0,0,0\n0,0,0,1\n");

  const std::vector<Eigen::VectorXd> vs{Eigen::Vector3d(1, 0, 0)};
  const std::vector<std::vector<double>> us{{0.5}};
  EXPECT_EQ(vectors_table(vs, us).str(), "u1,v1,v2,v3\n0.5,1,0,0\n");
  EXPECT_EQ(vectors_table(vs).str(), "v1,v2,v3\n1,0,0\n");

  const fs::path dir = scratch_dir("csv");
  t.write(dir / "nested" / "t.csv");
  std::ifstream in(dir / "nested" / "t.csv");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, t.str());
}

TEST(ReportTest, EmptyReportIsValid) {
  const Report r{"noop", {}, Json::object()};
  EXPECT_TRUE(r.passed());
  const Json j = r.to_json();
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["command"], "noop");
  EXPECT_TRUE(j["checks"].is_array());
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(ReportTest, RoundTripIgnoresUnknownFields) {
  Report r{"verify-ics", {}, Json::object()};
  r.add(ConditionResult{"invariance", true, 1e-4, 1e-3, 10, {}});
  r.add(ConditionResult{"reachability", false, 0.2, 5e-2, 5, {"pair 0 -> 1"}});
  r.data["note"] = "x";
  EXPECT_FALSE(r.passed());
  Json j = r.to_json();
  j["future_field"] = {{"anything", 1}};
  j["checks"][0]["future"] = 2;
  const Report back = Report::from_json(j);
  EXPECT_EQ(back.command, "verify-ics");
  ASSERT_EQ(back.checks.size(), 2u);
  EXPECT_EQ(back.checks[1].failures.size(), 1u);
  EXPECT_EQ(back.checks[1].worst, 0.2);
  EXPECT_EQ(back.data["note"], "x");

  Json no_version = r.to_json();
  no_version.erase("schema_version");
  EXPECT_EQ(code_of([&] { (void)Report::from_json(no_version); }), ErrorCode::kArgument);
}

TEST(ReportTest, WriteProducesParsableFile) {
  const fs::path dir = scratch_dir("report");
  const Report r{"case", {ConditionResult{"c", true, 0.0, 1.0, 1, {}}}, Json::object()};
  r.write(dir / "report.json");
  std::ifstream in(dir / "report.json");
  const Json j = Json::parse(in);
  EXPECT_EQ(j["checks"][0]["name"], "c");
}

}  // namespace
}  // namespace geoctl::io
