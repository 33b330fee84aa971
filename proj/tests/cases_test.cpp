#include "geoctl/cases.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "geoctl/errors.hpp"

namespace geoctl {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CaseOverrides quick() {
  CaseOverrides o;
  o.verify.samples = 400;
  o.verify.grid = 5;
  o.verify.invariance_trials = 200;
  o.verify.attraction_grid = 12;
  o.cloud_samples = 50;
  return o;
}

TEST(CasesTest, ParseIds) {
  EXPECT_EQ(parse_case_id("i"), CaseId::kI);
  EXPECT_EQ(parse_case_id("i'"), CaseId::kIPrime);
  EXPECT_EQ(parse_case_id("ii_prime"), CaseId::kIIPrime);
  EXPECT_EQ(to_string(parse_case_id("iii")), "iii");
  EXPECT_THROW(parse_case_id("iv"), Error);
}

TEST(CasesTest, SegmentEndpointsForZEqualK) {
  CaseOverrides o;
  o.z = PureQuaternion{0, 0, 1};
  const CaseStudy c = make_case(CaseId::kIPrime, o);
  const auto& seg = std::get<SphericalRegion::Segment>(c.expected.region.variant());
  const double s = 1 / std::sqrt(2.0);
  EXPECT_LE(distance(seg.p1.value(), Quaternion{s, 0, 0, s}), 1e-15);
  EXPECT_LE(distance(seg.p2.value(), Quaternion{s, 0, 0, -s}), 1e-15);
  EXPECT_EQ(c.expected.attractor_set.size(), 2u);
}

TEST(CasesTest, ExpectedRegions) {
  EXPECT_EQ(make_case(CaseId::kI).expected.region.kind_name(), "segment");
  const auto ii = make_case(CaseId::kII);
  EXPECT_EQ(std::get<SphericalRegion::Hull>(ii.expected.region.variant()).generators.size(), 4u);
  EXPECT_EQ(std::get<SphericalRegion::Hull>(make_case(CaseId::kIIPrime).expected.region.variant()).generators.size(),
            3u);
  CaseOverrides sym;
  sym.symmetric_box = true;
  EXPECT_EQ(std::get<SphericalRegion::Hull>(make_case(CaseId::kII, sym).expected.region.variant()).generators.size(),
            5u);
  CaseOverrides r2;
  r2.radius = 2.0;
  const auto iii = make_case(CaseId::kIII, r2);
  EXPECT_NEAR(std::get<SphericalRegion::Dome>(iii.expected.region.variant()).level, 1 / std::sqrt(5.0), 1e-15);
}

TEST(CasesTest, FixtureErrors) {
  auto code_of = [](const CaseOverrides& o, CaseId id) {
    try {
      (void)make_case(id, o);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kDomain;
  };
  CaseOverrides parallel;
  parallel.z1 = PureQuaternion{1, 0, 0};
  parallel.z2 = PureQuaternion{-2, 0, 0};
  EXPECT_EQ(code_of(parallel, CaseId::kIIPrime), ErrorCode::kFixture);
  CaseOverrides zero;
  zero.z = PureQuaternion{};
  EXPECT_EQ(code_of(zero, CaseId::kI), ErrorCode::kFixture);
  CaseOverrides negative;
  negative.radius = -1.0;
  EXPECT_EQ(code_of(negative, CaseId::kIII), ErrorCode::kFixture);
}

TEST(CasesTest, ExportIsDeterministic) {
  const fs::path a = fs::temp_directory_path() / "geoctl_cases_a";
  const fs::path b = fs::temp_directory_path() / "geoctl_cases_b";
  fs::remove_all(a);
  fs::remove_all(b);
  export_case(run_case(CaseId::kIII, quick()), a);
  export_case(run_case(CaseId::kIII, quick()), b);
  for (const char* f : {"report.json", "cloud.csv", "boundary.csv", "sweep.csv"}) {
    const std::string ta = slurp(a / f);
    EXPECT_FALSE(ta.empty()) << f;
    EXPECT_EQ(ta, slurp(b / f)) << f;
  }
}

TEST(CasesTest, DomeBoundaryFileSitsOnTheRim) {
  // Default verification options: the reachability check needs the full schedule count to
  // resolve rim-to-rim pairs within delta.
  const CaseRun run = run_case(CaseId::kIII);
  EXPECT_TRUE(run.report.passed());
  ASSERT_EQ(run.boundary.size(), 256u);
  for (const auto& p : run.boundary) EXPECT_NEAR(p.value().w, 1 / std::sqrt(2.0), 1e-12);
  const auto report = case_report(run);
  EXPECT_EQ(report.data["case"], "iii");
  EXPECT_TRUE(report.passed());
}

}  // namespace
}  // namespace geoctl
