#include "geoctl/orbits.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include <gtest/gtest.h>

#include "geoctl/errors.hpp"

namespace geoctl {
namespace {

UnitQuaternion unit(const Quaternion& q) { return UnitQuaternion::normalize(q); }

ControlSystem two_field_system(const PureQuaternion& z) {
  return {FieldSpec::symmetric(1.0), {FieldSpec::symmetric(Quaternion(z))},
          ControlRange::finite({{-1.0}, {1.0}})};
}

ControlSystem ball_system(double radius) {
  return {FieldSpec::symmetric(1.0),
          {FieldSpec::symmetric(Quaternion::i()), FieldSpec::symmetric(Quaternion::j()),
           FieldSpec::symmetric(Quaternion::k())},
          ControlRange::ball(3, radius)};
}

TEST(ScheduleSamplingTest, SchedulesAreValidAndReproducible) {
  const ControlSystem sys{FieldSpec::symmetric(1.0), {FieldSpec::symmetric(Quaternion::i())},
                          ControlRange::box(1, -1.0, 1.0)};
  double segments = 0;
  int vertices = 0, controls = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Schedule s = draw_schedule(sys, 4.0, 17, i);
    ASSERT_FALSE(s.empty());
    EXPECT_GT(schedule_duration(s), 0.0);
    EXPECT_LE(schedule_duration(s), 4.0 + 1e-12);
    for (const auto& seg : s) {
      EXPECT_GT(seg.duration, 0.0);
      EXPECT_TRUE(sys.range.contains(seg.u));
      vertices += std::abs(seg.u[0]) == 1.0;
      ++controls;
    }
    segments += static_cast<double>(s.size());
    const Schedule again = draw_schedule(sys, 4.0, 17, i);
    ASSERT_EQ(again.size(), s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_EQ(again[k].duration, s[k].duration);
      EXPECT_EQ(again[k].u, s[k].u);
    }
  }
  // Poisson(5) + 1 segments on average; half of the box draws are vertices.
  EXPECT_NEAR(segments / 2000.0, 6.0, 0.2);
  EXPECT_NEAR(static_cast<double>(vertices) / controls, 0.5, 0.03);
}

TEST(OrbitsTest, DriftOnlyCloudStaysOnGreatCircle) {
  const ControlSystem sys{FieldSpec::symmetric(1.0), {}, ControlRange::box(0, 0.0, 0.0)};
  const auto x0 = unit(Quaternion::i());
  const auto cloud = sample_positive_orbit(sys, x0, 5.0, 50, 3);
  ASSERT_FALSE(cloud.points.empty());
  for (const auto& p : cloud.points) {
    EXPECT_LE(std::hypot(p.value().y, p.value().z), 1e-12);
    EXPECT_GT(p.value().w, 0.0);  // moved from i toward 1
    EXPECT_GT(p.value().x, 0.0);
  }
}

TEST(OrbitsTest, CaseIiiCloudStaysInDome) {
  const auto cloud = sample_positive_orbit(ball_system(1.0), UnitQuaternion{}, 10.0, 300, 4);
  for (const auto& p : cloud.points) EXPECT_GE(p.re(), 1 / std::sqrt(2.0) - 1e-3);
}

TEST(OrbitsTest, SmallHorizonCollapsesToSource) {
  const auto x0 = unit({0.2, 0.9, -0.1, 0.3});
  const auto cloud = sample_positive_orbit(ball_system(1.0), x0, 1e-9, 20, 5);
  for (const auto& p : cloud.points) EXPECT_LE(distance(p.value(), x0.value()), 1e-8);
}

TEST(OrbitsTest, InvalidArguments) {
  EXPECT_THROW(sample_positive_orbit(ball_system(1.0), UnitQuaternion{}, 0.0, 10, 1), Error);
  EXPECT_THROW(sample_positive_orbit(ball_system(1.0), UnitQuaternion{}, 1.0, 0, 1), Error);
  ControlSystem bad = ball_system(1.0);
  bad.range = ControlRange::finite({});
  try {
    (void)sample_positive_orbit(bad, UnitQuaternion{}, 1.0, 10, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
  }
}

TEST(OrbitsTest, DeterministicAcrossThreadCounts) {
  const ControlSystem sys{FieldSpec{1.0, {0, 0, 0.5}, {}}, {FieldSpec::symmetric(Quaternion::j())},
                          ControlRange::box(1, -1.0, 1.0)};
  setenv("GEOCTL_THREADS", "1", 1);
  const auto a = sample_positive_orbit(sys, UnitQuaternion{}, 3.0, 40, 9);
  setenv("GEOCTL_THREADS", "4", 1);
  const auto b = sample_positive_orbit(sys, UnitQuaternion{}, 3.0, 40, 9);
  unsetenv("GEOCTL_THREADS");
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) EXPECT_EQ(a.points[k], b.points[k]);
  const auto c = sample_positive_orbit(sys, UnitQuaternion{}, 3.0, 40, 10);
  EXPECT_FALSE(c.points == a.points);
}

TEST(OrbitsTest, SpotReintegrationReproducesCloud) {
  const ControlSystem general{FieldSpec{1.0, {0, 0.7, 0}, {0.2, 0, 0}}, {FieldSpec::symmetric(Quaternion::k())},
                              ControlRange::box(1, -1.0, 1.0)};
  const auto cloud = sample_positive_orbit(general, UnitQuaternion{}, 4.0, 100, 11);
  EXPECT_LE(spot_check_cloud(general, cloud, 0.01, 1), 1e-6);
  const auto sym = sample_positive_orbit(ball_system(1.0), unit({0, 1, 0, 0}), 4.0, 100, 12);
  EXPECT_LE(spot_check_cloud(ball_system(1.0), sym, 0.01, 2), 1e-6);
}

TEST(OrbitsTest, HorizonMonotonicity) {
  const ControlSystem sys = ball_system(1.0);
  const auto x0 = unit({0.1, 0.5, -0.7, 0.2});
  const auto big = sample_positive_orbit(sys, x0, 5.0, 40, 13);
  std::vector<Schedule> prefixes;
  for (const auto& s : big.schedules) prefixes.push_back(truncate_schedule(s, 2.5));
  const auto small = cloud_from_schedules(sys, x0, prefixes);
  ASSERT_FALSE(small.points.empty());
  double worst = 0.0;
  for (const auto& p : small.points) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : big.points) best = std::min(best, distance(p.value(), q.value()));
    worst = std::max(worst, best);
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(OrbitsTest, DomeInvariance) {
  const PureQuaternion z{0, 2, 0};
  const double r1 = dome_invariance_threshold(z);
  const auto sys = two_field_system(z);
  EXPECT_LE(verify_invariance(sys, SphericalRegion::dome(UnitQuaternion{}, 0.5 * r1), 300, 1), 1e-3);
  EXPECT_GT(verify_invariance(sys, SphericalRegion::dome(UnitQuaternion{}, 0.5 * (1 + r1)), 300, 1), 1e-3);
  EXPECT_LE(verify_invariance(sys, SphericalRegion::full_sphere(), 100, 1), 0.0);
}

TEST(OrbitsTest, AttractorSweeps) {
  const PureQuaternion z{0, 0, 1};
  const ControlSystem line{FieldSpec::symmetric(1.0), {FieldSpec::symmetric(Quaternion(z))},
                           ControlRange::box(1, -1.0, 1.0)};
  std::vector<ControlValue> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back({-1.0 + k / 100.0});
  const auto sweep = attractor_sweep(line, grid);
  ASSERT_EQ(sweep.attractors.size(), grid.size());
  const auto p1 = unit(Quaternion(1.0, z)), p2 = unit(Quaternion(1.0, -z));
  double gap = 0.0;
  for (std::size_t k = 0; k < sweep.attractors.size(); ++k) {
    EXPECT_LE(distance_to_arc(p1, p2, sweep.attractors[k].point), 1e-12);
    if (k) gap = std::max(gap, distance(sweep.attractors[k].point.value(), sweep.attractors[k - 1].point.value()));
  }
  EXPECT_LE(gap, 1e-2);
  EXPECT_LE(distance(sweep.attractors.front().point.value(), p2.value()), 1e-15);
  EXPECT_LE(distance(sweep.attractors.back().point.value(), p1.value()), 1e-15);
  EXPECT_LE(distance(sweep.attractors[100].point.value(), Quaternion(1.0)), 1e-15);

  const auto ball = ball_system(1.0);
  const auto rim = attractor_sweep(ball, ball.range.extreme_points(100));
  for (std::size_t k = 0; k < rim.attractors.size(); ++k) {
    const double norm_u = std::hypot(rim.controls[k][0], rim.controls[k][1], rim.controls[k][2]);
    EXPECT_NEAR(rim.attractors[k].point.re(), 1 / std::sqrt(1 + norm_u * norm_u), 1e-12);
  }

  const ControlSystem zero_drift{FieldSpec{}, {FieldSpec::symmetric(1.0)}, ControlRange::box(1, 0.0, 1.0)};
  const std::vector<ControlValue> with_zero{{0.0}, {1.0}};
  EXPECT_EQ(attractor_sweep(zero_drift, with_zero).skipped, 1u);

  const ControlSystem twisted{FieldSpec{1.0, {1, 0, 0}, {}}, {}, ControlRange::box(0, 0.0, 0.0)};
  try {
    (void)attractor_sweep(twisted, std::vector<ControlValue>{{}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfiguration);
  }
}

TEST(OrbitsTest, CandidateValidation) {
  ICSCandidate good{SphericalRegion::dome(UnitQuaternion{}, 0.5), {{UnitQuaternion{}, SingularityKind::kAttractor}}};
  EXPECT_NO_THROW(good.validate());
  ICSCandidate bad{SphericalRegion::dome(UnitQuaternion{}, 0.5), {{unit(Quaternion::i()), SingularityKind::kAttractor}}};
  EXPECT_THROW(bad.validate(), Error);
}

VerifyIcsOptions quick_options() {
  VerifyIcsOptions o;
  o.samples = 600;
  o.grid = 6;
  o.invariance_trials = 300;
  o.attraction_grid = 16;
  return o;
}

TEST(VerifyIcsTest, SegmentOfCaseIPrimePasses) {
  const PureQuaternion z{1, 0, 0};
  const auto p1 = unit(Quaternion(1.0, z)), p2 = unit(Quaternion(1.0, -z));
  const ICSCandidate cand{SphericalRegion::segment(p1, p2), {}};
  const auto report = verify_ics(two_field_system(z), cand, quick_options());
  EXPECT_TRUE(report.invariance.passed);
  EXPECT_TRUE(report.reachability.passed) << report.reachability.worst;
  EXPECT_TRUE(report.attraction.passed) << report.attraction.worst;
  EXPECT_TRUE(report.passed());
}

TEST(VerifyIcsTest, LargerDomeFailsReachability) {
  const ICSCandidate cand{SphericalRegion::dome(UnitQuaternion{}, 0.5), {}};
  const auto report = verify_ics(ball_system(1.0), cand, quick_options());
  EXPECT_TRUE(report.invariance.passed);
  EXPECT_FALSE(report.reachability.passed);
  EXPECT_FALSE(report.reachability.failures.empty());
  EXPECT_FALSE(report.passed());
}

// Every attractor of the frozen fields is approached from every starting point.
TEST(VerifyIcsTest, AttractorsAreApproachedFromEverywhere) {
  const PureQuaternion z{0, 1, 0};
  const auto sys = two_field_system(z);
  const auto sweep = attractor_sweep(sys, sys.range.extreme_points());
  std::vector<UnitQuaternion> targets;
  for (const auto& a : sweep.attractors) targets.push_back(a.point);
  const auto p1 = unit(Quaternion(1.0, z));
  int used = 0;
  for (const auto& x : sample_sphere(40, 21)) {
    if (used == 20) break;
    if (distance(x.value(), -p1.value()) < 0.05 || distance(x.value(), -unit(Quaternion(1.0, -z)).value()) < 0.05) continue;
    ++used;
    for (const double d : approach_distances(sys, x, targets, 30.0, 200, 22)) EXPECT_LE(d, 5e-2);
  }
  EXPECT_EQ(used, 20);
}

}  // namespace
}  // namespace geoctl
