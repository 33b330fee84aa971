#include "geoctl/convex.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "geoctl/errors.hpp"
#include "geoctl/fields.hpp"
#include "geoctl/nnls.hpp"

namespace geoctl {
namespace {

// Exhaustive oracle: the NNLS optimum is the unconstrained least-squares solution on some
// support set, so minimize over every support whose solution is nonnegative.
double brute_force_nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const auto n = a.cols();
  double best = b.norm();
  for (long mask = 1; mask < (1L << n); ++mask) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (mask & (1L << j)) idx.push_back(j);
    }
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
    const Eigen::VectorXd x = sub.completeOrthogonalDecomposition().solve(b);
    if (x.minCoeff() >= 0.0) best = std::min(best, (sub * x - b).norm());
  }
  return best;
}

UnitQuaternion unit(double w, double x, double y, double z) {
  return UnitQuaternion::normalize({w, x, y, z});
}

TEST(NnlsTest, MatchesExhaustiveOracle) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const int cols = 1 + t % 6;
    Eigen::MatrixXd a(4, cols);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < cols; ++c) a(r, c) = n(rng);
    }
    Eigen::VectorXd b(4);
    for (int r = 0; r < 4; ++r) b(r) = n(rng);
    const NnlsResult res = nnls(a, b);
    EXPECT_GE(res.x.minCoeff(), 0.0);
    EXPECT_NEAR(res.residual, brute_force_nnls(a, b), 1e-9);
    EXPECT_NEAR(res.residual, (a * res.x - b).norm(), 1e-12);
  }
}

TEST(NnlsTest, ExactNonnegativeCombination) {
  Eigen::MatrixXd a(2, 3);
  a << 1, 0, 1, 0, 1, 1;
  const Eigen::Vector2d b(2, 3);
  EXPECT_LE(nnls(a, b).residual, 1e-12);
  EXPECT_NEAR(nnls(a, Eigen::Vector2d(-1, 0)).residual, 1.0, 1e-12);
}

TEST(ConvexTest, ConeDistanceAndPointedness) {
  const std::vector<UnitQuaternion> gens{unit(1, 0, 0, 0), unit(0, 1, 0, 0), unit(0, 0, 1, 0)};
  EXPECT_LE(cone_distance(gens, {0.3, 0.2, 0.5, 0}), 1e-12);
  EXPECT_NEAR(cone_distance(gens, {0, 0, 0, 1}), 1.0, 1e-12);
  EXPECT_NEAR(cone_distance(gens, {-1, 0, 0, 0}), 1.0, 1e-12);
  EXPECT_TRUE(is_pointed(gens));
  EXPECT_TRUE(is_pointed(std::vector<UnitQuaternion>{unit(0, 0, 0, 1)}));
  EXPECT_FALSE(is_pointed(std::vector<UnitQuaternion>{unit(0, 1, 0, 0), unit(0, -1, 0, 0)}));
  EXPECT_FALSE(is_pointed(std::vector<UnitQuaternion>{unit(0, 1, 0, 0), unit(0, 0, 1, 0), unit(0, -1, -1, 0)}));
}

TEST(ConvexTest, FactoryValidation) {
  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;  // sentinel: no error
  };
  EXPECT_EQ(code_of([] { (void)SphericalRegion::dome(UnitQuaternion{}, 1.0); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { (void)SphericalRegion::dome(UnitQuaternion{}, -0.1); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { (void)SphericalRegion::segment(unit(1, 0, 0, 0), unit(-1, 0, 0, 0)); }),
            ErrorCode::kNonUniqueGeodesic);
  EXPECT_EQ(code_of([] { (void)SphericalRegion::hull({}); }), ErrorCode::kConfiguration);
  EXPECT_EQ(code_of([] { (void)SphericalRegion::hull({unit(0, 1, 0, 0), unit(0, -1, 0, 0)}); }),
            ErrorCode::kConfiguration);
  EXPECT_EQ(SphericalRegion::dome(UnitQuaternion{}, 0.5).kind_name(), "dome");
  EXPECT_EQ(SphericalRegion::segment(unit(1, 0, 0, 0), unit(0, 1, 0, 0)).kind_name(), "segment");
}

TEST(ConvexTest, DomeMembership) {
  const auto dome = SphericalRegion::dome(UnitQuaternion{}, 1 / std::sqrt(2.0));
  EXPECT_TRUE(contains(dome, UnitQuaternion{}));
  EXPECT_TRUE(contains(dome, unit(1, 1, 0, 0)));  // on the rim
  EXPECT_FALSE(contains(dome, unit(1, 1.01, 0, 0)));
  EXPECT_NEAR(exit_depth(dome, unit(0, 1, 0, 0)), 1 / std::sqrt(2.0), 1e-15);
  const auto sphere = SphericalRegion::full_sphere();
  for (const auto& p : sample_sphere(100, 3)) EXPECT_TRUE(contains(sphere, p));
  EXPECT_TRUE(contains(sphere, unit(-1, 0, 0, 0)));
}

TEST(ConvexTest, ArcDistanceAgainstDenseSampling) {
  const auto p1 = unit(1, 1, 0, 0), p2 = unit(1, -0.3, 0.8, 0.1);
  const auto arc = geodesic_segment_points(p1, p2, 20001);
  for (const auto& p : sample_sphere(200, 4)) {
    double oracle = std::numeric_limits<double>::infinity();
    for (const auto& a : arc) oracle = std::min(oracle, distance(p.value(), a.value()));
    const double d = distance_to_arc(p1, p2, p);
    EXPECT_LE(d, oracle + 1e-12);
    EXPECT_NEAR(d, oracle, 1e-6);
  }
}

TEST(ConvexTest, GeodesicSegmentPoints) {
  const auto p1 = unit(1, 0, 0, 0), p2 = unit(0, 0, 1, 0);
  const auto pts = geodesic_segment_points(p1, p2, 5);
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_EQ(pts.front(), p1);
  EXPECT_EQ(pts.back(), p2);
  EXPECT_LE(distance(pts[2].value(), unit(1, 0, 1, 0).value()), 1e-15);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    EXPECT_NEAR(distance(pts[k].value(), pts[k + 1].value()), 2 * std::sin(M_PI / 16), 1e-14);
  }
  EXPECT_THROW(geodesic_segment_points(p1, -p1, 5), Error);
  EXPECT_THROW(geodesic_segment_points(p1, p2, 1), Error);
}

TEST(ConvexTest, SamplesLieInRegion) {
  const std::vector<SphericalRegion> regions{
      SphericalRegion::dome(unit(1, 1, 0, 0), 0.3),
      SphericalRegion::segment(unit(1, 1, 0, 0), unit(1, -1, 0, 0)),
      SphericalRegion::hull({unit(1, 0, 0, 0), unit(1, 1, 0, 0), unit(1, 0, 1, 0), unit(1, 1, 1, 0)})};
  for (const auto& r : regions) {
    for (const auto& p : sample_region(r, 300, 5, 0.5)) EXPECT_LE(exit_depth(r, p), 1e-9) << r.kind_name();
    for (const auto& p : boundary_points(r, 40)) EXPECT_LE(exit_depth(r, p), 1e-9) << r.kind_name();
  }
  const auto rim = boundary_points(regions[0], 64);
  EXPECT_EQ(rim.size(), 64u);
  for (const auto& p : rim) EXPECT_NEAR(p.dot(unit(1, 1, 0, 0).value()), 0.3, 1e-12);
}

TEST(ConvexTest, DomeBoundaryFormulaMatchesField) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const PureQuaternion z{u(rng) * 2 - 1, u(rng) * 2 - 1, u(rng) * 2};
    const PureQuaternion zhat = z * (1.0 / z.norm());
    PureQuaternion e = zhat.cross(PureQuaternion{1, 0, 0});
    if (e.norm() < 1e-3) e = zhat.cross(PureQuaternion{0, 1, 0});
    e = e * (1.0 / e.norm());
    const double a = u(rng), t = u(rng) * M_PI;
    const double s = std::sqrt(1 - a * a);
    const auto p = UnitQuaternion::normalize(Quaternion(a, (zhat * std::cos(t) + e * std::sin(t)) * s));
    for (const double sign : {1.0, -1.0}) {
      const double direct = evaluate(FieldSpec::symmetric(Quaternion(1.0, z * sign)), p).re();
      EXPECT_NEAR(dome_boundary_real_part(z, sign, a, t), direct, 1e-12);
    }
    // r_t is the zero of the boundary real part for cos t > 0.
    if (std::cos(t) > 0.05) {
      EXPECT_NEAR(dome_boundary_real_part(z, 1.0, critical_level(z, t), t), 0.0, 1e-12);
    }
  }
  const PureQuaternion z{0, 2, 0};
  EXPECT_DOUBLE_EQ(dome_invariance_threshold(z), 1 / std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(critical_level(z, 0.0), dome_invariance_threshold(z));
}

}  // namespace
}  // namespace geoctl
