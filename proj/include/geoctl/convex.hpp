#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "geoctl/quaternion.hpp"
#include "geoctl/tolerances.hpp"

namespace geoctl {

/// Spherically convex subset of S^3, described through its generating pointed cone.
class SphericalRegion {
 public:
  /// {p : <p, axis> >= level}, level in [0, 1).
  struct Dome {
    UnitQuaternion axis;
    double level{0.0};
  };
  /// Minimal geodesic arc from p1 to p2 (p1 != -p2).
  struct Segment {
    UnitQuaternion p1;
    UnitQuaternion p2;
  };
  /// S^3 intersected with the closed conic hull of the generators (pointed).
  struct Hull {
    std::vector<UnitQuaternion> generators;
  };
  using Variant = std::variant<Dome, Segment, Hull>;

  /// Error(kConfiguration) for a level outside [0, 1).
  static SphericalRegion dome(const UnitQuaternion& axis, double level);
  /// Error(kNonUniqueGeodesic) for antipodal endpoints.
  static SphericalRegion segment(const UnitQuaternion& p1, const UnitQuaternion& p2);
  /// Error(kConfiguration) for an empty or non-pointed generator list.
  static SphericalRegion hull(std::vector<UnitQuaternion> generators);
  /// The whole sphere, as a dome of level -1 (only for tests and diagnostics).
  static SphericalRegion full_sphere();

  const Variant& variant() const { return region_; }
  std::string_view kind_name() const;

  /// Re-checks the invariants of the stored representation.
  void validate() const;

 private:
  explicit SphericalRegion(Variant v) : region_(std::move(v)) {}
  Variant region_;
};

/// Distance-based membership: dome <p,axis> >= level - tol; segment and hull by the
/// chordal distance from p to the arc or to the generating cone.
bool contains(const SphericalRegion& region, const UnitQuaternion& p, double tol = kMembershipTol);

/// Signed exit depth: dome level - <p,axis> (negative inside); segment and hull the
/// distance to the set (0 inside).
double exit_depth(const SphericalRegion& region, const UnitQuaternion& p);

/// Chordal distance from p to the minimal arc p1 -> p2.
double distance_to_arc(const UnitQuaternion& p1, const UnitQuaternion& p2, const UnitQuaternion& p);

/// min over a >= 0 of |sum a_i g_i - p|, by nonnegative least squares.
double cone_distance(std::span<const UnitQuaternion> generators, const Quaternion& p);

/// True iff the conic hull of the generators contains no line, i.e. 0 is not a nontrivial
/// nonnegative combination. Decided by min |G a|^2 + (sum a - 1)^2 over a >= 0, which is 0
/// exactly when such a combination exists; residual < 1e-9 means not pointed.
bool is_pointed(std::span<const UnitQuaternion> generators);

/// n points uniform in angle along the minimal arc from p1 to p2, endpoints exact.
/// Error(kNonUniqueGeodesic) for antipodal inputs, Error(kArgument) for n < 2.
std::vector<UnitQuaternion> geodesic_segment_points(const UnitQuaternion& p1,
                                                    const UnitQuaternion& p2, int n);

/// r_1 = 1 / sqrt(1 + |z|^2): domes Re >= a with a < r_1 are invariant under X_{(1 +- z,0,0)}.
double dome_invariance_threshold(const PureQuaternion& z);

/// r_t = 1 / sqrt(1 + |z|^2 cos^2 t), the level where Re X_{(1 -+ z,0,0)}(a + w) changes sign
/// when t is the angle between w and z.
double critical_level(const PureQuaternion& z, double t);

/// Real part of X_{(1 + sign z,0,0)} at a + w, |w| = sqrt(1 - a^2), angle t between w and z:
/// 1 - a^2 - sign a sqrt(1 - a^2) |z| cos t.
double dome_boundary_real_part(const PureQuaternion& z, double sign, double a, double t);

/// Random points of the region. A fraction `boundary_fraction` is drawn on the relative
/// boundary (dome rim, segment endpoints, hull edges), the rest from the interior.
std::vector<UnitQuaternion> sample_region(const SphericalRegion& region, int n, std::uint64_t seed,
                                          double boundary_fraction = 0.0);

/// Deterministic sample of the relative boundary: n rim points for a dome, both endpoints
/// for a segment, points along every pairwise generator arc for a hull.
std::vector<UnitQuaternion> boundary_points(const SphericalRegion& region, int n);

/// Uniformly distributed points on S^3.
std::vector<UnitQuaternion> sample_sphere(int n, std::uint64_t seed);

}  // namespace geoctl
