#pragma once

namespace geoctl {

// Shared numerical tolerances.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kFlowTol = 1e-6;
// Accepted drift of |x| when a caller hands in a point claimed to be on S^3.
inline constexpr double kUnitInputTol = 1e-9;
inline constexpr double kRankTol = 1e-9;
inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kCloudTol = 5e-2;

}  // namespace geoctl
