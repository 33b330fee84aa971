#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "geoctl/orbits.hpp"
#include "geoctl/report.hpp"

namespace geoctl {

/// The five systems x' = X_1 + ... on S^3 with symmetric controls:
///   i        X_1 + u X_z,                u in [-1, 1]
///   i_prime  X_1 + u X_z,                u in {-1, 1}
///   ii       X_1 + u X_z1 + v X_z2,      (u, v) in [0, 1]^2
///   ii_prime X_1 + u X_z1 + v X_z2,      (u, v) in {(0,0), (1,0), (0,1)}
///   iii      X_1 + u X_i + v X_j + w X_k, (u, v, w) in B[0, r]
enum class CaseId { kI, kIPrime, kII, kIIPrime, kIII };

std::string_view to_string(CaseId id);
/// Accepts i, i_prime, ii, ii_prime, iii (also i', ii'); Error(kArgument) otherwise.
CaseId parse_case_id(std::string_view s);

struct CaseOverrides {
  std::optional<PureQuaternion> z;   // cases i and i_prime, default i
  std::optional<PureQuaternion> z1;  // cases ii and ii_prime, default i
  std::optional<PureQuaternion> z2;  // cases ii and ii_prime, default j
  std::optional<double> radius;      // case iii, default 1
  bool symmetric_box = false;        // case ii with (u, v) in [-1, 1]^2
  VerifyIcsOptions verify;
  int cloud_samples = 200;           // schedules for the exported cloud
  double cloud_horizon = 10.0;
};

struct CaseStudy {
  CaseId id{CaseId::kI};
  ControlSystem system;
  ICSCandidate expected;
};

/// Builds the system and the closed-form expected region. Error(kFixture) when a control
/// quaternion vanishes, or for ii_prime when z1 and z2 are parallel (p1, p2 and 1 on one
/// great circle).
CaseStudy make_case(CaseId id, const CaseOverrides& overrides = {});

struct CaseRun {
  CaseStudy study;
  IcsReport report;
  ReachCloud cloud;            // sampled orbit of 1
  AttractorSweep sweep;        // attractors of the extreme controls
  std::vector<UnitQuaternion> boundary;
};

CaseRun run_case(CaseId id, const CaseOverrides& overrides = {});

/// Report object (checks of verify_ics plus the case description) for a run.
io::Report case_report(const CaseRun& run);

/// Writes report.json, cloud.csv (w,x,y,z), boundary.csv (w,x,y,z) and sweep.csv (w,x,y,z)
/// into `dir`. Error(kIo) when a file cannot be written.
void export_case(const CaseRun& run, const std::filesystem::path& dir);

}  // namespace geoctl
