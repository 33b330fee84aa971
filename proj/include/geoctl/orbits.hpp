#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "geoctl/control_system.hpp"
#include "geoctl/convex.hpp"
#include "geoctl/fields.hpp"

namespace geoctl {

struct SamplingOptions {
  double record_dt = 0.025;  // points are recorded on the absolute grid k * record_dt
  double step = 1e-2;        // RK4 step for non-symmetric frozen fields
  double mean_switches = 5.0;
};

/// Seed of an independent sub-stream of `seed` (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Random piecewise-constant schedule number `index` of the stream `seed`: Poisson(5) + 1
/// segments cutting a total time uniform in (0, horizon] at uniform fractions, each with a
/// control drawn by ControlRange::sample. Depends only on (seed, index).
Schedule draw_schedule(const ControlRange& range, double horizon, std::uint64_t seed,
                       std::uint64_t index, const SamplingOptions& options = {});
inline Schedule draw_schedule(const ControlSystem& system, double horizon, std::uint64_t seed,
                              std::uint64_t index, const SamplingOptions& options = {}) {
  return draw_schedule(system.range, horizon, seed, index, options);
}

/// Calls visit(t, p) for every recorded point of the schedule started at x0 (grid times in
/// each segment plus every switching time and the end time; t = 0 is not reported).
/// Symmetric frozen fields are flowed in closed form, others by RK4. Returning false
/// from `visit` stops the walk early.
void walk_schedule(const ControlSystem& system, const UnitQuaternion& x0,
                   const Schedule& schedule, const SamplingOptions& options,
                   const std::function<bool(double, const UnitQuaternion&)>& visit);

/// Sampled positive orbit O+_{<= horizon}(source).
struct ReachCloud {
  UnitQuaternion source;
  std::vector<UnitQuaternion> points;
  std::vector<std::size_t> schedule_of_point;
  std::vector<double> time_of_point;
  std::vector<Schedule> schedules;
  double horizon{0.0};
  int samples{0};
  std::uint64_t seed{0};
};

/// Error(kArgument) unless horizon > 0 and samples >= 1; Error(kConfiguration) for an
/// invalid system. Deterministic in (system, x0, horizon, samples, seed) for any thread count.
ReachCloud sample_positive_orbit(const ControlSystem& system, const UnitQuaternion& x0,
                                 double horizon, int samples, std::uint64_t seed,
                                 const SamplingOptions& options = {});

/// Cloud generated by explicit schedules (e.g. truncations of another cloud's schedules).
ReachCloud cloud_from_schedules(const ControlSystem& system, const UnitQuaternion& x0,
                                std::vector<Schedule> schedules,
                                const SamplingOptions& options = {});

/// Re-integrates a `fraction` of the cloud's points (at least one) from the logged schedule
/// with plain RK4 at step 1e-3 and returns the largest deviation.
double spot_check_cloud(const ControlSystem& system, const ReachCloud& cloud,
                        double fraction = 0.01, std::uint64_t seed = 0);

/// For each target, the smallest chordal distance to any point of the sampled orbit of x0;
/// same schedules as sample_positive_orbit, without storing the cloud.
std::vector<double> approach_distances(const ControlSystem& system, const UnitQuaternion& x0,
                                       std::span<const UnitQuaternion> targets, double horizon,
                                       int samples, std::uint64_t seed,
                                       const SamplingOptions& options = {});

struct ICSCandidate {
  SphericalRegion region;
  std::vector<Singularity> attractor_set;

  /// Error(kConfiguration) if some attractor lies outside the region (tol 1e-9).
  void validate() const;
};

/// Largest signed exit depth seen along random schedules started in the region (half of
/// the starts on its relative boundary). Negative or zero means no exit was observed.
double verify_invariance(const ControlSystem& system, const SphericalRegion& region, int trials,
                         std::uint64_t seed, double horizon = 10.0,
                         const SamplingOptions& options = {});

struct ConditionResult {
  std::string name;
  bool passed{true};
  double worst{0.0};      // the measured quantity compared with the tolerance
  double tolerance{0.0};
  int checked{0};
  std::vector<std::string> failures;
};

struct IcsReport {
  ConditionResult invariance;
  ConditionResult reachability;
  ConditionResult attraction;
  std::vector<ConditionResult> extra;

  bool passed() const;
  std::vector<const ConditionResult*> conditions() const;
};

struct VerifyIcsOptions {
  int grid = 8;                 // region points used as sources and targets
  double horizon = 30.0;
  int samples = 2000;
  std::uint64_t seed = 1;
  double delta = 5e-2;          // approximate reachability radius
  int invariance_trials = 1000;
  double invariance_horizon = 10.0;
  double invariance_tol = 1e-3;
  int attraction_grid = 32;     // starting points on S^3
  double attraction_tol = 1e-3;
  double repeller_exclusion = 5e-2;
  SamplingOptions sampling;
};

/// Points used as reachability sources/targets: evenly spaced along a segment, otherwise
/// random region points with half of them on the relative boundary.
std::vector<UnitQuaternion> region_grid(const SphericalRegion& region, int n, std::uint64_t seed);

/// Numerical check of the three invariant-control-set conditions for a candidate region:
/// (a) no exit along random schedules, (b) delta-approximate reachability between grid
/// points of the region, (c) entry into the region from a global grid of S^3 (balls around
/// repellers of extreme controls excluded).
IcsReport verify_ics(const ControlSystem& system, const ICSCandidate& candidate,
                     const VerifyIcsOptions& options = {});

struct AttractorSweep {
  std::vector<Singularity> attractors;
  std::vector<ControlValue> controls;  // the control behind each attractor
  std::size_t skipped{0};              // controls with q(u) = 0
};

/// Attractors q(u)/|q(u)| of the frozen fields, q(u) = q_drift + sum u_i q_i.
/// Error(kConfiguration) for a system with non-symmetric fields; Error(kControlRange) for
/// a control outside U.
AttractorSweep attractor_sweep(const ControlSystem& system,
                               std::span<const ControlValue> control_grid);

}  // namespace geoctl
