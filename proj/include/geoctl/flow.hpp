#pragma once

#include <span>
#include <vector>

#include "geoctl/control_system.hpp"
#include "geoctl/fields.hpp"

namespace geoctl {

inline constexpr double kDefaultStep = 1e-3;
inline constexpr double kDefaultConvergenceTime = 20.0;

/// Control active on [t_begin, t_end) together with the frozen field it produced.
struct ControlInterval {
  double t_begin{0.0};
  double t_end{0.0};
  ControlValue u;
  FieldSpec field;
};

/// Sampled curve phi(t, x, u) on S^3.
struct Trajectory {
  std::vector<double> times;
  std::vector<UnitQuaternion> points;
  std::vector<ControlInterval> control_log;

  const UnitQuaternion& back() const { return points.back(); }
  std::size_t size() const { return points.size(); }
};

/// One classical RK4 step in R^4 followed by projection onto S^3.
UnitQuaternion rk4_step(const FieldSpec& spec, const UnitQuaternion& x, double h);

/// RK4 with projection. Uses ceil(t_final / h) equal steps, so the last time is t_final
/// exactly. Error(kArgument) unless h > 0 and t_final >= 0.
Trajectory integrate(const FieldSpec& spec, const UnitQuaternion& x0, double t_final,
                     double h = kDefaultStep);

/// Endpoint of integrate() without storing the path.
UnitQuaternion integrate_endpoint(const FieldSpec& spec, const UnitQuaternion& x0,
                                  double t_final, double h = kDefaultStep);

/// Closed-form flow of X_{(q,0,0)}: the point moves on the great circle through x0 and
/// q/|q| with tan(theta/2) = tan(theta0/2) exp(-|q| t), theta the angle to q/|q|.
/// The repeller -q/|q| stays fixed.
UnitQuaternion symmetric_flow(const Quaternion& q, const UnitQuaternion& x0, double t);

/// Exact flow for symmetric specs, RK4 (step h) otherwise.
UnitQuaternion propagate(const FieldSpec& spec, const UnitQuaternion& x0, double t,
                         double h = kDefaultStep);

/// Integrates many initial points on the worker pool; result i belongs to x0s[i].
std::vector<Trajectory> integrate_batch(const FieldSpec& spec,
                                        std::span<const UnitQuaternion> x0s, double t_final,
                                        double h = kDefaultStep);

/// Max distance of the points from the best-fit 2-plane through the origin (top-2
/// singular subspace). 0 for a constant point set. Error(kArgument) for < 3 points.
double great_circle_test(std::span<const UnitQuaternion> points);
double great_circle_test(const Trajectory& traj);

/// Concatenated integrate() over the schedule's frozen fields. Error(kArgument) for a
/// non-positive duration, Error(kControlRange) for a control outside U.
Trajectory integrate_switched(const ControlSystem& system, const UnitQuaternion& x0,
                              const Schedule& schedule, double h = kDefaultStep);

/// max | |p| - 1 | over the trajectory.
double max_norm_defect(const Trajectory& traj);

/// max over consecutive pairs of |rk4_step(logged field, p_k, t_{k+1} - t_k) - p_{k+1}|.
double replay_residual(const Trajectory& traj);

}  // namespace geoctl
