#include "geoctl/flow.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "geoctl/errors.hpp"
#include "geoctl/parallel.hpp"

namespace geoctl {

UnitQuaternion rk4_step(const FieldSpec& spec, const UnitQuaternion& x, double h) {
  const Quaternion& p = x.value();
  const Quaternion k1 = evaluate_ambient(spec, p);
  const Quaternion k2 = evaluate_ambient(spec, p + k1 * (0.5 * h));
  const Quaternion k3 = evaluate_ambient(spec, p + k2 * (0.5 * h));
  const Quaternion k4 = evaluate_ambient(spec, p + k3 * h);
  return UnitQuaternion::normalize(p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0));
}

namespace {

void check_step(double t_final, double h) {
  if (!(h > 0.0) || !(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorCode::kArgument, "integration needs h > 0 and t_final >= 0");
  }
}

std::size_t step_count(double t_final, double h) {
  if (t_final == 0.0) return 0;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(t_final / h - 1e-9)));
}

// Appends the RK4 path of one frozen field to `traj`, starting from its last point.
void append_segment(Trajectory& traj, const FieldSpec& spec, double duration, double h) {
  const std::size_t n = step_count(duration, h);
  if (n == 0) return;
  const double t0 = traj.times.back();
  const double dt = duration / static_cast<double>(n);
  UnitQuaternion x = traj.points.back();
  for (std::size_t k = 1; k <= n; ++k) {
    x = rk4_step(spec, x, dt);
    traj.times.push_back(k == n ? t0 + duration : t0 + static_cast<double>(k) * dt);
    traj.points.push_back(x);
  }
}

}  // namespace

Trajectory integrate(const FieldSpec& spec, const UnitQuaternion& x0, double t_final, double h) {
  check_step(t_final, h);
  Trajectory traj;
  const std::size_t n = step_count(t_final, h);
  traj.times.reserve(n + 1);
  traj.points.reserve(n + 1);
  traj.times.push_back(0.0);
  traj.points.push_back(x0);
  append_segment(traj, spec, t_final, h);
  traj.control_log.push_back({0.0, t_final, {}, spec});
  return traj;
}

UnitQuaternion integrate_endpoint(const FieldSpec& spec, const UnitQuaternion& x0,
                                  double t_final, double h) {
  check_step(t_final, h);
  const std::size_t n = step_count(t_final, h);
  UnitQuaternion x = x0;
  if (n == 0) return x;
  const double dt = t_final / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) x = rk4_step(spec, x, dt);
  return x;
}

UnitQuaternion symmetric_flow(const Quaternion& q, const UnitQuaternion& x0, double t) {
  const double speed = q.norm();
  if (speed == 0.0 || t == 0.0) return x0;
  const Quaternion axis = q / speed;
  const Quaternion& p = x0.value();
  const double c = std::clamp(p.dot(axis), -1.0, 1.0);
  const Quaternion perp = p - axis * c;
  const double s = perp.norm();
  if (s == 0.0) return x0;  // +-axis are fixed points
  const Quaternion n = perp / s;
  // tan(theta/2) = s / (1 + c) = (1 - c) / s; take the better-conditioned form.
  const double half_tan0 = c >= 0.0 ? s / (1.0 + c) : (1.0 - c) / s;
  const double half_tan = half_tan0 * std::exp(-speed * t);
  const double d = 1.0 + half_tan * half_tan;
  const double cos_theta = (1.0 - half_tan * half_tan) / d;
  const double sin_theta = 2.0 * half_tan / d;
  return UnitQuaternion::normalize(axis * cos_theta + n * sin_theta);
}

UnitQuaternion propagate(const FieldSpec& spec, const UnitQuaternion& x0, double t, double h) {
  if (spec.is_symmetric()) return symmetric_flow(spec.q, x0, t);
  return integrate_endpoint(spec, x0, t, h);
}

std::vector<Trajectory> integrate_batch(const FieldSpec& spec,
                                        std::span<const UnitQuaternion> x0s, double t_final,
                                        double h) {
  std::vector<Trajectory> out(x0s.size());
  parallel_for(x0s.size(), [&](std::size_t i) { out[i] = integrate(spec, x0s[i], t_final, h); });
  return out;
}

double great_circle_test(std::span<const UnitQuaternion> points) {
  if (points.size() < 3) {
    throw Error(ErrorCode::kArgument, "great_circle_test needs at least 3 points");
  }
  const Quaternion& first = points.front().value();
  const bool constant = std::all_of(points.begin(), points.end(), [&](const UnitQuaternion& p) {
    return distance(p.value(), first) <= 1e-14;
  });
  if (constant) return 0.0;

  Eigen::Matrix4d gram = Eigen::Matrix4d::Zero();
  for (const auto& p : points) {
    const Eigen::Vector4d v(p.value().w, p.value().x, p.value().y, p.value().z);
    gram += v * v.transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(gram);
  // Eigenvalues ascend; the plane is spanned by the last two eigenvectors.
  const Eigen::Vector4d e2 = eig.eigenvectors().col(2);
  const Eigen::Vector4d e3 = eig.eigenvectors().col(3);
  double worst = 0.0;
  for (const auto& p : points) {
    const Eigen::Vector4d v(p.value().w, p.value().x, p.value().y, p.value().z);
    const Eigen::Vector4d off = v - e2 * e2.dot(v) - e3 * e3.dot(v);
    worst = std::max(worst, off.norm());
  }
  return worst;
}

double great_circle_test(const Trajectory& traj) { return great_circle_test(traj.points); }

Trajectory integrate_switched(const ControlSystem& system, const UnitQuaternion& x0,
                              const Schedule& schedule, double h) {
  if (!(h > 0.0)) {
    throw Error(ErrorCode::kArgument, "integration needs h > 0");
  }
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.points.push_back(x0);
  for (const auto& seg : schedule) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      throw Error(ErrorCode::kArgument, "schedule durations must be positive");
    }
    const FieldSpec field = system.frozen(seg.u);
    const double t0 = traj.times.back();
    append_segment(traj, field, seg.duration, h);
    traj.control_log.push_back({t0, traj.times.back(), seg.u, field});
  }
  return traj;
}

double max_norm_defect(const Trajectory& traj) {
  double worst = 0.0;
  for (const auto& p : traj.points) worst = std::max(worst, std::abs(p.value().norm() - 1.0));
  return worst;
}

double replay_residual(const Trajectory& traj) {
  double worst = 0.0;
  std::size_t seg = 0;
  for (std::size_t k = 0; k + 1 < traj.points.size(); ++k) {
    const double t = traj.times[k];
    while (seg + 1 < traj.control_log.size() && t >= traj.control_log[seg].t_end) ++seg;
    const FieldSpec& field = traj.control_log.at(seg).field;
    const UnitQuaternion next = rk4_step(field, traj.points[k], traj.times[k + 1] - t);
    worst = std::max(worst, distance(next.value(), traj.points[k + 1].value()));
  }
  return worst;
}

}  // namespace geoctl
