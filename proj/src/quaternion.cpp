#include "geoctl/quaternion.hpp"

#include <ostream>

#include "geoctl/errors.hpp"

namespace geoctl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kDegeneratePoint: return "degenerate-point";
    case ErrorCode::kInvalidElement: return "invalid-element";
    case ErrorCode::kNotSymmetric: return "not-symmetric";
    case ErrorCode::kArgument: return "argument";
    case ErrorCode::kDegenerateField: return "degenerate-field";
    case ErrorCode::kControlRange: return "control-range";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kNonUniqueGeodesic: return "non-unique-geodesic";
    case ErrorCode::kFixture: return "fixture";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Quaternion Quaternion::inverse() const {
  const double n2 = squared_norm();
  if (!(n2 > 0.0)) {
    throw Error(ErrorCode::kDomain, "inverse of the zero quaternion");
  }
  return conjugate() / n2;
}

UnitQuaternion UnitQuaternion::normalize(const Quaternion& p) {
  if (!p.is_finite()) {
    throw Error(ErrorCode::kDomain, "non-finite quaternion");
  }
  const double n = p.norm();
  if (n <= 1e-14) {
    throw Error(ErrorCode::kDegeneratePoint, "cannot project a near-zero quaternion onto S^3");
  }
  return UnitQuaternion(p / n);
}

UnitQuaternion UnitQuaternion::from_unit(const Quaternion& p, double tol) {
  if (!p.is_finite()) {
    throw Error(ErrorCode::kDomain, "non-finite quaternion");
  }
  if (std::abs(p.norm() - 1.0) > tol) {
    throw Error(ErrorCode::kDomain, "point is not on the unit sphere");
  }
  return normalize(p);
}

UnitQuaternion exp(const PureQuaternion& v) {
  const double angle = v.norm();
  if (angle == 0.0) {
    return UnitQuaternion{};
  }
  return UnitQuaternion::normalize(Quaternion(std::cos(angle), v * (std::sin(angle) / angle)));
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "[" << q.w << ", " << q.x << ", " << q.y << ", " << q.z << "]";
}

std::ostream& operator<<(std::ostream& os, const PureQuaternion& q) {
  return os << "[" << q.x << ", " << q.y << ", " << q.z << "]";
}

std::ostream& operator<<(std::ostream& os, const UnitQuaternion& q) { return os << q.value(); }

}  // namespace geoctl
