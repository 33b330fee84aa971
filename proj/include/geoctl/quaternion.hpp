#pragma once

#include <array>
#include <cmath>
#include <iosfwd>

namespace geoctl {

/// Element of Im H; the scalar part is zero by construction.
struct PureQuaternion {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr PureQuaternion() = default;
  constexpr PureQuaternion(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr PureQuaternion operator+(const PureQuaternion& o) const {
    return {x + o.x, y + o.y, z + o.z};
  }
  constexpr PureQuaternion operator-(const PureQuaternion& o) const {
    return {x - o.x, y - o.y, z - o.z};
  }
  constexpr PureQuaternion operator-() const { return {-x, -y, -z}; }
  constexpr PureQuaternion operator*(double s) const { return {s * x, s * y, s * z}; }
  constexpr bool operator==(const PureQuaternion&) const = default;

  constexpr double dot(const PureQuaternion& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr PureQuaternion cross(const PureQuaternion& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr PureQuaternion operator*(double s, const PureQuaternion& p) { return p * s; }

/// Real quaternion w + x i + y j + z k, stored as four doubles.
class Quaternion {
 public:
  double w{0.0};
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr Quaternion(double real) : w(real) {}  // NOLINT(google-explicit-constructor)
  constexpr Quaternion(const PureQuaternion& p)   // NOLINT(google-explicit-constructor)
      : w(0.0), x(p.x), y(p.y), z(p.z) {}
  constexpr Quaternion(double real, const PureQuaternion& p) : w(real), x(p.x), y(p.y), z(p.z) {}

  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr Quaternion operator+(const Quaternion& o) const {
    return {w + o.w, x + o.x, y + o.y, z + o.z};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {w - o.w, x - o.x, y - o.y, z - o.z};
  }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion operator*(double s) const { return {s * w, s * x, s * y, s * z}; }
  constexpr Quaternion operator/(double s) const { return {w / s, x / s, y / s, z / s}; }

  // p q = p0 q0 - <p,q> + p0 q + q0 p + p x q   (vector parts)
  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
  Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
  Quaternion& operator*=(double s) { return *this = *this * s; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
  constexpr double re() const { return w; }
  constexpr PureQuaternion im() const { return {x, y, z}; }
  constexpr double dot(const Quaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
  constexpr double squared_norm() const { return dot(*this); }
  double norm() const { return std::sqrt(squared_norm()); }

  /// Throws Error(kDomain) for the zero quaternion.
  Quaternion inverse() const;

  bool is_finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  constexpr std::array<double, 4> components() const { return {w, x, y, z}; }
  static constexpr Quaternion from_components(const std::array<double, 4>& c) {
    return {c[0], c[1], c[2], c[3]};
  }
};

constexpr Quaternion operator*(double s, const Quaternion& q) { return q * s; }

inline Quaternion conjugate(const Quaternion& p) { return p.conjugate(); }
inline double norm(const Quaternion& p) { return p.norm(); }
inline Quaternion inverse(const Quaternion& p) { return p.inverse(); }
inline double re(const Quaternion& p) { return p.re(); }
inline PureQuaternion im(const Quaternion& p) { return p.im(); }
inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }

/// Euclidean distance in R^4 (chordal distance on S^3).
inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

/// Point of S^3. Every factory re-normalizes, so | |q| - 1 | <= 1e-12 always holds.
class UnitQuaternion {
 public:
  constexpr UnitQuaternion() : q_(1.0) {}

  /// p / |p|; throws Error(kDegeneratePoint) when |p| <= 1e-14 and Error(kDomain) for non-finite p.
  static UnitQuaternion normalize(const Quaternion& p);

  /// Accepts p only if | |p| - 1 | <= tol (Error(kDomain) otherwise), then re-normalizes.
  static UnitQuaternion from_unit(const Quaternion& p, double tol = 1e-9);

  const Quaternion& value() const { return q_; }
  operator const Quaternion&() const { return q_; }  // NOLINT(google-explicit-constructor)

  UnitQuaternion operator-() const { return UnitQuaternion(-q_); }
  UnitQuaternion conjugate() const { return UnitQuaternion(q_.conjugate()); }
  UnitQuaternion inverse() const { return conjugate(); }
  UnitQuaternion operator*(const UnitQuaternion& o) const { return normalize(q_ * o.q_); }

  double re() const { return q_.w; }
  PureQuaternion im() const { return q_.im(); }
  double dot(const Quaternion& o) const { return q_.dot(o); }

  bool operator==(const UnitQuaternion& o) const { return q_ == o.q_; }

 private:
  explicit constexpr UnitQuaternion(const Quaternion& q) : q_(q) {}
  Quaternion q_;
};

/// Renormalization onto S^3 (same as UnitQuaternion::normalize).
inline UnitQuaternion project_to_sphere(const Quaternion& p) { return UnitQuaternion::normalize(p); }

/// exp of a pure quaternion: cos|v| + sin|v| v/|v|.
UnitQuaternion exp(const PureQuaternion& v);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const PureQuaternion& q);
std::ostream& operator<<(std::ostream& os, const UnitQuaternion& q);

}  // namespace geoctl
