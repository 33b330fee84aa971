#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "geoctl/lie_so14.hpp"
#include "geoctl/quaternion.hpp"

namespace geoctl {

/// Names the induced vector field X_{(q,z,w)}(x) = (q - x conj(q) x)/2 + z x + x w on S^3.
/// q is the symmetric component, z the left su(2) component, w the right one.
struct FieldSpec {
  Quaternion q;
  PureQuaternion z;
  PureQuaternion w;

  static FieldSpec symmetric(const Quaternion& q) { return {q, {}, {}}; }
  static FieldSpec left(const PureQuaternion& z) { return {Quaternion{}, z, {}}; }
  static FieldSpec right(const PureQuaternion& w) { return {Quaternion{}, {}, w}; }

  FieldSpec operator+(const FieldSpec& o) const { return {q + o.q, z + o.z, w + o.w}; }
  FieldSpec operator-(const FieldSpec& o) const { return {q - o.q, z - o.z, w - o.w}; }
  FieldSpec operator*(double s) const { return {q * s, z * s, w * s}; }
  friend FieldSpec operator*(double s, const FieldSpec& f) { return f * s; }
  bool operator==(const FieldSpec&) const = default;

  /// z = w = 0: a gradient field of the height function <q, .>.
  bool is_symmetric() const { return z == PureQuaternion{} && w == PureQuaternion{}; }
  bool is_zero() const { return q == Quaternion{} && is_symmetric(); }
};

/// The field formula applied to any x in R^4. Only meaningful on S^3; RK4 stages use it
/// at the slightly off-sphere intermediate points.
inline Quaternion evaluate_ambient(const FieldSpec& spec, const Quaternion& x) {
  return (spec.q - x * spec.q.conjugate() * x) * 0.5 + Quaternion(spec.z) * x +
         x * Quaternion(spec.w);
}

/// X_{(q,z,w)}(x); the result is tangent to S^3 at x.
inline Quaternion evaluate(const FieldSpec& spec, const UnitQuaternion& x) {
  return evaluate_ambient(spec, x.value());
}

/// evaluate() for a caller-supplied point; Error(kDomain) unless | |x| - 1 | <= 1e-9.
Quaternion evaluate_checked(const FieldSpec& spec, const Quaternion& x);

/// grad of the height function f_q = <q, .> on S^3: q - <q,p> p.
Quaternion gradient_height(const Quaternion& q, const UnitQuaternion& p);

/// F(p) = X(p) p^{-1}; vanishes exactly at the singular points of X.
Quaternion f_function(const FieldSpec& spec, const UnitQuaternion& p);

enum class SingularityKind { kAttractor, kRepeller, kOther };

struct Singularity {
  UnitQuaternion point;
  SingularityKind kind{SingularityKind::kOther};
};

/// Orthonormal basis of the tangent space T_p S^3 (Gram-Schmidt on the standard basis).
std::array<Quaternion, 3> tangent_frame(const UnitQuaternion& p);

/// 3x3 matrix of the derivative of X at p in tangent_frame(p), by central differences
/// along great circles. At a zero of X it is the linearization of the flow.
Eigen::Matrix3d linearization(const FieldSpec& spec, const UnitQuaternion& p,
                              double step = 1e-6);

/// Attractor if all eigenvalues of linearization() have real part < -1e-9, repeller if all
/// are > 1e-9, otherwise other.
SingularityKind classify_singularity(const FieldSpec& spec, const UnitQuaternion& p,
                                     double step = 1e-6);

struct SymmetricSingularities {
  Singularity attractor;  // +q/|q|
  Singularity repeller;   // -q/|q|
};

/// The two zeros of X_{(q,0,0)}; Error(kDegenerateField) for q = 0.
SymmetricSingularities singularities_symmetric(const Quaternion& q);

/// Attractor q/|q| of X_{(q,0,0)} without classification; Error(kDegenerateField) for q = 0.
UnitQuaternion symmetric_attractor(const Quaternion& q);

/// so(1,4) matrix of the field: embed(q) + sum z_a left_a + sum w_a right_a.
So14Matrix to_matrix(const FieldSpec& spec);

/// Inverse of to_matrix (the gamma basis is orthogonal, each element with squared norm 4).
FieldSpec from_matrix(const So14Matrix& m);

/// Vector-field bracket [X_a, X_b](p) = DX_a(p)[X_b(p)] - DX_b(p)[X_a(p)], with directional
/// derivatives by central differences along great circles.
Quaternion field_bracket(const FieldSpec& a, const FieldSpec& b, const UnitQuaternion& p,
                         double step = 1e-5);

/// Spec c of the matrix bracket of a and b, mapped back to a field.
FieldSpec matrix_bracket(const FieldSpec& a, const FieldSpec& b);

/// max over samples of |[X_a, X_b](p) - X_c(p)| with c = matrix_bracket(a, b).
/// Error(kArgument) when `samples` is empty.
double field_bracket_check(const FieldSpec& a, const FieldSpec& b,
                           std::span<const UnitQuaternion> samples, double step = 1e-5);

/// F_{(1,0,0)} sampled on the great circle C_z through 1 and z.
struct GreatCircleImage {
  std::vector<UnitQuaternion> points;   // cos(s) + sin(s) z for n uniform s in [0, 2 pi)
  std::vector<PureQuaternion> images;   // Im(p)
  double segment_deviation{0.0};        // max distance of an image from the line R z
  double coordinate_min{0.0};           // min of <image, z>
  double coordinate_max{0.0};           // max of <image, z>
};

/// Error(kDomain) unless |z| = 1 within 1e-9; Error(kArgument) for n < 3.
GreatCircleImage f_image_on_great_circle(const PureQuaternion& z, int n_samples);

}  // namespace geoctl
