#include "geoctl/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "geoctl/errors.hpp"
#include "geoctl/tolerances.hpp"

namespace geoctl {

Quaternion evaluate_checked(const FieldSpec& spec, const Quaternion& x) {
  return evaluate(spec, UnitQuaternion::from_unit(x, kUnitInputTol));
}

Quaternion gradient_height(const Quaternion& q, const UnitQuaternion& p) {
  return q - p.value() * q.dot(p.value());
}

Quaternion f_function(const FieldSpec& spec, const UnitQuaternion& p) {
  return evaluate(spec, p) * p.value().conjugate();
}

std::array<Quaternion, 3> tangent_frame(const UnitQuaternion& p) {
  const std::array<Quaternion, 4> standard = {Quaternion(1.0), Quaternion::i(), Quaternion::j(),
                                              Quaternion::k()};
  std::array<Quaternion, 4> basis{};
  basis[0] = p.value();
  int filled = 1;
  for (const auto& e : standard) {
    if (filled == 4) break;
    Quaternion v = e;
    for (int pass = 0; pass < 2; ++pass) {
      for (int b = 0; b < filled; ++b) {
        v -= basis[static_cast<std::size_t>(b)] * v.dot(basis[static_cast<std::size_t>(b)]);
      }
    }
    const double n = v.norm();
    // At least three of the four standard vectors leave a residual >= 1/2 in norm.
    if (n > 0.25) {
      basis[static_cast<std::size_t>(filled++)] = v / n;
    }
  }
  return {basis[1], basis[2], basis[3]};
}

namespace {

// Point reached from p by moving a chordal step t along the unit tangent e.
Quaternion along(const UnitQuaternion& p, const Quaternion& e, double t) {
  return UnitQuaternion::normalize(p.value() + e * t).value();
}

// D X(p)[v] for tangent v, by central differences along the great circle.
Quaternion directional_derivative(const FieldSpec& spec, const UnitQuaternion& p,
                                  const Quaternion& v, double step) {
  const double speed = v.norm();
  if (speed == 0.0) {
    return {};
  }
  const Quaternion e = v / speed;
  const Quaternion fwd = evaluate_ambient(spec, along(p, e, step));
  const Quaternion bwd = evaluate_ambient(spec, along(p, e, -step));
  return (fwd - bwd) * (speed / (2.0 * step));
}

}  // namespace

Eigen::Matrix3d linearization(const FieldSpec& spec, const UnitQuaternion& p, double step) {
  const auto frame = tangent_frame(p);
  Eigen::Matrix3d jac;
  for (int c = 0; c < 3; ++c) {
    const Quaternion d =
        directional_derivative(spec, p, frame[static_cast<std::size_t>(c)], step);
    for (int r = 0; r < 3; ++r) {
      jac(r, c) = d.dot(frame[static_cast<std::size_t>(r)]);
    }
  }
  return jac;
}

SingularityKind classify_singularity(const FieldSpec& spec, const UnitQuaternion& p, double step) {
  const Eigen::Vector3cd eig = linearization(spec, p, step).eigenvalues();
  const double lo = eig.real().minCoeff();
  const double hi = eig.real().maxCoeff();
  if (hi < -1e-9) return SingularityKind::kAttractor;
  if (lo > 1e-9) return SingularityKind::kRepeller;
  return SingularityKind::kOther;
}

UnitQuaternion symmetric_attractor(const Quaternion& q) {
  if (!(q.norm() > 0.0)) {
    throw Error(ErrorCode::kDegenerateField, "X_(0,0,0) vanishes everywhere");
  }
  return UnitQuaternion::normalize(q);
}

SymmetricSingularities singularities_symmetric(const Quaternion& q) {
  const UnitQuaternion a = symmetric_attractor(q);
  const FieldSpec spec = FieldSpec::symmetric(q);
  return {{a, classify_singularity(spec, a)}, {-a, classify_singularity(spec, -a)}};
}

So14Matrix to_matrix(const FieldSpec& spec) {
  const GammaBasis& g = gamma_basis();
  return embed_symmetric(spec.q) + g.left_i * spec.z.x + g.left_j * spec.z.y +
         g.left_k * spec.z.z + g.right_i * spec.w.x + g.right_j * spec.w.y +
         g.right_k * spec.w.z;
}

FieldSpec from_matrix(const So14Matrix& m) {
  const GammaBasis& g = gamma_basis();
  const CartanSplit split = cartan_split(m);
  const Eigen::Matrix4d k = split.k_part.gamma();
  auto coord = [&k](const So14Matrix& basis) {
    return (k.array() * basis.gamma().array()).sum() / 4.0;
  };
  FieldSpec out;
  out.q = extract_symmetric(split.s_part);
  out.z = {coord(g.left_i), coord(g.left_j), coord(g.left_k)};
  out.w = {coord(g.right_i), coord(g.right_j), coord(g.right_k)};
  return out;
}

Quaternion field_bracket(const FieldSpec& a, const FieldSpec& b, const UnitQuaternion& p,
                         double step) {
  return directional_derivative(a, p, evaluate(b, p), step) -
         directional_derivative(b, p, evaluate(a, p), step);
}

FieldSpec matrix_bracket(const FieldSpec& a, const FieldSpec& b) {
  return from_matrix(bracket(to_matrix(a), to_matrix(b)));
}

double field_bracket_check(const FieldSpec& a, const FieldSpec& b,
                           std::span<const UnitQuaternion> samples, double step) {
  if (samples.empty()) {
    throw Error(ErrorCode::kArgument, "field_bracket_check needs at least one sample point");
  }
  const FieldSpec c = matrix_bracket(a, b);
  double worst = 0.0;
  for (const auto& p : samples) {
    worst = std::max(worst, distance(field_bracket(a, b, p, step), evaluate(c, p)));
  }
  return worst;
}

GreatCircleImage f_image_on_great_circle(const PureQuaternion& z, int n_samples) {
  if (!z.is_finite() || std::abs(z.norm() - 1.0) > kUnitInputTol) {
    throw Error(ErrorCode::kDomain, "C_z needs a unit pure quaternion z");
  }
  if (n_samples < 3) {
    throw Error(ErrorCode::kArgument, "need at least 3 samples on the great circle");
  }
  const PureQuaternion zu = z * (1.0 / z.norm());
  const FieldSpec height = FieldSpec::symmetric(1.0);

  GreatCircleImage out;
  out.points.reserve(static_cast<std::size_t>(n_samples));
  out.images.reserve(static_cast<std::size_t>(n_samples));
  out.coordinate_min = std::numeric_limits<double>::infinity();
  out.coordinate_max = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; ++s) {
    const double angle = 2.0 * std::numbers::pi * s / n_samples;
    const UnitQuaternion p =
        UnitQuaternion::normalize(Quaternion(std::cos(angle), zu * std::sin(angle)));
    const PureQuaternion image = f_function(height, p).im();
    const double t = image.dot(zu);
    out.segment_deviation = std::max(out.segment_deviation, (image - zu * t).norm());
    out.coordinate_min = std::min(out.coordinate_min, t);
    out.coordinate_max = std::max(out.coordinate_max, t);
    out.points.push_back(p);
    out.images.push_back(image);
  }
  return out;
}

}  // namespace geoctl
