#include "geoctl/convex.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "geoctl/errors.hpp"
#include "geoctl/nnls.hpp"

namespace geoctl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Eigen::Vector4d vec(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

Eigen::MatrixXd generator_matrix(std::span<const UnitQuaternion> gens) {
  Eigen::MatrixXd g(4, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) g.col(static_cast<Eigen::Index>(k)) = vec(gens[k]);
  return g;
}

// Orthonormal frame (p1, e) of the plane through the arc, and the arc angle.
struct ArcFrame {
  Quaternion origin;
  Quaternion dir;
  double angle{0.0};
};

ArcFrame arc_frame(const UnitQuaternion& p1, const UnitQuaternion& p2) {
  const Quaternion& a = p1.value();
  const Quaternion& b = p2.value();
  const Quaternion perp = b - a * a.dot(b);
  const double s = perp.norm();
  ArcFrame f{a, Quaternion{}, std::atan2(s, a.dot(b))};
  if (s > 0.0) f.dir = perp / s;
  return f;
}

Quaternion random_normal4(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return {normal(rng), normal(rng), normal(rng), normal(rng)};
}

// Uniform unit vector orthogonal to `axis`.
Quaternion random_tangent(const Quaternion& axis, std::mt19937_64& rng) {
  for (;;) {
    const Quaternion v = random_normal4(rng);
    const Quaternion t = v - axis * v.dot(axis);
    const double n = t.norm();
    if (n > 1e-8) return t / n;
  }
}

UnitQuaternion point_on_arc(const UnitQuaternion& p1, const UnitQuaternion& p2, double fraction) {
  const ArcFrame f = arc_frame(p1, p2);
  const double a = f.angle * fraction;
  return UnitQuaternion::normalize(f.origin * std::cos(a) + f.dir * std::sin(a));
}

}  // namespace

SphericalRegion SphericalRegion::dome(const UnitQuaternion& axis, double level) {
  if (!(level >= 0.0 && level < 1.0)) {
    throw Error(ErrorCode::kConfiguration, "dome level must lie in [0, 1)");
  }
  return SphericalRegion(Dome{axis, level});
}

SphericalRegion SphericalRegion::segment(const UnitQuaternion& p1, const UnitQuaternion& p2) {
  if (distance(p1.value(), -p2.value()) <= kAlgebraicTol) {
    throw Error(ErrorCode::kNonUniqueGeodesic, "antipodal segment endpoints");
  }
  return SphericalRegion(Segment{p1, p2});
}

SphericalRegion SphericalRegion::hull(std::vector<UnitQuaternion> generators) {
  if (generators.empty()) {
    throw Error(ErrorCode::kConfiguration, "hull needs at least one generator");
  }
  if (!is_pointed(generators)) {
    throw Error(ErrorCode::kConfiguration, "hull generators span a non-pointed cone");
  }
  return SphericalRegion(Hull{std::move(generators)});
}

SphericalRegion SphericalRegion::full_sphere() { return SphericalRegion(Dome{UnitQuaternion{}, -1.0}); }

std::string_view SphericalRegion::kind_name() const {
  return std::visit(Overloaded{[](const Dome&) { return std::string_view("dome"); },
                               [](const Segment&) { return std::string_view("segment"); },
                               [](const Hull&) { return std::string_view("hull"); }},
                    region_);
}

void SphericalRegion::validate() const {
  std::visit(Overloaded{[](const Dome& d) {
                          if (!(d.level >= -1.0 && d.level < 1.0)) {
                            throw Error(ErrorCode::kConfiguration, "dome level out of range");
                          }
                        },
                        [](const Segment& s) {
                          if (distance(s.p1.value(), -s.p2.value()) <= kAlgebraicTol) {
                            throw Error(ErrorCode::kNonUniqueGeodesic, "antipodal endpoints");
                          }
                        },
                        [](const Hull& h) {
                          if (h.generators.empty() || !is_pointed(h.generators)) {
                            throw Error(ErrorCode::kConfiguration, "hull is not pointed");
                          }
                        }},
             region_);
}

double distance_to_arc(const UnitQuaternion& p1, const UnitQuaternion& p2,
                       const UnitQuaternion& p) {
  const Quaternion& x = p.value();
  double best = std::min(distance(x, p1.value()), distance(x, p2.value()));
  const ArcFrame f = arc_frame(p1, p2);
  if (f.angle == 0.0) return best;
  const double a = x.dot(f.origin);
  const double b = x.dot(f.dir);
  const double phi = std::atan2(b, a);
  if (phi >= 0.0 && phi <= f.angle) {
    const Quaternion nearest = f.origin * std::cos(phi) + f.dir * std::sin(phi);
    best = std::min(best, distance(x, nearest));
  }
  return best;
}

double cone_distance(std::span<const UnitQuaternion> generators, const Quaternion& p) {
  return nnls(generator_matrix(generators), vec(p)).residual;
}

bool is_pointed(std::span<const UnitQuaternion> generators) {
  if (generators.empty()) return true;
  const auto n = static_cast<Eigen::Index>(generators.size());
  Eigen::MatrixXd a(5, n);
  a.topRows(4) = generator_matrix(generators);
  a.row(4).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(5);
  b(4) = 1.0;
  return nnls(a, b).residual >= 1e-9;
}

bool contains(const SphericalRegion& region, const UnitQuaternion& p, double tol) {
  return exit_depth(region, p) <= tol;
}

double exit_depth(const SphericalRegion& region, const UnitQuaternion& p) {
  return std::visit(
      Overloaded{[&](const SphericalRegion::Dome& d) { return d.level - p.dot(d.axis.value()); },
                 [&](const SphericalRegion::Segment& s) { return distance_to_arc(s.p1, s.p2, p); },
                 [&](const SphericalRegion::Hull& h) { return cone_distance(h.generators, p.value()); }},
      region.variant());
}

std::vector<UnitQuaternion> geodesic_segment_points(const UnitQuaternion& p1,
                                                    const UnitQuaternion& p2, int n) {
  if (n < 2) {
    throw Error(ErrorCode::kArgument, "geodesic_segment_points needs n >= 2");
  }
  if (distance(p1.value(), -p2.value()) <= kAlgebraicTol) {
    throw Error(ErrorCode::kNonUniqueGeodesic, "antipodal points have no unique minimal geodesic");
  }
  std::vector<UnitQuaternion> out;
  out.reserve(static_cast<std::size_t>(n));
  out.push_back(p1);
  for (int k = 1; k + 1 < n; ++k) {
    out.push_back(point_on_arc(p1, p2, static_cast<double>(k) / (n - 1)));
  }
  out.push_back(p2);
  return out;
}

double dome_invariance_threshold(const PureQuaternion& z) {
  return 1.0 / std::sqrt(1.0 + z.dot(z));
}

double critical_level(const PureQuaternion& z, double t) {
  const double c = std::cos(t);
  return 1.0 / std::sqrt(1.0 + z.dot(z) * c * c);
}

double dome_boundary_real_part(const PureQuaternion& z, double sign, double a, double t) {
  return 1.0 - a * a - sign * a * std::sqrt(1.0 - a * a) * z.norm() * std::cos(t);
}

std::vector<UnitQuaternion> sample_sphere(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<UnitQuaternion> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n)));
  while (static_cast<int>(out.size()) < n) {
    const Quaternion v = random_normal4(rng);
    if (v.norm() > 1e-8) out.push_back(UnitQuaternion::normalize(v));
  }
  return out;
}

std::vector<UnitQuaternion> sample_region(const SphericalRegion& region, int n,
                                          std::uint64_t seed, double boundary_fraction) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UnitQuaternion> out;
  out.reserve(static_cast<std::size_t>(std::max(0, n)));
  for (int k = 0; k < n; ++k) {
    const bool on_boundary = unit(rng) < boundary_fraction;
    out.push_back(std::visit(
        Overloaded{
            [&](const SphericalRegion::Dome& d) {
              const Quaternion& axis = d.axis.value();
              const double max_angle = std::acos(std::clamp(d.level, -1.0, 1.0));
              double angle = max_angle;
              if (!on_boundary) {
                // Density of the polar angle on S^3 is proportional to sin^2.
                const double peak = max_angle >= M_PI / 2 ? 1.0 : std::pow(std::sin(max_angle), 2);
                do {
                  angle = max_angle * unit(rng);
                } while (unit(rng) * peak > std::pow(std::sin(angle), 2));
              }
              const Quaternion t = random_tangent(axis, rng);
              return UnitQuaternion::normalize(axis * std::cos(angle) + t * std::sin(angle));
            },
            [&](const SphericalRegion::Segment& s) {
              if (on_boundary) return unit(rng) < 0.5 ? s.p1 : s.p2;
              return point_on_arc(s.p1, s.p2, unit(rng));
            },
            [&](const SphericalRegion::Hull& h) {
              const auto m = h.generators.size();
              if (on_boundary && m >= 2) {
                std::uniform_int_distribution<std::size_t> pick(0, m - 1);
                const std::size_t a = pick(rng);
                std::size_t b = pick(rng);
                while (b == a) b = pick(rng);
                return point_on_arc(h.generators[a], h.generators[b], unit(rng));
              }
              std::exponential_distribution<double> weight(1.0);
              Quaternion acc{};
              for (const auto& g : h.generators) acc += g.value() * weight(rng);
              return UnitQuaternion::normalize(acc);
            }},
        region.variant()));
  }
  return out;
}

std::vector<UnitQuaternion> boundary_points(const SphericalRegion& region, int n) {
  return std::visit(
      Overloaded{[&](const SphericalRegion::Dome& d) {
                   // Rim {<p,axis> = level}: a Fibonacci lattice on the 2-sphere of tangent
                   // directions.
                   std::vector<UnitQuaternion> out;
                   const Quaternion& axis = d.axis.value();
                   std::array<Quaternion, 3> frame{};
                   int filled = 0;
                   for (const Quaternion& e : {Quaternion(1.0), Quaternion::i(), Quaternion::j(),
                                               Quaternion::k()}) {
                     if (filled == 3) break;
                     Quaternion v = e - axis * e.dot(axis);
                     for (int b = 0; b < filled; ++b) {
                       v -= frame[static_cast<std::size_t>(b)] *
                            v.dot(frame[static_cast<std::size_t>(b)]);
                     }
                     if (v.norm() > 0.25) frame[static_cast<std::size_t>(filled++)] = v / v.norm();
                   }
                   const double c = d.level;
                   const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
                   const double golden = M_PI * (3.0 - std::sqrt(5.0));
                   for (int k = 0; k < n; ++k) {
                     const double y = 1.0 - 2.0 * (k + 0.5) / n;
                     const double r = std::sqrt(1.0 - y * y);
                     const double ang = golden * k;
                     const Quaternion dir = frame[0] * (r * std::cos(ang)) + frame[1] * y +
                                            frame[2] * (r * std::sin(ang));
                     out.push_back(UnitQuaternion::normalize(axis * c + dir * s));
                   }
                   return out;
                 },
                 [&](const SphericalRegion::Segment& s) {
                   return std::vector<UnitQuaternion>{s.p1, s.p2};
                 },
                 [&](const SphericalRegion::Hull& h) {
                   std::vector<UnitQuaternion> out;
                   const auto m = h.generators.size();
                   if (m == 1) return h.generators;
                   const int per_arc = std::max(2, n / static_cast<int>(m * (m - 1) / 2));
                   for (std::size_t a = 0; a < m; ++a) {
                     for (std::size_t b = a + 1; b < m; ++b) {
                       for (int k = 0; k < per_arc; ++k) {
                         out.push_back(point_on_arc(h.generators[a], h.generators[b],
                                                    static_cast<double>(k) / (per_arc - 1)));
                       }
                     }
                   }
                   return out;
                 }},
      region.variant());
}

}  // namespace geoctl
