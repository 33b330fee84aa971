#include "geoctl/control_system.hpp"

#include <cmath>
#include <numbers>

#include "geoctl/errors.hpp"

namespace geoctl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

ControlValue uniform_direction(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ControlValue v(static_cast<std::size_t>(dim));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& c : v) {
      c = normal(rng);
      n2 += c * c;
    }
  } while (n2 < 1e-24);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : v) c *= inv;
  return v;
}

// n points spread over S^{dim-1}; Fibonacci lattice for dim 3, uniform angles for dim 2.
std::vector<ControlValue> sphere_points(int dim, int n) {
  std::vector<ControlValue> out;
  if (dim == 1) {
    return {{-1.0}, {1.0}};
  }
  if (dim == 2) {
    for (int k = 0; k < n; ++k) {
      const double a = 2.0 * std::numbers::pi * k / n;
      out.push_back({std::cos(a), std::sin(a)});
    }
    return out;
  }
  if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
      const double y = 1.0 - 2.0 * (k + 0.5) / n;
      const double r = std::sqrt(1.0 - y * y);
      const double a = golden * k;
      out.push_back({r * std::cos(a), y, r * std::sin(a)});
    }
    return out;
  }
  // Higher dimensions: the coordinate cross.
  for (int a = 0; a < dim; ++a) {
    for (double s : {-1.0, 1.0}) {
      ControlValue v(static_cast<std::size_t>(dim), 0.0);
      v[static_cast<std::size_t>(a)] = s;
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

int ControlRange::dim() const {
  return std::visit(Overloaded{[](const Box& b) { return b.dim; },
                               [](const Finite& f) {
                                 return f.values.empty() ? 0
                                                         : static_cast<int>(f.values[0].size());
                               },
                               [](const Ball& b) { return b.dim; }},
                    range_);
}

void ControlRange::validate() const {
  std::visit(Overloaded{[](const Box& b) {
                          if (b.dim < 0 || !(b.lo <= b.hi) || !std::isfinite(b.lo) ||
                              !std::isfinite(b.hi)) {
                            throw Error(ErrorCode::kConfiguration, "box range needs lo <= hi");
                          }
                        },
                        [](const Finite& f) {
                          if (f.values.empty()) {
                            throw Error(ErrorCode::kConfiguration, "finite range is empty");
                          }
                          for (const auto& v : f.values) {
                            if (v.size() != f.values[0].size()) {
                              throw Error(ErrorCode::kConfiguration,
                                          "finite range values differ in dimension");
                            }
                            for (double c : v) {
                              if (!std::isfinite(c)) {
                                throw Error(ErrorCode::kConfiguration,
                                            "non-finite control value");
                              }
                            }
                          }
                        },
                        [](const Ball& b) {
                          if (b.dim < 0 || !(b.radius >= 0.0) || !std::isfinite(b.radius)) {
                            throw Error(ErrorCode::kConfiguration,
                                        "ball range needs a finite radius >= 0");
                          }
                        }},
             range_);
}

bool ControlRange::contains(std::span<const double> u, double tol) const {
  if (static_cast<int>(u.size()) != dim()) {
    return false;
  }
  return std::visit(Overloaded{[&](const Box& b) {
                                 for (double c : u) {
                                   if (c < b.lo - tol || c > b.hi + tol) return false;
                                 }
                                 return true;
                               },
                               [&](const Finite& f) {
                                 for (const auto& v : f.values) {
                                   bool same = true;
                                   for (std::size_t a = 0; a < v.size(); ++a) {
                                     if (std::abs(v[a] - u[a]) > tol) {
                                       same = false;
                                       break;
                                     }
                                   }
                                   if (same) return true;
                                 }
                                 return false;
                               },
                               [&](const Ball& b) {
                                 double n2 = 0.0;
                                 for (double c : u) n2 += c * c;
                                 return std::sqrt(n2) <= b.radius + tol;
                               }},
                    range_);
}

ControlValue ControlRange::sample(std::mt19937_64& rng) const {
  return std::visit(
      Overloaded{[&](const Box& b) {
                   ControlValue u(static_cast<std::size_t>(b.dim));
                   const bool vertex = uniform01(rng) < 0.5;
                   for (auto& c : u) {
                     c = vertex ? (uniform01(rng) < 0.5 ? b.lo : b.hi)
                                : b.lo + (b.hi - b.lo) * uniform01(rng);
                   }
                   return u;
                 },
                 [&](const Finite& f) {
                   std::uniform_int_distribution<std::size_t> pick(0, f.values.size() - 1);
                   return f.values[pick(rng)];
                 },
                 [&](const Ball& b) {
                   const bool surface = uniform01(rng) < 0.5;
                   ControlValue u = uniform_direction(b.dim, rng);
                   const double r =
                       surface ? b.radius
                               : b.radius * std::pow(uniform01(rng), 1.0 / std::max(1, b.dim));
                   for (auto& c : u) c *= r;
                   return u;
                 }},
      range_);
}

std::vector<ControlValue> ControlRange::extreme_points(int n_sphere) const {
  return std::visit(Overloaded{[](const Box& b) {
                                 std::vector<ControlValue> out;
                                 const std::size_t count = std::size_t{1} << b.dim;
                                 for (std::size_t mask = 0; mask < count; ++mask) {
                                   ControlValue u(static_cast<std::size_t>(b.dim));
                                   for (int a = 0; a < b.dim; ++a) {
                                     u[static_cast<std::size_t>(a)] =
                                         (mask >> a) & 1U ? b.hi : b.lo;
                                   }
                                   out.push_back(u);
                                 }
                                 return out;
                               },
                               [](const Finite& f) { return f.values; },
                               [n_sphere](const Ball& b) {
                                 std::vector<ControlValue> out;
                                 out.emplace_back(static_cast<std::size_t>(b.dim), 0.0);
                                 for (auto v : sphere_points(b.dim, n_sphere)) {
                                   for (auto& c : v) c *= b.radius;
                                   out.push_back(v);
                                 }
                                 return out;
                               }},
                    range_);
}

void ControlSystem::validate() const {
  range.validate();
  if (range.dim() != static_cast<int>(controls.size())) {
    throw Error(ErrorCode::kConfiguration, "control range dimension differs from control count");
  }
}

FieldSpec ControlSystem::frozen_unchecked(std::span<const double> u) const {
  FieldSpec f = drift;
  for (std::size_t a = 0; a < controls.size() && a < u.size(); ++a) {
    f = f + controls[a] * u[a];
  }
  return f;
}

FieldSpec ControlSystem::frozen(std::span<const double> u) const {
  if (u.size() != controls.size() || !range.contains(u)) {
    throw Error(ErrorCode::kControlRange, "control value outside the control range");
  }
  return frozen_unchecked(u);
}

bool ControlSystem::is_symmetric() const {
  if (!drift.is_symmetric()) return false;
  for (const auto& c : controls) {
    if (!c.is_symmetric()) return false;
  }
  return true;
}

ControlSystem ControlSystem::reversed() const {
  ControlSystem r = *this;
  r.drift = drift * -1.0;
  for (auto& c : r.controls) c = c * -1.0;
  return r;
}

double schedule_duration(const Schedule& s) {
  double t = 0.0;
  for (const auto& seg : s) t += seg.duration;
  return t;
}

Schedule truncate_schedule(const Schedule& s, double t) {
  Schedule out;
  double elapsed = 0.0;
  for (const auto& seg : s) {
    if (elapsed >= t) break;
    ScheduleSegment piece = seg;
    piece.duration = std::min(seg.duration, t - elapsed);
    elapsed += seg.duration;
    if (piece.duration > 0.0) out.push_back(piece);
  }
  return out;
}

}  // namespace geoctl
