#pragma once

#include <random>
#include <span>
#include <variant>
#include <vector>

#include "geoctl/fields.hpp"

namespace geoctl {

using ControlValue = std::vector<double>;

/// Control range U in R^m: a box [lo, hi]^m, a finite set of vectors, or a closed ball B[0, r].
class ControlRange {
 public:
  struct Box {
    int dim{1};
    double lo{-1.0};
    double hi{1.0};
  };
  struct Finite {
    std::vector<ControlValue> values;
  };
  struct Ball {
    int dim{1};
    double radius{1.0};
  };
  using Variant = std::variant<Box, Finite, Ball>;

  ControlRange() = default;
  explicit ControlRange(Variant v) : range_(std::move(v)) {}

  static ControlRange box(int dim, double lo, double hi) { return ControlRange(Box{dim, lo, hi}); }
  static ControlRange finite(std::vector<ControlValue> values) {
    return ControlRange(Finite{std::move(values)});
  }
  static ControlRange ball(int dim, double radius) { return ControlRange(Ball{dim, radius}); }

  const Variant& variant() const { return range_; }
  int dim() const;

  /// Error(kConfiguration) for an empty or malformed range.
  void validate() const;

  bool contains(std::span<const double> u, double tol = 1e-12) const;

  /// One random control. Boxes: 50% uniform interior, 50% uniform vertex. Balls: 50% uniform
  /// in the ball, 50% uniform on the bounding sphere. Finite sets: uniform choice.
  ControlValue sample(std::mt19937_64& rng) const;

  /// Deterministic set of extreme controls: box vertices, every finite value, or
  /// `sphere_points` Fibonacci points on the ball's boundary (plus the center for balls).
  std::vector<ControlValue> extreme_points(int sphere_points = 64) const;

 private:
  Variant range_{Box{}};
};

/// x' = X_drift(x) + sum_i u_i X_i(x), u in U.
struct ControlSystem {
  FieldSpec drift;
  std::vector<FieldSpec> controls;
  ControlRange range;

  /// Error(kConfiguration) if the range is invalid or its dimension differs from m.
  void validate() const;

  /// Frozen field for a constant control; Error(kControlRange) when u is outside U.
  FieldSpec frozen(std::span<const double> u) const;

  /// Frozen field without the range check.
  FieldSpec frozen_unchecked(std::span<const double> u) const;

  /// All fields symmetric (z = w = 0).
  bool is_symmetric() const;

  /// Time-reversed system (all fields negated); its positive orbits are negative orbits.
  ControlSystem reversed() const;
};

struct ScheduleSegment {
  double duration{0.0};
  ControlValue u;
};

/// Piecewise-constant control; segments are closed on the left.
using Schedule = std::vector<ScheduleSegment>;

/// Total duration of a schedule.
double schedule_duration(const Schedule& s);

/// Prefix of `s` of total duration min(duration(s), t).
Schedule truncate_schedule(const Schedule& s, double t);

}  // namespace geoctl
