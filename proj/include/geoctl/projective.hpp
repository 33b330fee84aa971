#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "geoctl/control_system.hpp"
#include "geoctl/orbits.hpp"

namespace geoctl::projective {

/// Point of P^{n-1}, stored as a unit representative whose first coordinate above 1e-12 in
/// magnitude is positive.
class ProjPoint {
 public:
  /// Normalizes and canonicalizes; Error(kDegeneratePoint) for a (numerically) zero vector.
  explicit ProjPoint(const Eigen::VectorXd& v);

  const Eigen::VectorXd& v() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

  /// min(|v - w|, |v + w|) <= tol.
  bool equals(const ProjPoint& other, double tol = 1e-9) const;

 private:
  Eigen::VectorXd v_;
};

/// Flips the sign so that the first coordinate above 1e-12 in magnitude is positive.
Eigen::VectorXd canonicalize(Eigen::VectorXd v);

/// x' = A x + sum u_i B_i x on P^{n-1}.
struct ProjSystem {
  int n{0};
  Eigen::VectorXd v0;            // (1/sqrt(n), w)
  Eigen::MatrixXd a;             // v0 v0^t - Id/n
  std::vector<Eigen::MatrixXd> b;  // diag(0, X_i), X_i skew
  ControlRange range;            // box [-1, 1]^m by default

  /// Error(kConfiguration) unless A is symmetric and traceless and every B_i has the block
  /// form diag(0, X_i) with X_i skew (tol 1e-12), and the range has dimension m.
  void validate() const;

  /// A + sum u_i B_i.
  Eigen::MatrixXd frozen(std::span<const double> u) const;
};

/// Mx - <Mx, x> x: the field induced on the sphere (and on P^{n-1}) by M.
Eigen::VectorXd induced_field(const Eigen::MatrixXd& m, const Eigen::VectorXd& x);

/// The example system for v0 = (1/sqrt(n), w): A = v0 v0^t - Id/n and B_i the elementary
/// skew matrices E_jk - E_kj (j < k, lexicographic) of the lower-right (n-1)-block.
/// Error(kConfiguration) for n < 3, a w of the wrong size, or | |w|^2 - (1 - 1/n) | > 1e-12.
ProjSystem build_example(int n, const Eigen::VectorXd& w);

/// A w with |w|^2 = 1 - 1/n pointing along (1, ..., 1).
Eigen::VectorXd default_w(int n);

/// V = v v^t - Id/n.
Eigen::MatrixXd sym_embed(const Eigen::VectorXd& v);

/// trace(V W).
double sym_inner(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w);

/// The region C = {[v] : |<v, e1>| >= 1/sqrt(n)}.
struct DomeC {
  int n{0};
  double level() const;
  bool contains(const Eigen::VectorXd& v, double tol = 1e-9) const;
  /// level - |<v, e1>|; positive outside.
  double exit_depth(const Eigen::VectorXd& v) const;
};

DomeC dome_c(int n);

struct LarcResult {
  int rank{0};
  int expected{0};      // n^2 - 1
  bool w_is_zero{false};  // the irreducibility argument needs w != 0
};

/// Dimension of the Lie algebra generated by {A, B_1, ..., B_m}.
LarcResult larc_check_example(const ProjSystem& system);

/// One RK4 step of the induced field followed by normalization.
Eigen::VectorXd rk4_step(const Eigen::MatrixXd& m, const Eigen::VectorXd& x, double h);

/// RK4 path endpoint after time t (ceil(t / h) equal steps).
Eigen::VectorXd flow(const Eigen::MatrixXd& m, const Eigen::VectorXd& x0, double t,
                     double h = 1e-3);

/// Attractor of the projective flow of M: the dominant eigenvector when the eigenvalue of
/// largest real part is real and simple (gap > 1e-9), otherwise nullopt.
std::optional<Eigen::VectorXd> attractor(const Eigen::MatrixXd& m);

/// Projective counterpart of orbits::walk_schedule (RK4 at options.step, canonicalized points).
void walk_schedule(const ProjSystem& system, const Eigen::VectorXd& x0, const Schedule& schedule,
                   const SamplingOptions& options,
                   const std::function<bool(double, const Eigen::VectorXd&)>& visit);

struct ExampleIcsOptions {
  int grid = 6;
  double horizon = 20.0;
  int samples = 300;
  std::uint64_t seed = 1;
  double delta = 5e-2;
  int invariance_trials = 300;
  double invariance_horizon = 10.0;
  double invariance_tol = 1e-3;
  int attraction_grid = 16;
  double attraction_tol = 1e-3;
  int b_flow_trials = 50;
  double b_flow_time = 5.0;
  double b_flow_tol = 1e-9;
  SamplingOptions sampling{0.05, 1e-2, 5.0};
};

/// The three invariant-control-set checks for C under the projective flow, plus the
/// invariance of <v, e1> along flows of each B_i alone (reported as an extra condition).
IcsReport verify_example_ics(const ProjSystem& system, const ExampleIcsOptions& options = {});

struct BoundarySweep {
  std::vector<ControlValue> controls;
  std::vector<Eigen::VectorXd> attractors;
  std::vector<double> first_coordinate;  // |<attractor, e1>|
  std::size_t skipped{0};                // no simple dominant eigenvalue
};

/// Attractors of A + sum u_i B_i over the given controls.
BoundarySweep boundary_sweep(const ProjSystem& system, std::span<const ControlValue> controls);

/// `per_axis` evenly spaced values per control coordinate on the range box.
std::vector<ControlValue> control_grid(const ProjSystem& system, int per_axis);

}  // namespace geoctl::projective
