#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "geoctl/tolerances.hpp"

namespace geoctl {

/// Numerical rank of the columns of `columns`, computed by Gaussian elimination with
/// full pivoting. Pivots of magnitude <= tol * max(1, max |entry|) count as zero.
int numerical_rank(const Eigen::MatrixXd& columns, double tol = kRankTol);

/// ab - ba.
inline Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a * b - b * a;
}

/// Basis (orthonormal in the Frobenius inner product) of the smallest bracket-closed
/// subspace containing `generators`. Candidates are accepted when their residual after
/// projection onto the current basis exceeds `tol` relative to their own norm.
///
/// The loop brackets every new basis element against the whole basis and stops after a
/// pass with no growth, or as soon as `max_dim` is reached.
std::vector<Eigen::MatrixXd> lie_closure(std::span<const Eigen::MatrixXd> generators,
                                         int max_dim, double tol = kRankTol);

/// Dimension of lie_closure(generators).
int lie_closure_dimension(std::span<const Eigen::MatrixXd> generators, int max_dim,
                          double tol = kRankTol);

}  // namespace geoctl
