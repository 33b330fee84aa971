#pragma once

#include <Eigen/Dense>

namespace geoctl {

struct NnlsResult {
  Eigen::VectorXd x;   // argmin |A x - b|, x >= 0
  double residual{0};  // |A x - b|
  int iterations{0};
};

/// Lawson-Hanson active-set nonnegative least squares.
NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0,
                double tol = 1e-12);

}  // namespace geoctl
