#include "geoctl/nnls.hpp"

#include <limits>
#include <vector>

namespace geoctl {

namespace {

// Least squares on the passive columns; other entries of the result are zero.
Eigen::VectorXd passive_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(a.cols());
  if (idx.empty()) return z;
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
  const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(b);
  for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zs(static_cast<Eigen::Index>(k));
  return z;
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations,
                double tol) {
  const Eigen::Index n = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 30);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * std::max(1.0, b.norm()));

  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);

  Eigen::VectorXd grad = a.transpose() * (b - a * out.x);
  while (out.iterations < max_iterations) {
    // Most positive gradient among active (clamped) variables.
    Eigen::Index best = -1;
    double best_val = tol * scale;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > best_val) {
        best_val = grad(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    ++out.iterations;

    // Inner loop: step back toward feasibility until the passive solution is positive.
    for (;;) {
      const Eigen::VectorXd z = passive_solve(a, b, passive);
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        out.x = z;
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          alpha = std::min(alpha, out.x(j) / (out.x(j) - z(j)));
        }
      }
      out.x += alpha * (z - out.x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && out.x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          out.x(j) = 0.0;
        }
      }
    }
    grad = a.transpose() * (b - a * out.x);
  }
  out.residual = (a * out.x - b).norm();
  return out;
}

}  // namespace geoctl
