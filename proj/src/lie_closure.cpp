#include "geoctl/lie_closure.hpp"

#include <algorithm>
#include <cmath>

#include "geoctl/errors.hpp"

namespace geoctl {

int numerical_rank(const Eigen::MatrixXd& columns, double tol) {
  Eigen::MatrixXd m = columns;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (rows == 0 || cols == 0) {
    return 0;
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double threshold = tol * scale;

  int rank = 0;
  for (Eigen::Index step = 0; step < std::min(rows, cols); ++step) {
    Eigen::Index pr = 0;
    Eigen::Index pc = 0;
    const double pivot =
        m.bottomRightCorner(rows - step, cols - step).cwiseAbs().maxCoeff(&pr, &pc);
    if (pivot <= threshold) {
      break;
    }
    pr += step;
    pc += step;
    m.row(step).swap(m.row(pr));
    m.col(step).swap(m.col(pc));
    for (Eigen::Index r = step + 1; r < rows; ++r) {
      const double factor = m(r, step) / m(step, step);
      m.row(r).tail(cols - step) -= factor * m.row(step).tail(cols - step);
    }
    ++rank;
  }
  return rank;
}

namespace {

// Adds `candidate` to the orthonormal basis if it is not already in its span.
bool try_extend(std::vector<Eigen::MatrixXd>& basis, const Eigen::MatrixXd& candidate,
                double tol) {
  const double n0 = candidate.norm();
  if (n0 == 0.0) {
    return false;
  }
  Eigen::MatrixXd r = candidate / n0;
  // Two Gram-Schmidt passes keep the basis orthonormal to working precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      r -= (b.array() * r.array()).sum() * b;
    }
  }
  const double residual = r.norm();
  if (residual <= tol) {
    return false;
  }
  basis.push_back(r / residual);
  return true;
}

}  // namespace

std::vector<Eigen::MatrixXd> lie_closure(std::span<const Eigen::MatrixXd> generators,
                                         int max_dim, double tol) {
  if (generators.empty()) {
    throw Error(ErrorCode::kArgument, "lie_closure needs at least one generator");
  }
  std::vector<Eigen::MatrixXd> basis;
  for (const auto& g : generators) {
    if (static_cast<int>(basis.size()) >= max_dim) break;
    try_extend(basis, g, tol);
  }

  // Elements [0, frontier) have been bracketed against everything before them.
  std::size_t frontier = 0;
  while (frontier < basis.size() && static_cast<int>(basis.size()) < max_dim) {
    const std::size_t end = basis.size();
    for (std::size_t a = frontier; a < end; ++a) {
      for (std::size_t b = 0; b < a && static_cast<int>(basis.size()) < max_dim; ++b) {
        try_extend(basis, commutator(basis[a], basis[b]), tol);
      }
    }
    frontier = end;
  }
  return basis;
}

int lie_closure_dimension(std::span<const Eigen::MatrixXd> generators, int max_dim,
                          double tol) {
  return static_cast<int>(lie_closure(generators, max_dim, tol).size());
}

}  // namespace geoctl
