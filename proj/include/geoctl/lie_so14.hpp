#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "geoctl/quaternion.hpp"
#include "geoctl/tolerances.hpp"

namespace geoctl {

using Matrix5d = Eigen::Matrix<double, 5, 5>;

/// I_{1,4} = diag(1, -1, -1, -1, -1).
Matrix5d i14();

/// Element of so(1,4) in the I_{1,4} realization: I m + m^t I = 0, i.e. the block form
/// [[0, beta], [beta^t, gamma]] with gamma in so(4).
class So14Matrix {
 public:
  So14Matrix() : m_(Matrix5d::Zero()) {}

  /// Throws Error(kInvalidElement) if `m` violates the membership equation by more than tol.
  static So14Matrix from_matrix(const Matrix5d& m, double tol = kAlgebraicTol);

  /// Entrywise max of |I m + m^t I|.
  static double membership_residual(const Matrix5d& m);

  const Matrix5d& matrix() const { return m_; }
  double operator()(int r, int c) const { return m_(r, c); }

  So14Matrix operator+(const So14Matrix& o) const { return So14Matrix(m_ + o.m_); }
  So14Matrix operator-(const So14Matrix& o) const { return So14Matrix(m_ - o.m_); }
  So14Matrix operator-() const { return So14Matrix(-m_); }
  So14Matrix operator*(double s) const { return So14Matrix(s * m_); }
  friend So14Matrix operator*(double s, const So14Matrix& a) { return a * s; }

  /// beta = first row, columns 1..4.
  Eigen::Vector4d beta() const { return m_.block<1, 4>(0, 1).transpose(); }
  /// gamma = lower-right 4x4 block.
  Eigen::Matrix4d gamma() const { return m_.block<4, 4>(1, 1); }

  /// Row-major 25 entries.
  std::array<double, 25> row_major() const;
  static So14Matrix from_row_major(std::span<const double> entries, double tol = kAlgebraicTol);

 private:
  explicit So14Matrix(const Matrix5d& m) : m_(m) {}
  Matrix5d m_;

  friend So14Matrix bracket(const So14Matrix& a, const So14Matrix& b);
  friend So14Matrix embed_symmetric(const Quaternion& q);
  friend So14Matrix theta(const So14Matrix& m);
  friend So14Matrix k_block(const Eigen::Matrix4d& gamma);
};

/// Matrix commutator ab - ba; so(1,4) is closed under it.
So14Matrix bracket(const So14Matrix& a, const So14Matrix& b);

/// Quaternion p + q i + r j + s k  ->  [[0, beta], [beta^t, 0]] with beta = (p, q, r, s).
So14Matrix embed_symmetric(const Quaternion& q);

/// Inverse of embed_symmetric. Throws Error(kNotSymmetric) if the so(4) block exceeds tol.
Quaternion extract_symmetric(const So14Matrix& m, double tol = kAlgebraicTol);

/// [[0, 0], [0, gamma]]; gamma must be skew (Error(kInvalidElement) otherwise).
So14Matrix k_block(const Eigen::Matrix4d& gamma);

/// The six so(4) generators. `right_*` act on the symmetric part by right multiplication
/// ([X_i, S] = S i), `left_*` by left multiplication ([_iX, S] = i S).
struct GammaBasis {
  So14Matrix right_i, right_j, right_k;
  So14Matrix left_i, left_j, left_k;

  std::array<So14Matrix, 6> all() const {
    return {right_i, right_j, right_k, left_i, left_j, left_k};
  }
};

const GammaBasis& gamma_basis();

/// Standard basis of so(1,4): embed(1), embed(i), embed(j), embed(k), then the six gammas
/// in GammaBasis::all() order.
std::array<So14Matrix, 10> so14_basis();

/// Cartan involution theta(X) = -X^t.
So14Matrix theta(const So14Matrix& m);

struct CartanSplit {
  So14Matrix k_part;  // theta(k) = k
  So14Matrix s_part;  // theta(s) = -s
};

CartanSplit cartan_split(const So14Matrix& m);

/// B_theta(a, b) = -<a, theta b> with the trace form <X, Y> = tr(XY); equals tr(a b^t).
double b_theta(const So14Matrix& a, const So14Matrix& b);

/// Gram matrix of b_theta on the given elements.
Eigen::MatrixXd b_theta_gram(std::span<const So14Matrix> elements);

/// Dimension of the Lie subalgebra of so(1,4) generated by `generators` (1..10).
/// LARC holds iff the result is 10. Throws Error(kArgument) on an empty list.
int larc_rank(std::span<const So14Matrix> generators);

/// Basis of the generated subalgebra (orthonormal in the Frobenius product).
std::vector<So14Matrix> larc_basis(std::span<const So14Matrix> generators);

// ---------------------------------------------------------------------------
// J_{1,4} realization (root-space work only; no conversion to I_{1,4}).

/// J = [[-1_3, 0, 0], [0, 0, 1], [0, 1, 0]].
Matrix5d j14();

/// Entrywise max of |J m + m^t J|.
double j14_membership_residual(const Matrix5d& m);

/// H = diag(0, 0, 0, alpha, -alpha), spanning the maximal abelian subalgebra a.
Matrix5d cartan_element(double alpha);

struct RootSpaceDecomp {
  std::vector<Matrix5d> g_plus;   // [H, X] = alpha X
  std::vector<Matrix5d> g_minus;  // [H, X] = -alpha X
  std::vector<Matrix5d> g_zero;   // centralizer of a: so(3) block plus a itself
};

RootSpaceDecomp root_space_decomposition();

}  // namespace geoctl
