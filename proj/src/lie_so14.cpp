#include "geoctl/lie_so14.hpp"

#include <cmath>

#include "geoctl/errors.hpp"
#include "geoctl/lie_closure.hpp"

namespace geoctl {

Matrix5d i14() {
  Matrix5d m = Matrix5d::Zero();
  m.diagonal() << 1.0, -1.0, -1.0, -1.0, -1.0;
  return m;
}

double So14Matrix::membership_residual(const Matrix5d& m) {
  const Matrix5d I = i14();
  return (I * m + m.transpose() * I).cwiseAbs().maxCoeff();
}

So14Matrix So14Matrix::from_matrix(const Matrix5d& m, double tol) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kInvalidElement, "non-finite so(1,4) matrix");
  }
  if (membership_residual(m) > tol || std::abs(m.trace()) > tol) {
    throw Error(ErrorCode::kInvalidElement, "matrix is not in so(1,4)");
  }
  return So14Matrix(m);
}

std::array<double, 25> So14Matrix::row_major() const {
  std::array<double, 25> out{};
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      out[static_cast<std::size_t>(5 * r + c)] = m_(r, c);
    }
  }
  return out;
}

So14Matrix So14Matrix::from_row_major(std::span<const double> entries, double tol) {
  if (entries.size() != 25) {
    throw Error(ErrorCode::kInvalidElement, "so(1,4) matrix needs 25 entries");
  }
  Matrix5d m;
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      m(r, c) = entries[static_cast<std::size_t>(5 * r + c)];
    }
  }
  return from_matrix(m, tol);
}

So14Matrix bracket(const So14Matrix& a, const So14Matrix& b) {
  return So14Matrix(a.m_ * b.m_ - b.m_ * a.m_);
}

So14Matrix embed_symmetric(const Quaternion& q) {
  Matrix5d m = Matrix5d::Zero();
  const Eigen::Vector4d beta(q.w, q.x, q.y, q.z);
  m.block<1, 4>(0, 1) = beta.transpose();
  m.block<4, 1>(1, 0) = beta;
  return So14Matrix(m);
}

Quaternion extract_symmetric(const So14Matrix& m, double tol) {
  if (m.gamma().cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::kNotSymmetric, "matrix has a nonzero so(4) block");
  }
  const Eigen::Vector4d b = m.beta();
  return {b(0), b(1), b(2), b(3)};
}

So14Matrix k_block(const Eigen::Matrix4d& gamma) {
  if ((gamma + gamma.transpose()).cwiseAbs().maxCoeff() > kAlgebraicTol) {
    throw Error(ErrorCode::kInvalidElement, "so(4) block must be skew-symmetric");
  }
  Matrix5d m = Matrix5d::Zero();
  m.block<4, 4>(1, 1) = gamma;
  return So14Matrix(m);
}

namespace {

Eigen::Matrix4d blocks(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b, const Eigen::Matrix2d& c,
                       const Eigen::Matrix2d& d) {
  Eigen::Matrix4d m;
  m << a, b, c, d;
  return m;
}

GammaBasis make_gamma_basis() {
  Eigen::Matrix2d a2;
  a2 << 0, -1, 1, 0;
  Eigen::Matrix2d b2;
  b2 << 0, 1, 1, 0;
  Eigen::Matrix2d c2;
  c2 << -1, 0, 0, 1;
  const Eigen::Matrix2d z = Eigen::Matrix2d::Zero();
  const Eigen::Matrix2d one = Eigen::Matrix2d::Identity();

  GammaBasis g;
  g.right_i = k_block(blocks(a2, z, z, -a2));
  g.right_j = k_block(blocks(z, -one, one, z));
  g.right_k = k_block(blocks(z, a2, a2, z));
  g.left_i = k_block(blocks(a2, z, z, a2));
  g.left_j = k_block(blocks(z, c2, -c2, z));
  g.left_k = k_block(blocks(z, -b2, b2, z));
  return g;
}

}  // namespace

const GammaBasis& gamma_basis() {
  static const GammaBasis basis = make_gamma_basis();
  return basis;
}

std::array<So14Matrix, 10> so14_basis() {
  const auto g = gamma_basis().all();
  return {embed_symmetric(1.0),          embed_symmetric(Quaternion::i()),
          embed_symmetric(Quaternion::j()), embed_symmetric(Quaternion::k()),
          g[0], g[1], g[2], g[3], g[4], g[5]};
}

So14Matrix theta(const So14Matrix& m) { return So14Matrix(-m.m_.transpose()); }

CartanSplit cartan_split(const So14Matrix& m) {
  // k = (X + theta X)/2 and s = (X - theta X)/2 are exactly the gamma and beta blocks.
  CartanSplit split;
  split.k_part = k_block(m.gamma());
  Eigen::Vector4d b = m.beta();
  split.s_part = embed_symmetric(Quaternion(b(0), b(1), b(2), b(3)));
  return split;
}

double b_theta(const So14Matrix& a, const So14Matrix& b) {
  return -(a.matrix() * theta(b).matrix()).trace();
}

Eigen::MatrixXd b_theta_gram(std::span<const So14Matrix> elements) {
  const auto n = static_cast<Eigen::Index>(elements.size());
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      gram(r, c) = b_theta(elements[static_cast<std::size_t>(r)],
                           elements[static_cast<std::size_t>(c)]);
    }
  }
  return gram;
}

std::vector<So14Matrix> larc_basis(std::span<const So14Matrix> generators) {
  if (generators.empty()) {
    throw Error(ErrorCode::kArgument, "larc_rank needs at least one generator");
  }
  std::vector<Eigen::MatrixXd> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) {
    if (So14Matrix::membership_residual(g.matrix()) > kAlgebraicTol) {
      throw Error(ErrorCode::kInvalidElement, "generator is not in so(1,4)");
    }
    gens.emplace_back(g.matrix());
  }
  const auto closure = lie_closure(gens, 10, kRankTol);
  std::vector<So14Matrix> out;
  out.reserve(closure.size());
  for (const auto& b : closure) {
    // Gram-Schmidt output stays in so(1,4) up to rounding.
    out.push_back(So14Matrix::from_matrix(b, 1e-9));
  }
  return out;
}

int larc_rank(std::span<const So14Matrix> generators) {
  return static_cast<int>(larc_basis(generators).size());
}

Matrix5d j14() {
  Matrix5d m = Matrix5d::Zero();
  m(0, 0) = m(1, 1) = m(2, 2) = -1.0;
  m(3, 4) = m(4, 3) = 1.0;
  return m;
}

double j14_membership_residual(const Matrix5d& m) {
  const Matrix5d J = j14();
  return (J * m + m.transpose() * J).cwiseAbs().maxCoeff();
}

Matrix5d cartan_element(double alpha) {
  Matrix5d h = Matrix5d::Zero();
  h(3, 3) = alpha;
  h(4, 4) = -alpha;
  return h;
}

RootSpaceDecomp root_space_decomposition() {
  // X = [[A, B, C], [C^t, alpha, 0], [B^t, 0, -alpha]] with A in so(3), B and C columns.
  RootSpaceDecomp d;
  for (int a = 0; a < 3; ++a) {
    Matrix5d plus = Matrix5d::Zero();  // C = e_a
    plus(a, 4) = 1.0;
    plus(3, a) = 1.0;
    d.g_plus.push_back(plus);

    Matrix5d minus = Matrix5d::Zero();  // B = e_a
    minus(a, 3) = 1.0;
    minus(4, a) = 1.0;
    d.g_minus.push_back(minus);
  }
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& p : pairs) {
    Matrix5d rot = Matrix5d::Zero();
    rot(p[0], p[1]) = -1.0;
    rot(p[1], p[0]) = 1.0;
    d.g_zero.push_back(rot);
  }
  d.g_zero.push_back(cartan_element(1.0));
  return d;
}

}  // namespace geoctl
