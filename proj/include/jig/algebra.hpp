// Finite-dimensional W*-algebras as direct sums of full complex matrix
// blocks, together with the associative, Jordan and Lie products and the
// spectral predicates everything downstream relies on.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jig/core.hpp"

namespace jig {

using Matrix = Eigen::MatrixXcd;

/// Block structure (n_1, ..., n_B) of a direct sum of full matrix algebras.
class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
    if (dims_.empty()) throw ShapeError("shape needs at least one block");
    for (int n : dims_)
      if (n < 1) throw ShapeError("block dimensions must be positive");
  }

  static AlgebraShape full_matrix(int n) { return AlgebraShape({n}); }
  static AlgebraShape abelian(int points) {
    return AlgebraShape(std::vector<int>(static_cast<size_t>(points), 1));
  }

  int block_count() const { return static_cast<int>(dims_.size()); }
  int block_dim(int k) const { return dims_[static_cast<size_t>(k)]; }
  const std::vector<int>& block_dims() const { return dims_; }

  /// Real dimension of the self-adjoint part, sum of n_k^2.
  int self_adjoint_dim() const {
    int d = 0;
    for (int n : dims_) d += n * n;
    return d;
  }

  bool operator==(const AlgebraShape& o) const { return dims_ == o.dims_; }
  bool operator!=(const AlgebraShape& o) const { return dims_ != o.dims_; }

  std::string to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
    os << ")";
    return os.str();
  }

 private:
  std::vector<int> dims_;
};

/// Element of a block algebra: one complex matrix per block.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks)
      : shape_(std::move(shape)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != shape_.block_count())
      throw ShapeError("block count mismatch");
    for (int k = 0; k < shape_.block_count(); ++k) {
      const Matrix& b = blocks_[static_cast<size_t>(k)];
      if (b.rows() != shape_.block_dim(k) || b.cols() != shape_.block_dim(k))
        throw ShapeError("block " + std::to_string(k) + " has wrong size for shape " +
                         shape_.to_string());
    }
  }

  static AlgebraElement zeros(const AlgebraShape& shape) {
    std::vector<Matrix> b;
    b.reserve(static_cast<size_t>(shape.block_count()));
    for (int k = 0; k < shape.block_count(); ++k)
      b.push_back(Matrix::Zero(shape.block_dim(k), shape.block_dim(k)));
    return AlgebraElement(shape, std::move(b));
  }

  static AlgebraElement identity(const AlgebraShape& shape) {
    std::vector<Matrix> b;
    b.reserve(static_cast<size_t>(shape.block_count()));
    for (int k = 0; k < shape.block_count(); ++k)
      b.push_back(Matrix::Identity(shape.block_dim(k), shape.block_dim(k)));
    return AlgebraElement(shape, std::move(b));
  }

  /// Single full matrix block M_n.
  static AlgebraElement single_block(Matrix m) {
    if (m.rows() != m.cols()) throw ShapeError("block must be square");
    AlgebraShape s = AlgebraShape::full_matrix(static_cast<int>(m.rows()));
    std::vector<Matrix> b;
    b.push_back(std::move(m));
    return AlgebraElement(std::move(s), std::move(b));
  }

  /// Diagonal element of the abelian algebra C^n.
  static AlgebraElement abelian_diagonal(const Eigen::VectorXd& w) {
    AlgebraShape s = AlgebraShape::abelian(static_cast<int>(w.size()));
    std::vector<Matrix> b;
    b.reserve(static_cast<size_t>(w.size()));
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      Matrix m(1, 1);
      m(0, 0) = Complex(w(i), 0.0);
      b.push_back(std::move(m));
    }
    return AlgebraElement(std::move(s), std::move(b));
  }

  const AlgebraShape& shape() const { return shape_; }
  int block_count() const { return shape_.block_count(); }
  const Matrix& block(int k) const { return blocks_[static_cast<size_t>(k)]; }

  AlgebraElement adjoint() const {
    std::vector<Matrix> b;
    b.reserve(blocks_.size());
    for (const Matrix& m : blocks_) b.push_back(m.adjoint());
    return AlgebraElement(shape_, std::move(b));
  }

  AlgebraElement operator+(const AlgebraElement& o) const {
    require_same_shape(o);
    std::vector<Matrix> b;
    b.reserve(blocks_.size());
    for (size_t k = 0; k < blocks_.size(); ++k) b.push_back(blocks_[k] + o.blocks_[k]);
    return AlgebraElement(shape_, std::move(b));
  }

  AlgebraElement operator-(const AlgebraElement& o) const {
    require_same_shape(o);
    std::vector<Matrix> b;
    b.reserve(blocks_.size());
    for (size_t k = 0; k < blocks_.size(); ++k) b.push_back(blocks_[k] - o.blocks_[k]);
    return AlgebraElement(shape_, std::move(b));
  }

  AlgebraElement operator-() const {
    std::vector<Matrix> b;
    b.reserve(blocks_.size());
    for (const Matrix& m : blocks_) b.push_back(-m);
    return AlgebraElement(shape_, std::move(b));
  }

  AlgebraElement operator*(Complex c) const {
    std::vector<Matrix> b;
    b.reserve(blocks_.size());
    for (const Matrix& m : blocks_) b.push_back(c * m);
    return AlgebraElement(shape_, std::move(b));
  }
  AlgebraElement operator*(double c) const { return (*this) * Complex(c, 0.0); }
  friend AlgebraElement operator*(Complex c, const AlgebraElement& a) { return a * c; }
  friend AlgebraElement operator*(double c, const AlgebraElement& a) { return a * c; }

  /// Associative blockwise matrix product.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    a.require_same_shape(b);
    std::vector<Matrix> m;
    m.reserve(a.blocks_.size());
    for (size_t k = 0; k < a.blocks_.size(); ++k) m.push_back(a.blocks_[k] * b.blocks_[k]);
    return AlgebraElement(a.shape_, std::move(m));
  }

  void require_same_shape(const AlgebraElement& o) const {
    if (shape_ != o.shape_)
      throw ShapeError("shape mismatch: " + shape_.to_string() + " vs " + o.shape_.to_string());
  }

 private:
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;
};

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

/// Jordan product {a,b} = (ab + ba)/2, the symmetrized product.
inline AlgebraElement jordan_product(const AlgebraElement& a, const AlgebraElement& b) {
  return (a * b + b * a) * 0.5;
}

/// Lie product [a,b] = (ab - ba)/(2i); keeps self-adjoint elements self-adjoint.
inline AlgebraElement lie_product(const AlgebraElement& a, const AlgebraElement& b) {
  return (a * b - b * a) * Complex(0.0, -0.5);
}

/// Jordan triple product {a,b,c} = {{a,b},c} + {a,{b,c}} - {b,{a,c}};
/// for associative representations this equals (abc + cba)/2.
inline AlgebraElement jordan_triple(const AlgebraElement& a, const AlgebraElement& b,
                                    const AlgebraElement& c) {
  return jordan_product(jordan_product(a, b), c) + jordan_product(a, jordan_product(b, c)) -
         jordan_product(b, jordan_product(a, c));
}

inline double max_abs(const AlgebraElement& a) {
  double m = 0.0;
  for (int k = 0; k < a.block_count(); ++k)
    if (a.block(k).size() > 0) m = std::max(m, a.block(k).cwiseAbs().maxCoeff());
  return m;
}

inline double frobenius_norm(const AlgebraElement& a) {
  double s = 0.0;
  for (int k = 0; k < a.block_count(); ++k) s += a.block(k).squaredNorm();
  return std::sqrt(s);
}

/// Operator norm: largest singular value over all blocks.
inline double operator_norm(const AlgebraElement& a) {
  double m = 0.0;
  for (int k = 0; k < a.block_count(); ++k) {
    const Matrix& b = a.block(k);
    if (b.rows() == 1) {
      m = std::max(m, std::abs(b(0, 0)));
      continue;
    }
    Eigen::JacobiSVD<Matrix> svd(b);
    m = std::max(m, svd.singularValues()(0));
  }
  return m;
}

inline Complex trace(const AlgebraElement& a) {
  Complex t(0.0, 0.0);
  for (int k = 0; k < a.block_count(); ++k) t += a.block(k).trace();
  return t;
}

inline bool is_self_adjoint(const AlgebraElement& a, double tol = kStructuralTol) {
  double dev = 0.0;
  for (int k = 0; k < a.block_count(); ++k)
    dev = std::max(dev, (a.block(k) - a.block(k).adjoint()).cwiseAbs().maxCoeff());
  return dev <= tol * std::max(1.0, max_abs(a));
}

/// Eigenvalues of each block of a self-adjoint element, ascending per block.
inline std::vector<Eigen::VectorXd> hermitian_eigenvalues(const AlgebraElement& a) {
  std::vector<Eigen::VectorXd> ev;
  ev.reserve(static_cast<size_t>(a.block_count()));
  for (int k = 0; k < a.block_count(); ++k) {
    Matrix h = 0.5 * (a.block(k) + a.block(k).adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    ev.push_back(es.eigenvalues());
  }
  return ev;
}

/// True iff a is self-adjoint within tol and every block eigenvalue is >= -tol.
/// Eigenvalues are taken of the symmetrized blocks (a + a*)/2.
inline bool is_positive(const AlgebraElement& a, double tol = kStructuralTol) {
  if (!is_self_adjoint(a, tol)) return false;
  for (const Eigen::VectorXd& ev : hermitian_eigenvalues(a))
    if (ev.size() > 0 && ev.minCoeff() < -tol) return false;
  return true;
}

/// Frobenius-orthonormal basis of the real vector space of Hermitian n x n
/// matrices: diagonal units, symmetric and antisymmetric off-diagonal pairs.
inline std::vector<Matrix> hermitian_basis(int n) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(n * n));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    Matrix m = Matrix::Zero(n, n);
    m(i, i) = 1.0;
    basis.push_back(std::move(m));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix s = Matrix::Zero(n, n);
      s(i, j) = inv_sqrt2;
      s(j, i) = inv_sqrt2;
      basis.push_back(std::move(s));
      Matrix t = Matrix::Zero(n, n);
      t(i, j) = Complex(0.0, inv_sqrt2);
      t(j, i) = Complex(0.0, -inv_sqrt2);
      basis.push_back(std::move(t));
    }
  return basis;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace jig
