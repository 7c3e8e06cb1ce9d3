// Seeded sampling utilities.  The generator wraps mt19937_64 with hand-rolled
// uniform and Box-Muller transforms so streams are pinned byte-for-byte by
// the seed alone, independent of standard-library distribution internals.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "jig/algebra.hpp"
#include "jig/core.hpp"
#include "jig/functional.hpp"

namespace jig {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Inclusive integer range.
  int uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    int v = lo + static_cast<int>(uniform() * span);
    return v > hi ? hi : v;
  }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex cnormal() { return Complex(normal(), normal()); }

 private:
  std::mt19937_64 eng_;
};

inline Matrix random_gaussian_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.cnormal();
  return m;
}

inline Matrix random_hermitian(Rng& rng, int n) {
  Matrix g = random_gaussian_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

/// Haar-distributed isometry, rows >= cols: QR of a complex Gaussian with the
/// R-diagonal phases absorbed into Q.
inline Matrix random_isometry(Rng& rng, int rows, int cols) {
  if (rows < cols) throw ElementError("isometry needs rows >= cols");
  Matrix g = random_gaussian_matrix(rng, rows, cols);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double m = std::abs(d);
    q.col(j) *= (m > 0.0) ? d / m : Complex(1.0, 0.0);
  }
  return q;
}

inline Matrix random_unitary(Rng& rng, int n) { return random_isometry(rng, n, n); }

inline Eigen::VectorXcd random_unit_vector(Rng& rng, int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.cnormal();
  const double nrm = v.norm();
  return nrm > 0.0 ? Eigen::VectorXcd(v / nrm) : random_unit_vector(rng, n);
}

inline AlgebraElement random_self_adjoint_element(Rng& rng, const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(shape.block_count()));
  for (int k = 0; k < shape.block_count(); ++k)
    blocks.push_back(random_hermitian(rng, shape.block_dim(k)));
  return AlgebraElement(shape, std::move(blocks));
}

inline AlgebraElement random_element(Rng& rng, const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(shape.block_count()));
  for (int k = 0; k < shape.block_count(); ++k)
    blocks.push_back(random_gaussian_matrix(rng, shape.block_dim(k), shape.block_dim(k)));
  return AlgebraElement(shape, std::move(blocks));
}

/// Positive density with prescribed block ranks; nonzero eigenvalues are kept
/// in [0.2, 1] so spectral cuts are never borderline.
inline Functional random_nplf(Rng& rng, const AlgebraShape& shape, const std::vector<int>& ranks) {
  if (static_cast<int>(ranks.size()) != shape.block_count())
    throw ShapeError("rank list does not match shape");
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(shape.block_count()));
  for (int k = 0; k < shape.block_count(); ++k) {
    const int n = shape.block_dim(k);
    const int r = ranks[static_cast<size_t>(k)];
    if (r < 0 || r > n) throw ShapeError("block rank out of range");
    Matrix u = random_unitary(rng, n);
    Eigen::VectorXd ev = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < r; ++i) ev(i) = rng.uniform(0.2, 1.0);
    blocks.push_back(u * ev.asDiagonal() * u.adjoint());
  }
  return Functional(AlgebraElement(shape, std::move(blocks)));
}

inline Functional random_faithful_nplf(Rng& rng, const AlgebraShape& shape) {
  return random_nplf(rng, shape, shape.block_dims());
}

}  // namespace jig
