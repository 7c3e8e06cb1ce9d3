// Self-adjoint linear functionals via the trace pairing, support projections
// and the kernel geometry built on them: corner decompositions, the left
// kernel (Gel'fand ideal) and absolute continuity of one functional with
// respect to another.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "jig/algebra.hpp"
#include "jig/core.hpp"

namespace jig {

/// Self-adjoint functional xi(a) = sum_k Tr(rho_k a_k), stored by its density.
/// The density is symmetrized on construction; inputs further than tol from
/// Hermitian are rejected.
class Functional {
 public:
  explicit Functional(AlgebraElement density, double tol = kStructuralTol)
      : density_(std::move(density)) {
    if (!is_self_adjoint(density_, tol))
      throw ElementError("functional density is not self-adjoint");
    density_ = 0.5 * (density_ + density_.adjoint());
  }

  static Functional zero(const AlgebraShape& shape) {
    return Functional(AlgebraElement::zeros(shape));
  }

  /// Diagonal density on the abelian algebra C^n.
  static Functional from_abelian_weights(const Eigen::VectorXd& w) {
    return Functional(AlgebraElement::abelian_diagonal(w));
  }

  const AlgebraElement& density() const { return density_; }
  const AlgebraShape& shape() const { return density_.shape(); }

  Complex operator()(const AlgebraElement& a) const {
    density_.require_same_shape(a);
    Complex t(0.0, 0.0);
    for (int k = 0; k < density_.block_count(); ++k) t += (density_.block(k) * a.block(k)).trace();
    return t;
  }

  double trace() const { return jig::trace(density_).real(); }

  /// Functional norm: trace norm of the density (equals trace for positives).
  double norm() const {
    double s = 0.0;
    for (const Eigen::VectorXd& ev : hermitian_eigenvalues(density_)) s += ev.cwiseAbs().sum();
    return s;
  }

  Functional operator+(const Functional& o) const { return Functional(density_ + o.density_); }
  Functional operator-(const Functional& o) const { return Functional(density_ - o.density_); }
  Functional operator*(double c) const { return Functional(density_ * c); }
  friend Functional operator*(double c, const Functional& f) { return f * c; }

 private:
  AlgebraElement density_;
};

/// Normal positive linear functional: positive semidefinite density.
inline bool is_nplf(const Functional& xi, double tol = kStructuralTol) {
  return is_positive(xi.density(), tol);
}

/// Faithful: strictly positive density, minimum eigenvalue above tol.
inline bool is_faithful(const Functional& xi, double tol = kStructuralTol) {
  for (const Eigen::VectorXd& ev : hermitian_eigenvalues(xi.density()))
    if (ev.size() == 0 || ev.minCoeff() <= tol) return false;
  return true;
}

/// Support projection p of a positive functional, its complement q = 1 - p,
/// and the per-block ranks. The spectral cut keeps eigenvalues above
/// tol * (largest eigenvalue across all blocks).
struct SupportDecomposition {
  AlgebraElement p;
  AlgebraElement q;
  std::vector<int> block_ranks;

  int total_rank() const {
    int r = 0;
    for (int x : block_ranks) r += x;
    return r;
  }
};

inline SupportDecomposition support_projection(const Functional& omega,
                                               double tol = kSupportTol) {
  if (!is_nplf(omega)) throw PositivityError("support projection needs a positive functional");
  const AlgebraElement& rho = omega.density();
  const AlgebraShape& shape = rho.shape();

  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eigs;
  eigs.reserve(static_cast<size_t>(shape.block_count()));
  double lambda_max = 0.0;
  for (int k = 0; k < shape.block_count(); ++k) {
    eigs.emplace_back(rho.block(k));
    if (eigs.back().eigenvalues().size() > 0)
      lambda_max = std::max(lambda_max, eigs.back().eigenvalues().maxCoeff());
  }
  const double cut = tol * lambda_max;

  std::vector<Matrix> p_blocks, q_blocks;
  std::vector<int> ranks;
  for (int k = 0; k < shape.block_count(); ++k) {
    const int n = shape.block_dim(k);
    Matrix p = Matrix::Zero(n, n);
    int rank = 0;
    for (int i = 0; i < n; ++i) {
      if (eigs[static_cast<size_t>(k)].eigenvalues()(i) > cut) {
        const auto v = eigs[static_cast<size_t>(k)].eigenvectors().col(i);
        p += v * v.adjoint();
        ++rank;
      }
    }
    q_blocks.push_back(Matrix::Identity(n, n) - p);
    p_blocks.push_back(std::move(p));
    ranks.push_back(rank);
  }
  return SupportDecomposition{AlgebraElement(shape, std::move(p_blocks)),
                              AlgebraElement(shape, std::move(q_blocks)), std::move(ranks)};
}

/// Four-corner decomposition of a relative to a support projection:
/// a_xy = x a y for x, y in {p, q}.  The corners sum back to a.
struct CornerParts {
  AlgebraElement pp;
  AlgebraElement pq;
  AlgebraElement qp;
  AlgebraElement qq;
};

inline CornerParts block_decompose(const AlgebraElement& a, const SupportDecomposition& dec) {
  return CornerParts{dec.p * a * dec.p, dec.p * a * dec.q, dec.q * a * dec.p, dec.q * a * dec.q};
}

/// Membership in the left kernel N_omega = { a : omega(a* a) = 0 }.
/// Two equivalent criteria are evaluated, the quadratic form and the
/// vanishing of the pp and qp corners; they must agree.
inline bool in_gelfand_ideal(const AlgebraElement& a, const Functional& omega,
                             double tol = kStructuralTol) {
  const double scale = std::max(1.0, max_abs(a));
  const Complex q = omega(a.adjoint() * a);
  const bool by_form = q.real() <= tol * std::max(1.0, omega.norm()) * scale * scale;

  SupportDecomposition dec = support_projection(omega);
  CornerParts c = block_decompose(a, dec);
  const double corner = std::max(max_abs(c.pp), max_abs(c.qp));
  const bool by_corners = corner <= std::sqrt(tol) * scale;

  if (by_form != by_corners)
    throw NumericError("left-kernel criteria disagree; input sits on a tolerance boundary");
  return by_form;
}

/// xi absolutely continuous w.r.t. omega: the qq corner of xi's density
/// vanishes relative to its size, q being the kernel projection of omega.
inline bool is_absolutely_continuous(const Functional& xi, const Functional& omega,
                                     double tol = kStructuralTol) {
  xi.density().require_same_shape(omega.density());
  const double scale = max_abs(xi.density());
  if (scale == 0.0) return true;
  SupportDecomposition dec = support_projection(omega);
  const AlgebraElement qq = dec.q * xi.density() * dec.q;
  return max_abs(qq) <= tol * scale;
}

/// Real dimension of the absolutely continuous subspace at a positive
/// functional with block ranks r_k: sum of n_k^2 - (n_k - r_k)^2.
inline int absolutely_continuous_dim(const AlgebraShape& shape, const std::vector<int>& ranks) {
  if (static_cast<int>(ranks.size()) != shape.block_count())
    throw ShapeError("rank list does not match shape");
  int d = 0;
  for (int k = 0; k < shape.block_count(); ++k) {
    const int n = shape.block_dim(k);
    const int m = n - ranks[static_cast<size_t>(k)];
    d += n * n - m * m;
  }
  return d;
}

}  // namespace jig
