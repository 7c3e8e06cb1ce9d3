// The Jordan metric machinery: tangent functionals eta_a = omega({a, .}),
// the inverse lift solving the anticommutator equation in the eigenbasis of
// the base density, the inner product G_omega evaluated as one lift plus one
// trace, and the bilinear/trilinear descriptors built from the same pairing.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "jig/algebra.hpp"
#include "jig/core.hpp"
#include "jig/functional.hpp"

namespace jig {

/// Tangent direction at a positive base functional.  The value is a
/// self-adjoint functional absolutely continuous w.r.t. the base; that
/// membership is verified on construction.
class TangentFunctional {
 public:
  TangentFunctional(Functional base, Functional value, double ac_tol = kStructuralTol)
      : base_(std::move(base)), value_(std::move(value)) {
    base_.density().require_same_shape(value_.density());
    if (!is_nplf(base_)) throw PositivityError("tangent base must be positive");
    if (!is_absolutely_continuous(value_, base_, ac_tol))
      throw AbsoluteContinuityError("tangent charges the kernel of its base");
  }

  const Functional& base() const { return base_; }
  const Functional& value() const { return value_; }

 private:
  Functional base_;
  Functional value_;
};

/// Result of the inverse lift: a self-adjoint element with vanishing
/// kernel-corner relative to the support of the base functional.
struct LiftedElement {
  AlgebraElement element;
};

/// eta_a(b) = omega({a, b}); its density is the symmetrized product of the
/// base density with a.
inline TangentFunctional eta_from_element(const Functional& omega, const AlgebraElement& a,
                                          double tol = kStructuralTol) {
  if (!is_self_adjoint(a, tol)) throw ElementError("eta needs a self-adjoint element");
  AlgebraElement d = jordan_product(omega.density(), a);
  return TangentFunctional(omega, Functional(std::move(d)));
}

/// Solves 2 eta = rho a + a rho for self-adjoint a in the eigenbasis of rho,
/// one eigendecomposition per construction, reused across lifts.  Entries
/// with eigenvalue sum below kLiftMaskTol times the largest eigenvalue are
/// outside the support and must vanish in eta; they are zeroed in the lift.
class JordanLifter {
 public:
  explicit JordanLifter(const Functional& omega, double positivity_tol = kStructuralTol)
      : base_(omega) {
    if (!is_nplf(omega, positivity_tol)) throw PositivityError("lift base must be positive");
    const AlgebraElement& rho = omega.density();
    double lambda_max = 0.0;
    for (int k = 0; k < rho.block_count(); ++k) {
      eigs_.emplace_back(rho.block(k));
      if (eigs_.back().eigenvalues().size() > 0)
        lambda_max = std::max(lambda_max, eigs_.back().eigenvalues().maxCoeff());
    }
    mask_ = kLiftMaskTol * lambda_max;
  }

  const Functional& base() const { return base_; }

  LiftedElement lift(const Functional& eta, double ac_tol = kStructuralTol) const {
    base_.density().require_same_shape(eta.density());
    const double eta_scale = max_abs(eta.density());
    std::vector<Matrix> out;
    out.reserve(eigs_.size());
    for (size_t k = 0; k < eigs_.size(); ++k) {
      const Eigen::VectorXd& lam = eigs_[k].eigenvalues();
      const Matrix& v = eigs_[k].eigenvectors();
      const int n = static_cast<int>(lam.size());
      Matrix e = v.adjoint() * eta.density().block(static_cast<int>(k)) * v;
      Matrix a = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double den = lam(i) + lam(j);
          if (den > mask_) {
            a(i, j) = 2.0 * e(i, j) / den;
          } else if (std::abs(e(i, j)) > ac_tol * std::max(eta_scale, 1e-300)) {
            throw AbsoluteContinuityError("tangent charges the kernel; lift undefined");
          }
        }
      out.push_back(v * a * v.adjoint());
    }
    return LiftedElement{AlgebraElement(base_.shape(), std::move(out))};
  }

  /// G(eta1, eta2) = Tr(eta2_density * lift(eta1)); one lift, one trace.
  double inner(const Functional& eta1, const Functional& eta2,
               double ac_tol = kStructuralTol) const {
    LiftedElement a1 = lift(eta1, ac_tol);
    Complex g = eta2(a1.element);
    if (std::abs(g.imag()) > 1e-8 * std::max(1.0, std::abs(g.real())))
      throw NumericError("metric pairing came out non-real");
    return g.real();
  }

 private:
  Functional base_;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eigs_;
  double mask_ = 0.0;
};

inline LiftedElement jordan_lift(const Functional& omega, const Functional& eta,
                                 double ac_tol = kStructuralTol) {
  return JordanLifter(omega).lift(eta, ac_tol);
}

inline LiftedElement jordan_lift(const Functional& omega, const TangentFunctional& eta,
                                 double ac_tol = kStructuralTol) {
  return JordanLifter(omega).lift(eta.value(), ac_tol);
}

namespace detail {
inline void require_same_base(const Functional& omega, const TangentFunctional& t,
                              double tol = 1e-9) {
  omega.density().require_same_shape(t.base().density());
  const double scale = std::max(1.0, max_abs(omega.density()));
  if (max_abs(omega.density() - t.base().density()) > tol * scale)
    throw ElementError("tangent is based at a different functional");
}
}  // namespace detail

/// Riemannian pairing G_omega(eta1, eta2) on tangent functionals at omega.
inline double inner_product(const Functional& omega, const TangentFunctional& eta1,
                            const TangentFunctional& eta2) {
  detail::require_same_base(omega, eta1);
  detail::require_same_base(omega, eta2);
  return JordanLifter(omega).inner(eta1.value(), eta2.value());
}

/// Jordan tensor R_xi(a, b) = xi({a, b}) for self-adjoint a, b.
inline double jordan_tensor(const Functional& xi, const AlgebraElement& a,
                            const AlgebraElement& b, double tol = kStructuralTol) {
  if (!is_self_adjoint(a, tol) || !is_self_adjoint(b, tol))
    throw ElementError("jordan tensor needs self-adjoint arguments");
  Complex r = xi(jordan_product(a, b));
  if (std::abs(r.imag()) > 1e-8 * std::max(1.0, std::abs(r.real())))
    throw NumericError("jordan tensor came out non-real");
  return r.real();
}

/// Rank of a |-> {xi_density, a} on the self-adjoint part, computed blockwise
/// as an SVD rank in a Frobenius-orthonormal Hermitian basis.  For positive
/// xi with block ranks r_k this equals sum n_k^2 - (n_k - r_k)^2.
inline int distribution_dim(const Functional& xi, double rank_tol = 1e-8) {
  const AlgebraElement& d = xi.density();
  int dim = 0;
  for (int k = 0; k < d.block_count(); ++k) {
    const int n = d.shape().block_dim(k);
    const std::vector<Matrix> basis = hermitian_basis(n);
    const int m = static_cast<int>(basis.size());
    Eigen::MatrixXd map(m, m);
    for (int col = 0; col < m; ++col) {
      const Matrix image =
          0.5 * (d.block(k) * basis[static_cast<size_t>(col)] +
                 basis[static_cast<size_t>(col)] * d.block(k));
      for (int row = 0; row < m; ++row)
        map(row, col) = (basis[static_cast<size_t>(row)].adjoint() * image).trace().real();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(map);
    const Eigen::VectorXd sv = svd.singularValues();
    if (sv.size() == 0) continue;
    const double cut = rank_tol * sv(0);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cut && sv(0) > 0.0) ++dim;
  }
  return dim;
}

/// Trilinear descriptor T_omega(eta_a, eta_b, eta_c) = omega({a, b, c}) with
/// the arguments recovered by lifting.  Restricted to faithful omega, where
/// the lifts are unique.
inline double triple_tensor(const Functional& omega, const TangentFunctional& ta,
                            const TangentFunctional& tb, const TangentFunctional& tc) {
  if (!is_faithful(omega)) throw FaithfulnessError("triple tensor needs a faithful base");
  detail::require_same_base(omega, ta);
  detail::require_same_base(omega, tb);
  detail::require_same_base(omega, tc);
  JordanLifter lifter(omega);
  AlgebraElement a = lifter.lift(ta.value()).element;
  AlgebraElement b = lifter.lift(tb.value()).element;
  AlgebraElement c = lifter.lift(tc.value()).element;
  Complex t = omega(jordan_triple(a, b, c));
  if (std::abs(t.imag()) > 1e-8 * std::max(1.0, std::abs(t.real())))
    throw NumericError("triple tensor came out non-real");
  return t.real();
}

}  // namespace jig
