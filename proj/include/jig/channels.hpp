// Unital completely positive maps in Kraus form, Phi(a) = sum_i K_i* a K_i,
// with the predual action on functionals and the metric monotonicity check
// G_{Phi*omega}(Phi*eta, Phi*eta) <= G_omega(eta, eta).  Multi-block shapes
// carry one Kraus family per block pair (block-diagonal maps only).
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "jig/algebra.hpp"
#include "jig/core.hpp"
#include "jig/functional.hpp"
#include "jig/metric.hpp"
#include "jig/random.hpp"

namespace jig {

class KrausMap {
 public:
  /// kraus[k][i] maps domain block k to codomain block k and has size
  /// n_k x m_k (domain dim by codomain dim).  Unitality sum K* K = 1 is
  /// enforced per block at construction.
  KrausMap(AlgebraShape domain, AlgebraShape codomain, std::vector<std::vector<Matrix>> kraus,
           double unital_tol = 1e-10)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), kraus_(std::move(kraus)) {
    if (domain_.block_count() != codomain_.block_count())
      throw ShapeError("kraus map needs matching block counts");
    if (static_cast<int>(kraus_.size()) != domain_.block_count())
      throw ShapeError("one kraus family per block required");
    for (int k = 0; k < domain_.block_count(); ++k) {
      const int n = domain_.block_dim(k);
      const int m = codomain_.block_dim(k);
      const auto& fam = kraus_[static_cast<size_t>(k)];
      if (fam.empty()) throw ElementError("empty kraus family");
      Matrix sum = Matrix::Zero(m, m);
      for (const Matrix& op : fam) {
        if (op.rows() != n || op.cols() != m)
          throw ShapeError("kraus operator has wrong size");
        sum += op.adjoint() * op;
      }
      if ((sum - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > unital_tol)
        throw ElementError("kraus family is not unital");
    }
  }

  static KrausMap unitary_conjugation(const Matrix& u) {
    const int n = static_cast<int>(u.rows());
    return KrausMap(AlgebraShape::full_matrix(n), AlgebraShape::full_matrix(n), {{u}});
  }

  /// One unitary per block of a multi-block shape.
  static KrausMap blockwise_unitary(const AlgebraShape& shape, const std::vector<Matrix>& us) {
    std::vector<std::vector<Matrix>> fams;
    fams.reserve(us.size());
    for (const Matrix& u : us) fams.push_back({u});
    return KrausMap(shape, shape, std::move(fams));
  }

  /// Projection onto the diagonal of M_n.
  static KrausMap pinching(int n) {
    std::vector<Matrix> fam;
    fam.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      Matrix e = Matrix::Zero(n, n);
      e(i, i) = 1.0;
      fam.push_back(std::move(e));
    }
    return KrausMap(AlgebraShape::full_matrix(n), AlgebraShape::full_matrix(n), {std::move(fam)});
  }

  /// Qubit depolarizing map, Phi(a) = (1 - lambda) a + lambda tr(a) 1/2.
  static KrausMap depolarizing(double lambda) {
    if (lambda < 0.0 || lambda > 4.0 / 3.0) throw ElementError("depolarizing weight out of range");
    const Matrix id = Matrix::Identity(2, 2);
    std::vector<Matrix> fam = {std::sqrt(1.0 - 0.75 * lambda) * id,
                               std::sqrt(0.25 * lambda) * pauli_x(),
                               std::sqrt(0.25 * lambda) * pauli_y(),
                               std::sqrt(0.25 * lambda) * pauli_z()};
    return KrausMap(AlgebraShape::full_matrix(2), AlgebraShape::full_matrix(2), {std::move(fam)});
  }

  /// Haar-random unital map M_n -> M_m: draw an isometry C^m -> C^n x C^e
  /// and read one n x m Kraus operator per environment slice.  Unitality is
  /// exact by construction.
  static KrausMap random_unital(Rng& rng, int domain_dim, int codomain_dim, int env_dim) {
    if (domain_dim * env_dim < codomain_dim)
      throw ElementError("environment too small for an isometry");
    Matrix v = random_isometry(rng, domain_dim * env_dim, codomain_dim);
    std::vector<Matrix> fam;
    fam.reserve(static_cast<size_t>(env_dim));
    for (int e = 0; e < env_dim; ++e) fam.push_back(v.middleRows(e * domain_dim, domain_dim));
    return KrausMap(AlgebraShape::full_matrix(domain_dim), AlgebraShape::full_matrix(codomain_dim),
                    {std::move(fam)});
  }

  const AlgebraShape& domain_shape() const { return domain_; }
  const AlgebraShape& codomain_shape() const { return codomain_; }
  const std::vector<std::vector<Matrix>>& kraus() const { return kraus_; }

  /// Phi(a) = sum_i K_i* a K_i, domain element to codomain element.
  AlgebraElement apply(const AlgebraElement& a) const {
    if (a.shape() != domain_) throw ShapeError("element not in the domain algebra");
    std::vector<Matrix> out;
    out.reserve(kraus_.size());
    for (int k = 0; k < domain_.block_count(); ++k) {
      const int m = codomain_.block_dim(k);
      Matrix img = Matrix::Zero(m, m);
      for (const Matrix& op : kraus_[static_cast<size_t>(k)])
        img += op.adjoint() * a.block(k) * op;
      out.push_back(std::move(img));
    }
    return AlgebraElement(codomain_, std::move(out));
  }

  /// Predual action on functionals over the codomain: density
  /// rho |-> sum_i K_i rho K_i*.  Trace preserving because Phi is unital.
  Functional dual_apply(const Functional& omega) const {
    if (omega.shape() != codomain_) throw ShapeError("functional not on the codomain algebra");
    std::vector<Matrix> out;
    out.reserve(kraus_.size());
    for (int k = 0; k < codomain_.block_count(); ++k) {
      const int n = domain_.block_dim(k);
      Matrix img = Matrix::Zero(n, n);
      for (const Matrix& op : kraus_[static_cast<size_t>(k)])
        img += op * omega.density().block(k) * op.adjoint();
      out.push_back(std::move(img));
    }
    return Functional(AlgebraElement(domain_, std::move(out)));
  }

 private:
  AlgebraShape domain_;
  AlgebraShape codomain_;
  std::vector<std::vector<Matrix>> kraus_;
};

/// Outcome of one monotonicity comparison.  Precondition violations throw;
/// holds == false signals a genuine inequality failure lhs > rhs + tol.
struct MonotonicityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline MonotonicityCheck check_monotonicity(const KrausMap& phi, const Functional& omega,
                                            const TangentFunctional& eta, double tol = 1e-9) {
  if (!is_nplf(omega)) throw PositivityError("monotonicity base must be positive");
  detail::require_same_base(omega, eta);

  Functional rho = phi.dual_apply(omega);
  Functional pushed = phi.dual_apply(eta.value());
  // Membership of the pushforward in the movable directions at rho is exact
  // in exact arithmetic; verify with a loosened cut so spectral jitter never
  // masquerades as an inequality violation.
  if (!is_absolutely_continuous(pushed, rho, 1e-7))
    throw NumericError("pushforward tangent left the movable directions");

  const double rhs = JordanLifter(omega).inner(eta.value(), eta.value());
  const double lhs = JordanLifter(rho).inner(pushed, pushed, 1e-7);
  return MonotonicityCheck{lhs, rhs, lhs <= rhs + tol};
}

/// Kadison-Schwarz gap Phi(a^2) - Phi(a)^2 for self-adjoint a; the minimum
/// eigenvalue over blocks should be >= -tol for a unital positive map.
inline double kadison_schwarz_gap(const KrausMap& phi, const AlgebraElement& a) {
  if (!is_self_adjoint(a)) throw ElementError("kadison-schwarz check needs self-adjoint input");
  AlgebraElement img = phi.apply(a);
  AlgebraElement gap = phi.apply(a * a) - img * img;
  double min_ev = 0.0;
  bool first = true;
  for (const Eigen::VectorXd& ev : hermitian_eigenvalues(gap)) {
    if (ev.size() == 0) continue;
    min_ev = first ? ev.minCoeff() : std::min(min_ev, ev.minCoeff());
    first = false;
  }
  return min_ev;
}

}  // namespace jig
