// Independent cross-check routes.  Each oracle reaches its answer along a
// different computational path than the module it validates: the lift oracle
// solves the anticommutator equation as one dense real linear system instead
// of working in an eigenbasis, the Fisher-Rao oracle uses closed-form weight
// derivatives and real arithmetic only, and the absolute-continuity oracle
// probes the kernel with explicit rank-one projections.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "jig/algebra.hpp"
#include "jig/core.hpp"
#include "jig/functional.hpp"
#include "jig/models.hpp"
#include "jig/random.hpp"

namespace jig {

/// Outcome of one comparison run: worst error over the sample set against a
/// declared tolerance.
struct OracleReport {
  std::string name;
  double max_abs_error = 0.0;
  long sample_count = 0;
  double tolerance = 0.0;
  bool pass = false;
  std::string worst_case;

  static OracleReport from(std::string name, double max_err, long n, double tol,
                           std::string worst = {}) {
    OracleReport r;
    r.name = std::move(name);
    r.max_abs_error = max_err;
    r.sample_count = n;
    r.tolerance = tol;
    r.pass = max_err <= tol;
    r.worst_case = std::move(worst);
    return r;
  }

  void absorb(double err, const std::string& description) {
    if (err > max_abs_error) {
      max_abs_error = err;
      worst_case = description;
    }
    ++sample_count;
    pass = max_abs_error <= tolerance;
  }
};

inline std::string format_report_line(const OracleReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "[%s] %-24s max_err=%.3e  tol=%.1e  n=%ld", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.max_abs_error, r.tolerance, r.sample_count);
  std::string line(buf);
  if (!r.pass && !r.worst_case.empty()) line += "  worst: " + r.worst_case;
  return line;
}

/// Solves rho a + a rho = 2 eta for self-adjoint a as a dense real linear
/// system in a Frobenius-orthonormal Hermitian basis, one system per block.
/// Requires a faithful base so the system is nonsingular.
inline AlgebraElement lift_oracle(const Functional& omega, const Functional& eta) {
  omega.density().require_same_shape(eta.density());
  for (const Eigen::VectorXd& ev : hermitian_eigenvalues(omega.density()))
    if (ev.size() == 0 || ev.minCoeff() <= 0.0)
      throw FaithfulnessError("lift oracle needs a faithful base (singular system otherwise)");

  const AlgebraShape& shape = omega.shape();
  std::vector<Matrix> out;
  out.reserve(static_cast<size_t>(shape.block_count()));
  for (int k = 0; k < shape.block_count(); ++k) {
    const int n = shape.block_dim(k);
    const std::vector<Matrix> basis = hermitian_basis(n);
    const int d = static_cast<int>(basis.size());
    const Matrix& rho = omega.density().block(k);

    Eigen::MatrixXd sys(d, d);
    Eigen::VectorXd rhs(d);
    for (int col = 0; col < d; ++col) {
      const Matrix image = rho * basis[static_cast<size_t>(col)] + basis[static_cast<size_t>(col)] * rho;
      for (int row = 0; row < d; ++row)
        sys(row, col) = (basis[static_cast<size_t>(row)] * image).trace().real();
    }
    for (int row = 0; row < d; ++row)
      rhs(row) = 2.0 * (basis[static_cast<size_t>(row)] * eta.density().block(k)).trace().real();

    const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(sys).solve(rhs);
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < d; ++i) a += x(i) * basis[static_cast<size_t>(i)];
    out.push_back(std::move(a));
  }
  return AlgebraElement(shape, std::move(out));
}

/// Metric of a faithful base through the dense-solve route:
/// g_ij = Tr(eta_j lift(eta_i)), traces taken directly on block matrices.
inline Eigen::MatrixXd lift_oracle_metric(const Functional& omega,
                                          const std::vector<Functional>& tangents) {
  const int k = static_cast<int>(tangents.size());
  std::vector<AlgebraElement> lifts;
  lifts.reserve(tangents.size());
  for (const Functional& t : tangents) lifts.push_back(lift_oracle(omega, t));
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Complex v(0.0, 0.0);
      for (int b = 0; b < omega.shape().block_count(); ++b)
        v += (tangents[static_cast<size_t>(j)].density().block(b) *
              lifts[static_cast<size_t>(i)].block(b))
                 .trace();
      g(i, j) = v.real();
    }
  return g;
}

/// Closed-form classical information matrix
/// g_ij(m) = sum_x d_i w_x d_j w_x / w_x from analytic weight derivatives.
inline MetricMatrix fisher_rao_oracle(const ClassicalFamily& fam, const Eigen::VectorXd& m) {
  if (!fam.weight_jacobian) throw ElementError("family carries no analytic weight derivatives");
  const Eigen::VectorXd w = fam.weights(m);
  const Eigen::MatrixXd jac = fam.weight_jacobian(m);
  if (w.minCoeff() <= 0.0) throw DomainError("zero weight; information matrix undefined");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(fam.param_dim, fam.param_dim);
  for (int x = 0; x < fam.outcomes; ++x)
    g += (jac.row(x).transpose() * jac.row(x)) / w(x);
  return MetricMatrix{m, std::move(g)};
}

/// Absolute continuity probed from the definition: xi must vanish on rank-one
/// projections annihilated by omega.  The kernel of each block is extracted
/// by a fresh eigendecomposition, then probed along its extremal directions
/// and a seeded sample of random unit vectors.
inline bool ac_enumeration_oracle(const Functional& xi, const Functional& omega, int samples,
                                  double tol = kStructuralTol, std::uint64_t seed = 0) {
  xi.density().require_same_shape(omega.density());
  const double scale = max_abs(xi.density());
  if (scale == 0.0) return true;

  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  double worst = 0.0;
  double lambda_max = 0.0;
  std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eigs;
  for (int k = 0; k < omega.density().block_count(); ++k) {
    eigs.emplace_back(omega.density().block(k));
    lambda_max = std::max(lambda_max, eigs.back().eigenvalues().cwiseAbs().maxCoeff());
  }
  for (int k = 0; k < omega.density().block_count(); ++k) {
    const Eigen::VectorXd& lam = eigs[static_cast<size_t>(k)].eigenvalues();
    const Matrix& vecs = eigs[static_cast<size_t>(k)].eigenvectors();
    std::vector<int> kernel;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      if (std::abs(lam(i)) <= 1e-10 * std::max(lambda_max, 1e-300)) kernel.push_back(static_cast<int>(i));
    if (kernel.empty()) continue;

    const int kd = static_cast<int>(kernel.size());
    Matrix kbasis(vecs.rows(), kd);
    for (int i = 0; i < kd; ++i) kbasis.col(i) = vecs.col(kernel[static_cast<size_t>(i)]);

    // Extremal probes: eigenvectors of the compressed block of xi.
    const Matrix compressed = kbasis.adjoint() * xi.density().block(k) * kbasis;
    Eigen::SelfAdjointEigenSolver<Matrix> ces(compressed);
    for (int i = 0; i < kd; ++i) {
      const Eigen::VectorXcd u = kbasis * ces.eigenvectors().col(i);
      worst = std::max(worst, std::abs((u.adjoint() * xi.density().block(k) * u)(0, 0)));
    }
    // Random probes.
    for (int s = 0; s < samples; ++s) {
      Eigen::VectorXcd c(kd);
      for (int i = 0; i < kd; ++i) c(i) = rng.cnormal();
      if (c.norm() == 0.0) continue;
      const Eigen::VectorXcd u = kbasis * (c / c.norm());
      worst = std::max(worst, std::abs((u.adjoint() * xi.density().block(k) * u)(0, 0)));
    }
  }
  return worst <= tol * scale;
}

/// Closed-form rank-one orbit metric on tangent vectors at the identity:
/// 2 (<x|y> + <y|x>) + (4 / C_phi) <x|phi><y|phi> with C_phi = <phi|phi>.
/// The second-term weight 1/C_phi is forced by how the pairing scales when
/// phi is rescaled; both terms are homogeneous of degree two in phi this way,
/// and at C_phi = 1 the form is 2(<x|y>+<y|x>) + 4<x|phi><y|phi>.  Evaluated
/// as written; a non-real value beyond realness_tol is flagged instead of
/// symmetrized away.
inline Eigen::MatrixXd rank_one_metric_closed_form(const Eigen::VectorXcd& phi,
                                                   const std::vector<Eigen::VectorXcd>& tangents,
                                                   double realness_tol = 1e-8) {
  const double c_phi = phi.squaredNorm();
  if (c_phi <= 0.0) throw ElementError("closed form needs a nonzero base vector");
  const int k = static_cast<int>(tangents.size());
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const Complex xy = tangents[static_cast<size_t>(i)].dot(tangents[static_cast<size_t>(j)]);
      const Complex yx = tangents[static_cast<size_t>(j)].dot(tangents[static_cast<size_t>(i)]);
      const Complex xp = tangents[static_cast<size_t>(i)].dot(phi);
      const Complex yp = tangents[static_cast<size_t>(j)].dot(phi);
      const Complex v = 2.0 * (xy + yx) + 4.0 * xp * yp / c_phi;
      if (std::abs(v.imag()) > realness_tol * std::max(1.0, std::abs(v.real())))
        throw NumericError("closed-form metric came out non-real");
      g(i, j) = v.real();
    }
  return g;
}

/// Gram form Re<v|w> of tangent vectors orthogonal to a unit vector phi; the
/// projective-space line element in these coordinates.
inline Eigen::MatrixXd fubini_study_gram(const Eigen::VectorXcd& phi,
                                         const std::vector<Eigen::VectorXcd>& tangents,
                                         double ortho_tol = 1e-8) {
  if (std::abs(phi.squaredNorm() - 1.0) > ortho_tol)
    throw ElementError("gram form expects a unit base vector");
  for (const Eigen::VectorXcd& v : tangents)
    if (std::abs(phi.dot(v)) > ortho_tol * std::max(1.0, v.norm()))
      throw ElementError("gram form expects tangents orthogonal to the base vector");
  const int k = static_cast<int>(tangents.size());
  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      g(i, j) = tangents[static_cast<size_t>(i)].dot(tangents[static_cast<size_t>(j)]).real();
  return g;
}

}  // namespace jig
