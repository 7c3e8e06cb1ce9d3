// Parametrized statistical models: a smooth box domain, a point map into
// positive functionals and coordinate tangents (analytic or central finite
// differences with one Richardson refinement).  The pullback metric is
// assembled with one lift per coordinate direction.  Ships three families:
// classical diagonal models, the Bloch ball, and rank-one unitary orbits in
// exponential coordinates.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jig/algebra.hpp"
#include "jig/core.hpp"
#include "jig/functional.hpp"
#include "jig/metric.hpp"

namespace jig {

/// Axis-aligned open box.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static Box cube(int dim, double lo_v, double hi_v) {
    return Box{Eigen::VectorXd::Constant(dim, lo_v), Eigen::VectorXd::Constant(dim, hi_v)};
  }

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Eigen::VectorXd& m) const {
    if (m.size() != lo.size()) return false;
    for (Eigen::Index i = 0; i < m.size(); ++i)
      if (!(m(i) > lo(i) && m(i) < hi(i))) return false;
    return true;
  }
};

enum class TangentMode { Analytic, FiniteDifference };

struct FdOptions {
  double step = kFdStep;  // scaled by 1 + |m|_inf, one Richardson pass on top
};

class ParametricModel {
 public:
  using PointMap = std::function<Functional(const Eigen::VectorXd&)>;
  using TangentMap = std::function<Functional(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

  ParametricModel(AlgebraShape shape, Box domain, PointMap point_map,
                  TangentMap analytic_tangent = nullptr,
                  TangentMode mode = TangentMode::Analytic, FdOptions fd = {})
      : shape_(std::move(shape)),
        domain_(std::move(domain)),
        point_(std::move(point_map)),
        analytic_(std::move(analytic_tangent)),
        mode_(analytic_ ? mode : TangentMode::FiniteDifference),
        fd_(fd) {
    if (!point_) throw ElementError("model needs a point map");
  }

  const AlgebraShape& shape() const { return shape_; }
  const Box& domain() const { return domain_; }
  int param_dim() const { return domain_.dim(); }
  bool has_analytic_tangent() const { return static_cast<bool>(analytic_); }
  TangentMode tangent_mode() const { return mode_; }
  double fd_step() const { return fd_.step; }

  ParametricModel with_tangent_mode(TangentMode mode) const {
    if (mode == TangentMode::Analytic && !analytic_)
      throw ElementError("model has no analytic tangent map");
    ParametricModel copy = *this;
    copy.mode_ = mode;
    return copy;
  }

  ParametricModel with_fd_step(double step) const {
    if (!(step > 0.0)) throw ElementError("finite-difference step must be positive");
    ParametricModel copy = *this;
    copy.fd_.step = step;
    return copy;
  }

  Functional point(const Eigen::VectorXd& m) const {
    require_in_domain(m);
    return point_(m);
  }

  /// Directional derivative of the point map.  Analytic mode calls the
  /// supplied map; finite-difference mode uses central differences with one
  /// Richardson refinement, step scaled by the parameter magnitude.
  Functional tangent(const Eigen::VectorXd& m, const Eigen::VectorXd& direction) const {
    require_in_domain(m);
    if (direction.size() != m.size()) throw ShapeError("direction dimension mismatch");
    if (mode_ == TangentMode::Analytic) return analytic_(m, direction);

    const double h = fd_.step * (1.0 + m.cwiseAbs().maxCoeff());
    const double dir_scale = direction.cwiseAbs().maxCoeff();
    if (dir_scale > 0.0 && (m + h * direction).isApprox(m))
      throw NumericError("finite-difference step underflows the parameter");
    for (double s : {h, -h, 0.5 * h, -0.5 * h})
      if (!domain_.contains(m + s * direction))
        throw DomainError("finite-difference stencil leaves the model domain");

    const AlgebraElement d_h = central_difference(m, direction, h);
    const AlgebraElement d_h2 = central_difference(m, direction, 0.5 * h);
    return Functional((4.0 / 3.0) * d_h2 - (1.0 / 3.0) * d_h);
  }

 private:
  void require_in_domain(const Eigen::VectorXd& m) const {
    if (!domain_.contains(m))
      throw DomainError("parameter outside the declared model domain");
  }

  AlgebraElement central_difference(const Eigen::VectorXd& m, const Eigen::VectorXd& dir,
                                    double h) const {
    AlgebraElement plus = point_(m + h * dir).density();
    AlgebraElement minus = point_(m - h * dir).density();
    return (plus - minus) * (0.5 / h);
  }

  AlgebraShape shape_;
  Box domain_;
  PointMap point_;
  TangentMap analytic_;
  TangentMode mode_;
  FdOptions fd_;
};

/// Coordinate tangent densities, flattened to real vectors, are linearly
/// independent at m (SVD rank equals the parameter dimension).
inline bool is_locally_identifiable(const ParametricModel& model, const Eigen::VectorXd& m,
                                    double rank_tol = 1e-9) {
  const int k = model.param_dim();
  const int d = model.shape().self_adjoint_dim();
  Eigen::MatrixXd rows(k, 2 * d);
  for (int i = 0; i < k; ++i) {
    Functional t = model.tangent(m, Eigen::VectorXd::Unit(k, i));
    int col = 0;
    for (int b = 0; b < t.density().block_count(); ++b) {
      const Matrix& blk = t.density().block(b);
      for (Eigen::Index r = 0; r < blk.rows(); ++r)
        for (Eigen::Index c = 0; c < blk.cols(); ++c) {
          rows(i, col++) = blk(r, c).real();
          rows(i, col++) = blk(r, c).imag();
        }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return k == 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * sv(0)) ++rank;
  return rank == k;
}

/// Regularity at m: the point is positive and every coordinate tangent has a
/// vanishing kernel corner relative to the support of the point.
inline bool check_j_regular(const ParametricModel& model, const Eigen::VectorXd& m,
                            double tol = kStructuralTol) {
  Functional omega = model.point(m);
  if (!is_nplf(omega)) return false;
  SupportDecomposition dec = support_projection(omega);
  for (int i = 0; i < model.param_dim(); ++i) {
    Functional t = model.tangent(m, Eigen::VectorXd::Unit(model.param_dim(), i));
    const double scale = max_abs(t.density());
    if (scale == 0.0) continue;
    if (max_abs(dec.q * t.density() * dec.q) > tol * scale) return false;
  }
  return true;
}

/// Metric value at one parameter point.
struct MetricMatrix {
  Eigen::VectorXd point;
  Eigen::MatrixXd entries;

  bool is_psd(double tol = 1e-9) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (entries + entries.transpose()),
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().size() == 0 || es.eigenvalues().minCoeff() >= -tol;
  }
};

/// Pullback metric g_ij = G_{j(m)}(d_i j, d_j j): one support check, one
/// eigendecomposition of the point density, one lift per coordinate.
inline MetricMatrix metric_tensor(const ParametricModel& model, const Eigen::VectorXd& m,
                                  double regularity_tol = kStructuralTol) {
  Functional omega = model.point(m);
  if (!is_nplf(omega)) throw RegularityError("model point is not positive");

  const int k = model.param_dim();
  std::vector<Functional> tangents;
  tangents.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i)
    tangents.push_back(model.tangent(m, Eigen::VectorXd::Unit(k, i)));

  SupportDecomposition dec = support_projection(omega);
  for (int i = 0; i < k; ++i) {
    const double scale = max_abs(tangents[static_cast<size_t>(i)].density());
    if (scale == 0.0) continue;
    if (max_abs(dec.q * tangents[static_cast<size_t>(i)].density() * dec.q) >
        regularity_tol * scale)
      throw RegularityError("coordinate tangent charges the kernel at this point");
  }

  JordanLifter lifter(omega);
  std::vector<AlgebraElement> lifts;
  lifts.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i)
    lifts.push_back(lifter.lift(tangents[static_cast<size_t>(i)]).element);

  Eigen::MatrixXd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const Complex v = tangents[static_cast<size_t>(j)](lifts[static_cast<size_t>(i)]);
      g(i, j) = v.real();
    }
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw NumericError("metric came out asymmetric");
  return MetricMatrix{m, 0.5 * (g + g.transpose())};
}

// ---------------------------------------------------------------------------
// Classical diagonal families.

/// Weight map of a classical model together with its analytic Jacobian.
/// Kept as a plain struct so closed-form cross-checks can consume the weights
/// with real arithmetic only.
struct ClassicalFamily {
  int outcomes = 0;
  int param_dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> weights;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> weight_jacobian;  // outcomes x k
};

/// w(m) = m on k outcomes.  The declared smooth domain is padded beyond the
/// positivity region; positivity is checked pointwise at evaluation so a
/// boundary-touching grid fails as a regularity error, not a config error.
inline ClassicalFamily simplex_family(int outcomes) {
  if (outcomes < 1) throw ElementError("simplex family needs at least one outcome");
  ClassicalFamily fam;
  fam.outcomes = outcomes;
  fam.param_dim = outcomes;
  fam.weights = [](const Eigen::VectorXd& m) { return m; };
  fam.weight_jacobian = [outcomes](const Eigen::VectorXd&) {
    return Eigen::MatrixXd::Identity(outcomes, outcomes);
  };
  return fam;
}

/// w_x(m) = exp((F m)_x) for a fixed outcomes x k statistic matrix F.
inline ClassicalFamily exponential_family(const Eigen::MatrixXd& stats) {
  if (stats.rows() < 1 || stats.cols() < 1) throw ElementError("empty statistic matrix");
  ClassicalFamily fam;
  fam.outcomes = static_cast<int>(stats.rows());
  fam.param_dim = static_cast<int>(stats.cols());
  fam.weights = [stats](const Eigen::VectorXd& m) {
    return (stats * m).array().exp().matrix().eval();
  };
  fam.weight_jacobian = [stats](const Eigen::VectorXd& m) {
    const Eigen::VectorXd w = (stats * m).array().exp();
    return Eigen::MatrixXd(w.asDiagonal() * stats);
  };
  return fam;
}

inline ParametricModel make_classical_model(const ClassicalFamily& fam, Box domain,
                                            TangentMode mode = TangentMode::Analytic,
                                            FdOptions fd = {}) {
  if (!fam.weights) throw ElementError("classical family needs a weight map");
  if (domain.dim() != fam.param_dim) throw ShapeError("domain dimension mismatch");
  AlgebraShape shape = AlgebraShape::abelian(fam.outcomes);
  auto weights = fam.weights;
  ParametricModel::PointMap point = [weights](const Eigen::VectorXd& m) {
    return Functional::from_abelian_weights(weights(m));
  };
  ParametricModel::TangentMap tangent = nullptr;
  if (fam.weight_jacobian) {
    auto jac = fam.weight_jacobian;
    tangent = [jac](const Eigen::VectorXd& m, const Eigen::VectorXd& dir) {
      return Functional::from_abelian_weights(jac(m) * dir);
    };
  }
  return ParametricModel(std::move(shape), std::move(domain), std::move(point),
                         std::move(tangent), mode, fd);
}

// ---------------------------------------------------------------------------
// Bloch ball.

/// j(r) = (1 + r . sigma)/2 on M_2.  Declared on the open unit cube; points
/// with |r| >= 1 fail positivity at evaluation.
inline ParametricModel make_bloch_model(TangentMode mode = TangentMode::Analytic) {
  ParametricModel::PointMap point = [](const Eigen::VectorXd& r) {
    Matrix d = 0.5 * (Matrix::Identity(2, 2) + r(0) * pauli_x() + r(1) * pauli_y() +
                      r(2) * pauli_z());
    return Functional(AlgebraElement::single_block(std::move(d)));
  };
  ParametricModel::TangentMap tangent = [](const Eigen::VectorXd&, const Eigen::VectorXd& dir) {
    Matrix d = 0.5 * (dir(0) * pauli_x() + dir(1) * pauli_y() + dir(2) * pauli_z());
    return Functional(AlgebraElement::single_block(std::move(d)));
  };
  return ParametricModel(AlgebraShape::full_matrix(2), Box::cube(3, -1.0, 1.0), std::move(point),
                         std::move(tangent), mode);
}

// ---------------------------------------------------------------------------
// Rank-one unitary orbits.

/// Orbit m |-> |U(m) phi><U(m) phi| with U(m) = exp(i sum_j m_j H_j) in
/// exponential coordinates around the identity.  The derivative of the
/// exponential is evaluated through the divided-difference (Daleckii-Krein)
/// formula in the eigenbasis of the Hermitian generator combination.
class RankOneFamily {
 public:
  RankOneFamily(Eigen::VectorXcd phi, std::vector<Matrix> generators)
      : phi_(std::move(phi)), gens_(std::move(generators)) {
    if (phi_.size() == 0 || phi_.norm() == 0.0) throw ElementError("orbit vector must be nonzero");
    if (gens_.empty()) throw ElementError("orbit needs at least one generator");
    for (const Matrix& h : gens_) {
      if (h.rows() != phi_.size() || h.cols() != phi_.size())
        throw ShapeError("generator size does not match the orbit vector");
      if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol * std::max(1.0, h.cwiseAbs().maxCoeff()))
        throw ElementError("generators must be Hermitian");
    }
  }

  int hilbert_dim() const { return static_cast<int>(phi_.size()); }
  int param_dim() const { return static_cast<int>(gens_.size()); }
  const Eigen::VectorXcd& phi() const { return phi_; }
  double c_phi() const { return phi_.squaredNorm(); }

  Matrix unitary(const Eigen::VectorXd& m) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(combination(m));
    const Eigen::VectorXd& lam = es.eigenvalues();
    Eigen::VectorXcd phase(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i)
      phase(i) = std::exp(Complex(0.0, lam(i)));
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  }

  Eigen::VectorXcd point_vector(const Eigen::VectorXd& m) const { return unitary(m) * phi_; }

  /// d/ds U(m + s e_j) phi at s = 0.
  Eigen::VectorXcd coordinate_tangent_vector(const Eigen::VectorXd& m, int j) const {
    return unitary_derivative(m, gens_[static_cast<size_t>(j)]) * phi_;
  }

  /// Left-invariant frame: d/ds U(m) exp(i s H_j) phi at s = 0.
  Eigen::VectorXcd left_invariant_tangent_vector(const Eigen::VectorXd& m, int j) const {
    return unitary(m) * (Complex(0.0, 1.0) * (gens_[static_cast<size_t>(j)] * phi_));
  }

  Functional point_functional(const Eigen::VectorXd& m) const {
    const Eigen::VectorXcd v = point_vector(m);
    return Functional(AlgebraElement::single_block(v * v.adjoint()));
  }

  /// Tangent density |v><p| + |p><v| at the point vector p.
  static Functional tangent_functional(const Eigen::VectorXcd& point_vec,
                                       const Eigen::VectorXcd& v) {
    Matrix d = v * point_vec.adjoint() + point_vec * v.adjoint();
    return Functional(AlgebraElement::single_block(std::move(d)));
  }

  ParametricModel as_model(Box domain, TangentMode mode = TangentMode::Analytic) const {
    if (domain.dim() != param_dim()) throw ShapeError("domain dimension mismatch");
    RankOneFamily fam = *this;
    ParametricModel::PointMap point = [fam](const Eigen::VectorXd& m) {
      return fam.point_functional(m);
    };
    ParametricModel::TangentMap tangent = [fam](const Eigen::VectorXd& m,
                                                const Eigen::VectorXd& dir) {
      const Eigen::VectorXcd p = fam.point_vector(m);
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(p.size());
      for (int j = 0; j < fam.param_dim(); ++j)
        if (dir(j) != 0.0) v += dir(j) * fam.coordinate_tangent_vector(m, j);
      return tangent_functional(p, v);
    };
    return ParametricModel(AlgebraShape::full_matrix(hilbert_dim()), std::move(domain),
                           std::move(point), std::move(tangent), mode);
  }

  ParametricModel as_model(TangentMode mode = TangentMode::Analytic) const {
    return as_model(Box::cube(param_dim(), -4.0, 4.0), mode);
  }

 private:
  Matrix combination(const Eigen::VectorXd& m) const {
    if (m.size() != param_dim()) throw ShapeError("parameter dimension mismatch");
    Matrix s = Matrix::Zero(phi_.size(), phi_.size());
    for (int j = 0; j < param_dim(); ++j) s += m(j) * gens_[static_cast<size_t>(j)];
    return s;
  }

  /// Frechet derivative of exp(iS) in direction H: in the eigenbasis of S the
  /// entries pick up the divided difference of x |-> e^{ix}, written in the
  /// cancellation-free half-angle form.
  Matrix unitary_derivative(const Eigen::VectorXd& m, const Matrix& h) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(combination(m));
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Matrix& v = es.eigenvectors();
    Matrix e = v.adjoint() * (Complex(0.0, 1.0) * h) * v;
    for (Eigen::Index r = 0; r < lam.size(); ++r)
      for (Eigen::Index c = 0; c < lam.size(); ++c) {
        const double half = 0.5 * (lam(r) - lam(c));
        const double sinc = (half == 0.0) ? 1.0 : std::sin(half) / half;
        e(r, c) *= std::exp(Complex(0.0, 0.5 * (lam(r) + lam(c)))) * sinc;
      }
    return v * e * v.adjoint();
  }

  Eigen::VectorXcd phi_;
  std::vector<Matrix> gens_;
};

inline ParametricModel make_rank_one_unitary_model(Eigen::VectorXcd phi,
                                                   std::vector<Matrix> generators,
                                                   TangentMode mode = TangentMode::Analytic) {
  return RankOneFamily(std::move(phi), std::move(generators)).as_model(mode);
}

}  // namespace jig
