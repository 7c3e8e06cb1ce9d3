// Seeded verification suites.  Each suite stresses one invariant or one
// implementation-versus-oracle comparison over randomized inputs and returns
// an OracleReport with the worst error seen.  The CLI verify and
// oracle-compare verbs and the acceptance runner are all thin wrappers over
// these functions, so every report is reproducible from (suite, seed).
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jig/algebra.hpp"
#include "jig/channels.hpp"
#include "jig/core.hpp"
#include "jig/functional.hpp"
#include "jig/metric.hpp"
#include "jig/models.hpp"
#include "jig/oracles.hpp"
#include "jig/random.hpp"

namespace jig {
namespace detail {

inline const std::vector<AlgebraShape>& suite_shapes() {
  static const std::vector<AlgebraShape> shapes = {
      AlgebraShape({2}), AlgebraShape({3}), AlgebraShape({1, 2}), AlgebraShape({2, 3}),
      AlgebraShape({1, 2, 3})};
  return shapes;
}

inline AlgebraElement unit_norm_self_adjoint(Rng& rng, const AlgebraShape& shape) {
  AlgebraElement a = random_self_adjoint_element(rng, shape);
  const double n = operator_norm(a);
  return n > 0.0 ? a * (1.0 / n) : a;
}

inline std::vector<int> random_ranks(Rng& rng, const AlgebraShape& shape, int min_rank) {
  std::vector<int> ranks;
  ranks.reserve(static_cast<size_t>(shape.block_count()));
  for (int k = 0; k < shape.block_count(); ++k)
    ranks.push_back(rng.uniform_int(min_rank, shape.block_dim(k)));
  return ranks;
}

inline std::string trial_tag(int t, const AlgebraShape& shape) {
  return "trial " + std::to_string(t) + ", shape " + shape.to_string();
}

}  // namespace detail

/// {{a,b},c} - {a,{b,c}} = [[a,c],b] on random self-adjoint triples.
inline OracleReport run_jordan_lie_suite(std::uint64_t seed, int trials, double tol) {
  Rng rng(seed ^ 0xa11ce5ull);
  OracleReport rep = OracleReport::from("jordan-lie", 0.0, 0, tol);
  const auto& shapes = detail::suite_shapes();
  for (int t = 0; t < trials; ++t) {
    const AlgebraShape& shape = shapes[static_cast<size_t>(t) % shapes.size()];
    AlgebraElement a = detail::unit_norm_self_adjoint(rng, shape);
    AlgebraElement b = detail::unit_norm_self_adjoint(rng, shape);
    AlgebraElement c = detail::unit_norm_self_adjoint(rng, shape);
    AlgebraElement lhs = jordan_product(jordan_product(a, b), c) -
                         jordan_product(a, jordan_product(b, c));
    AlgebraElement rhs = lie_product(lie_product(a, c), b);
    rep.absorb(operator_norm(lhs - rhs), detail::trial_tag(t, shape));
  }
  return rep;
}

/// Five-variable triple-product identity
/// {a,b,{x,y,z}} = {{a,b,x},y,z} - {x,{b,a,y},z} + {x,y,{a,b,z}}
/// plus outer symmetry {a,b,c} = {c,b,a}.
inline OracleReport run_triple_identity_suite(std::uint64_t seed, int trials, double tol) {
  Rng rng(seed ^ 0x731b1eull);
  OracleReport rep = OracleReport::from("triple-identity", 0.0, 0, tol);
  const auto& shapes = detail::suite_shapes();
  for (int t = 0; t < trials; ++t) {
    const AlgebraShape& shape = shapes[static_cast<size_t>(t) % shapes.size()];
    AlgebraElement a = detail::unit_norm_self_adjoint(rng, shape);
    AlgebraElement b = detail::unit_norm_self_adjoint(rng, shape);
    AlgebraElement x = detail::unit_norm_self_adjoint(rng, shape);
    AlgebraElement y = detail::unit_norm_self_adjoint(rng, shape);
    AlgebraElement z = detail::unit_norm_self_adjoint(rng, shape);
    AlgebraElement lhs = jordan_triple(a, b, jordan_triple(x, y, z));
    AlgebraElement rhs = jordan_triple(jordan_triple(a, b, x), y, z) -
                         jordan_triple(x, jordan_triple(b, a, y), z) +
                         jordan_triple(x, y, jordan_triple(a, b, z));
    double err = operator_norm(lhs - rhs);
    err = std::max(err, operator_norm(jordan_triple(a, b, x) - jordan_triple(x, b, a)));
    rep.absorb(err, detail::trial_tag(t, shape));
  }
  return rep;
}

/// T_omega(.,.,.) is invariant under swapping the outer arguments.
inline OracleReport run_triple_symmetry_suite(std::uint64_t seed, int trials, double tol) {
  Rng rng(seed ^ 0x53771ull);
  OracleReport rep = OracleReport::from("triple-symmetry", 0.0, 0, tol);
  const std::vector<AlgebraShape> shapes = {AlgebraShape({2}), AlgebraShape({3}),
                                            AlgebraShape({1, 2})};
  for (int t = 0; t < trials; ++t) {
    const AlgebraShape& shape = shapes[static_cast<size_t>(t) % shapes.size()];
    Functional omega = random_faithful_nplf(rng, shape);
    TangentFunctional ta = eta_from_element(omega, detail::unit_norm_self_adjoint(rng, shape));
    TangentFunctional tb = eta_from_element(omega, detail::unit_norm_self_adjoint(rng, shape));
    TangentFunctional tc = eta_from_element(omega, detail::unit_norm_self_adjoint(rng, shape));
    const double fwd = triple_tensor(omega, ta, tb, tc);
    const double rev = triple_tensor(omega, tc, tb, ta);
    rep.absorb(std::abs(fwd - rev), detail::trial_tag(t, shape));
  }
  return rep;
}

/// lift(eta(a)) recovers a minus its kernel corner, at full and deficient rank.
inline OracleReport run_round_trip_suite(std::uint64_t seed, int trials, double tol) {
  Rng rng(seed ^ 0x707ull);
  OracleReport rep = OracleReport::from("round-trip", 0.0, 0, tol);
  const auto& shapes = detail::suite_shapes();
  for (int t = 0; t < trials; ++t) {
    const AlgebraShape& shape = shapes[static_cast<size_t>(t) % shapes.size()];
    Functional omega = random_nplf(rng, shape, detail::random_ranks(rng, shape, 0));
    AlgebraElement a = detail::unit_norm_self_adjoint(rng, shape);
    TangentFunctional eta = eta_from_element(omega, a);
    AlgebraElement lifted = jordan_lift(omega, eta).element;
    SupportDecomposition dec = support_projection(omega);
    AlgebraElement expected = a - dec.q * a * dec.q;
    rep.absorb(operator_norm(lifted - expected), detail::trial_tag(t, shape));
  }
  return rep;
}

/// is_absolutely_continuous versus the projection-enumeration oracle.
/// max_abs_error counts disagreements, so the tolerance is zero.
inline OracleReport run_ac_agreement_suite(std::uint64_t seed, int instances) {
  Rng rng(seed ^ 0xacacull);
  OracleReport rep = OracleReport::from("ac-agreement", 0.0, 0, 0.0);
  const auto& shapes = detail::suite_shapes();
  for (int t = 0; t < instances; ++t) {
    const AlgebraShape& shape = shapes[static_cast<size_t>(t) % shapes.size()];
    Functional omega = random_nplf(rng, shape, detail::random_ranks(rng, shape, 0));
    Functional xi = Functional::zero(shape);
    const int kind = t % 3;
    if (kind == 0) {
      xi = eta_from_element(omega, random_self_adjoint_element(rng, shape)).value();
    } else if (kind == 1) {
      SupportDecomposition dec = support_projection(omega);
      AlgebraElement noise = random_self_adjoint_element(rng, shape);
      xi = eta_from_element(omega, noise).value() + Functional(dec.q * noise * dec.q);
    } else {
      xi = Functional(random_self_adjoint_element(rng, shape));
    }
    const bool direct = is_absolutely_continuous(xi, omega);
    const bool probed = ac_enumeration_oracle(xi, omega, 48, kStructuralTol,
                                              seed + static_cast<std::uint64_t>(t));
    rep.absorb(direct == probed ? 0.0 : 1.0,
               detail::trial_tag(t, shape) + (direct ? ", direct=AC" : ", direct=notAC"));
  }
  return rep;
}

/// Eigenbasis lift versus the dense-solve oracle at faithful bases.
inline OracleReport run_lift_agreement_suite(std::uint64_t seed, int trials, double tol) {
  Rng rng(seed ^ 0x11f7ull);
  OracleReport rep = OracleReport::from("lift-agreement", 0.0, 0, tol);
  const std::vector<AlgebraShape> shapes = {AlgebraShape({2}), AlgebraShape({3}),
                                            AlgebraShape({4}), AlgebraShape({2, 3})};
  for (int t = 0; t < trials; ++t) {
    const AlgebraShape& shape = shapes[static_cast<size_t>(t) % shapes.size()];
    Functional omega = random_faithful_nplf(rng, shape);
    TangentFunctional eta = eta_from_element(omega, detail::unit_norm_self_adjoint(rng, shape));
    AlgebraElement direct = jordan_lift(omega, eta).element;
    AlgebraElement solved = lift_oracle(omega, eta.value());
    rep.absorb(operator_norm(direct - solved), detail::trial_tag(t, shape));
  }
  return rep;
}

/// G is preserved by blockwise unitary conjugation, at mixed support ranks.
inline OracleReport run_unitary_invariance_suite(std::uint64_t seed, int trials, double tol) {
  Rng rng(seed ^ 0x0114ull);
  OracleReport rep = OracleReport::from("unitary-invariance", 0.0, 0, tol);
  const auto& shapes = detail::suite_shapes();
  for (int t = 0; t < trials; ++t) {
    const AlgebraShape& shape = shapes[static_cast<size_t>(t) % shapes.size()];
    Functional omega = random_nplf(rng, shape, detail::random_ranks(rng, shape, 1));
    omega = omega * (1.0 / omega.trace());
    TangentFunctional eta = eta_from_element(omega, detail::unit_norm_self_adjoint(rng, shape));
    std::vector<Matrix> us;
    us.reserve(static_cast<size_t>(shape.block_count()));
    for (int k = 0; k < shape.block_count(); ++k) us.push_back(random_unitary(rng, shape.block_dim(k)));
    KrausMap phi = KrausMap::blockwise_unitary(shape, us);
    Functional rho = phi.dual_apply(omega);
    Functional pushed = phi.dual_apply(eta.value());
    const double before = JordanLifter(omega).inner(eta.value(), eta.value());
    const double after = JordanLifter(rho).inner(pushed, pushed, 1e-7);
    rep.absorb(std::abs(before - after), detail::trial_tag(t, shape));
  }
  return rep;
}

/// G_{Phi* omega}(Phi* eta, Phi* eta) <= G_omega(eta, eta) for random unital
/// maps; the error recorded is the positive part of lhs - rhs.
inline OracleReport run_monotonicity_suite(std::uint64_t seed, int trials, double tol,
                                           const KrausMap* fixed_channel = nullptr) {
  Rng rng(seed ^ 0x304001ull);
  OracleReport rep = OracleReport::from("monotonicity", 0.0, 0, tol);
  for (int t = 0; t < trials; ++t) {
    std::optional<KrausMap> storage;
    const KrausMap* channel = fixed_channel;
    if (channel == nullptr) {
      const int cod = rng.uniform_int(2, 6);
      const int dom = rng.uniform_int(2, 6);
      int env = rng.uniform_int(1, 3);
      while (dom * env < cod) ++env;
      storage.emplace(KrausMap::random_unital(rng, dom, cod, env));
      channel = &*storage;
    }
    const AlgebraShape& cod_shape = channel->codomain_shape();
    std::vector<int> ranks;
    for (int k = 0; k < cod_shape.block_count(); ++k)
      ranks.push_back(rng.uniform_int(1, cod_shape.block_dim(k)));
    Functional omega = random_nplf(rng, cod_shape, ranks);
    omega = omega * (1.0 / omega.trace());
    TangentFunctional eta =
        eta_from_element(omega, detail::unit_norm_self_adjoint(rng, cod_shape));
    MonotonicityCheck chk = check_monotonicity(*channel, omega, eta, tol);
    rep.absorb(std::max(0.0, chk.lhs - chk.rhs), detail::trial_tag(t, cod_shape));
  }
  return rep;
}

/// Phi(a)^2 <= Phi(a^2): most negative eigenvalue of the gap.
inline OracleReport run_kadison_schwarz_suite(std::uint64_t seed, int trials, double tol) {
  Rng rng(seed ^ 0x6ad50ull);
  OracleReport rep = OracleReport::from("kadison-schwarz", 0.0, 0, tol);
  for (int t = 0; t < trials; ++t) {
    const int dom = rng.uniform_int(2, 5);
    const int cod = rng.uniform_int(2, 5);
    int env = rng.uniform_int(1, 3);
    while (dom * env < cod) ++env;
    KrausMap phi = KrausMap::random_unital(rng, dom, cod, env);
    AlgebraElement a = detail::unit_norm_self_adjoint(rng, phi.domain_shape());
    const double min_ev = kadison_schwarz_gap(phi, a);
    rep.absorb(std::max(0.0, -min_ev), "trial " + std::to_string(t));
  }
  return rep;
}

/// Classical models: pullback metric versus the closed-form information
/// matrix over a 10x10x10 grid, 3-outcome simplex and 5-outcome exponential
/// weights.
inline OracleReport run_fisher_rao_suite(std::uint64_t seed, TangentMode mode, double tol) {
  Rng rng(seed ^ 0xf15ull);
  const char* name = mode == TangentMode::Analytic ? "fisher-rao-analytic" : "fisher-rao-fd";
  OracleReport rep = OracleReport::from(name, 0.0, 0, tol);

  Eigen::MatrixXd stats(5, 3);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) stats(i, j) = rng.uniform(-1.0, 1.0);

  struct Case {
    ClassicalFamily fam;
    ParametricModel model;
    double lo, hi;
    const char* tag;
  };
  std::vector<Case> cases;
  cases.push_back({simplex_family(3),
                   make_classical_model(simplex_family(3), Box::cube(3, -1.0, 2.0), mode), 0.2,
                   1.6, "simplex-3"});
  cases.push_back({exponential_family(stats),
                   make_classical_model(exponential_family(stats), Box::cube(3, -6.0, 6.0), mode),
                   -0.8, 0.8, "exponential-5"});

  const int steps = 10;
  for (const Case& c : cases) {
    for (int i = 0; i < steps; ++i)
      for (int j = 0; j < steps; ++j)
        for (int k = 0; k < steps; ++k) {
          Eigen::VectorXd m(3);
          m << c.lo + (c.hi - c.lo) * i / (steps - 1.0), c.lo + (c.hi - c.lo) * j / (steps - 1.0),
              c.lo + (c.hi - c.lo) * k / (steps - 1.0);
          const MetricMatrix g = metric_tensor(c.model, m);
          const MetricMatrix ref = fisher_rao_oracle(c.fam, m);
          rep.absorb((g.entries - ref.entries).cwiseAbs().maxCoeff(),
                     std::string(c.tag) + " at grid (" + std::to_string(i) + "," +
                         std::to_string(j) + "," + std::to_string(k) + ")");
        }
  }
  return rep;
}

/// Bloch ball: pullback metric versus the dense-solve oracle metric at random
/// interior points, plus the identity value at the origin.
inline OracleReport run_bures_helstrom_suite(std::uint64_t seed, int points, double tol) {
  Rng rng(seed ^ 0xb10cull);
  OracleReport rep = OracleReport::from("bures-helstrom", 0.0, 0, tol);
  ParametricModel bloch = make_bloch_model();

  const MetricMatrix at_origin = metric_tensor(bloch, Eigen::VectorXd::Zero(3));
  rep.absorb((at_origin.entries - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(),
             "origin");

  std::vector<Functional> sigma_tangents;
  for (const Matrix& s : {pauli_x(), pauli_y(), pauli_z()})
    sigma_tangents.push_back(Functional(AlgebraElement::single_block(0.5 * s)));

  for (int t = 0; t < points; ++t) {
    Eigen::VectorXd r(3);
    r << rng.normal(), rng.normal(), rng.normal();
    if (r.norm() == 0.0) continue;
    r *= 0.95 * std::cbrt(rng.uniform()) / r.norm();
    const MetricMatrix g = metric_tensor(bloch, r);
    const Eigen::MatrixXd ref = lift_oracle_metric(bloch.point(r), sigma_tangents);
    rep.absorb((g.entries - ref).cwiseAbs().maxCoeff(),
               "trial " + std::to_string(t) + ", |r|=" + std::to_string(r.norm()));
  }
  return rep;
}

/// Rank-one orbits at the identity: pullback metric versus the closed form
/// 2 (<x|y> + <y|x>) + (4 / C_phi) <x|phi><y|phi>.  Every third instance uses
/// a unit base vector, the rest exercise the scaling of the form.
inline OracleReport run_rank_one_suite(std::uint64_t seed, int instances, double tol) {
  Rng rng(seed ^ 0x1a40ull);
  OracleReport rep = OracleReport::from("rank-one", 0.0, 0, tol);
  for (int t = 0; t < instances; ++t) {
    const int d = rng.uniform_int(2, 8);
    const int k = rng.uniform_int(1, 3);
    const double scale = (t % 3 == 0) ? 1.0 : rng.uniform(0.6, 1.8);
    Eigen::VectorXcd phi = random_unit_vector(rng, d) * scale;
    std::vector<Matrix> gens;
    gens.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) gens.push_back(random_hermitian(rng, d) / std::sqrt(double(d)));
    RankOneFamily fam(phi, gens);
    const MetricMatrix g = metric_tensor(fam.as_model(), Eigen::VectorXd::Zero(k));
    std::vector<Eigen::VectorXcd> tangents;
    tangents.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j)
      tangents.push_back(fam.coordinate_tangent_vector(Eigen::VectorXd::Zero(k), j));
    const Eigen::MatrixXd ref = rank_one_metric_closed_form(phi, tangents);
    rep.absorb((g.entries - ref).cwiseAbs().maxCoeff(),
               "trial " + std::to_string(t) + ", dim " + std::to_string(d));
  }
  return rep;
}

/// For unit phi and tangents orthogonal to it, the orbit metric is four times
/// the projective Gram form; the factor is measured, not assumed.
inline OracleReport run_fubini_study_suite(std::uint64_t seed, int instances, double tol) {
  Rng rng(seed ^ 0xf5ull);
  OracleReport rep = OracleReport::from("fubini-study", 0.0, 0, tol);
  for (int t = 0; t < instances; ++t) {
    const int d = rng.uniform_int(2, 8);
    const int k = std::min(2, d - 1);
    Eigen::VectorXcd phi = random_unit_vector(rng, d);
    std::vector<Eigen::VectorXcd> tangents;
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXcd v = random_unit_vector(rng, d);
      v -= phi * phi.dot(v);
      if (v.norm() < 1e-6) { --j; continue; }
      tangents.push_back(v * rng.uniform(0.5, 1.5) / v.norm());
    }
    Functional omega(AlgebraElement::single_block(phi * phi.adjoint()));
    JordanLifter lifter(omega);
    Eigen::MatrixXd g(k, k);
    std::vector<Functional> etas;
    for (int j = 0; j < k; ++j)
      etas.push_back(RankOneFamily::tangent_functional(phi, tangents[static_cast<size_t>(j)]));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        g(i, j) = lifter.inner(etas[static_cast<size_t>(i)], etas[static_cast<size_t>(j)]);
    const Eigen::MatrixXd gram = fubini_study_gram(phi, tangents);
    const double denom = (gram.cwiseProduct(gram)).sum();
    const double measured = denom > 0.0 ? (g.cwiseProduct(gram)).sum() / denom : 0.0;
    double err = (g - 4.0 * gram).cwiseAbs().maxCoeff();
    err = std::max(err, std::abs(measured - 4.0));
    rep.absorb(err, "trial " + std::to_string(t) + ", measured factor " + std::to_string(measured));
  }
  return rep;
}

/// Orbit metric entries in the left-invariant frame are constant over the
/// group.
inline OracleReport run_left_invariance_suite(std::uint64_t seed, int instances, double tol) {
  Rng rng(seed ^ 0x1ef7ull);
  OracleReport rep = OracleReport::from("left-invariance", 0.0, 0, tol);
  for (int t = 0; t < instances; ++t) {
    const int d = rng.uniform_int(2, 6);
    const int k = rng.uniform_int(1, 3);
    Eigen::VectorXcd phi = random_unit_vector(rng, d) * rng.uniform(0.6, 1.5);
    std::vector<Matrix> gens;
    for (int j = 0; j < k; ++j) gens.push_back(random_hermitian(rng, d) / std::sqrt(double(d)));
    RankOneFamily fam(phi, gens);

    auto frame_metric = [&](const Eigen::VectorXd& m) {
      const Eigen::VectorXcd p = fam.point_vector(m);
      Functional omega(AlgebraElement::single_block(p * p.adjoint()));
      JordanLifter lifter(omega);
      std::vector<Functional> etas;
      for (int j = 0; j < k; ++j)
        etas.push_back(RankOneFamily::tangent_functional(p, fam.left_invariant_tangent_vector(m, j)));
      Eigen::MatrixXd g(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          g(i, j) = lifter.inner(etas[static_cast<size_t>(i)], etas[static_cast<size_t>(j)]);
      return g;
    };

    const Eigen::MatrixXd at_identity = frame_metric(Eigen::VectorXd::Zero(k));
    for (int s = 0; s < 4; ++s) {
      Eigen::VectorXd m(k);
      for (int j = 0; j < k; ++j) m(j) = rng.uniform(-1.5, 1.5);
      rep.absorb((frame_metric(m) - at_identity).cwiseAbs().maxCoeff(),
                 "trial " + std::to_string(t) + ", sample " + std::to_string(s));
    }
  }
  return rep;
}

/// distribution_dim equals sum n_k^2 - (n_k - r_k)^2 for every shape with up
/// to three blocks of dimension up to four and every rank combination.
/// Errors count integer mismatches, so the tolerance is zero.
inline OracleReport run_structure_dimension_suite(std::uint64_t seed, int max_blocks = 3,
                                                  int max_dim = 4) {
  Rng rng(seed ^ 0xd13ull);
  OracleReport rep = OracleReport::from("structure-dims", 0.0, 0, 0.0);

  std::vector<std::vector<int>> shapes;
  std::vector<int> cur;
  auto expand = [&](auto&& self, int depth) -> void {
    if (depth > 0) shapes.push_back(cur);
    if (depth == max_blocks) return;
    for (int n = 1; n <= max_dim; ++n) {
      cur.push_back(n);
      self(self, depth + 1);
      cur.pop_back();
    }
  };
  expand(expand, 0);

  for (const std::vector<int>& dims : shapes) {
    AlgebraShape shape(dims);
    std::vector<int> ranks(dims.size(), 0);
    auto sweep = [&](auto&& self, size_t idx) -> void {
      if (idx == dims.size()) {
        Functional omega = random_nplf(rng, shape, ranks);
        const int expected = absolutely_continuous_dim(shape, ranks);
        const int computed = distribution_dim(omega);
        SupportDecomposition dec = support_projection(omega);
        const bool ranks_match = dec.block_ranks == ranks;
        rep.absorb((computed == expected && ranks_match) ? 0.0 : 1.0,
                   "shape " + shape.to_string() + ", computed " + std::to_string(computed) +
                       ", expected " + std::to_string(expected));
        return;
      }
      for (int r = 0; r <= dims[idx]; ++r) {
        ranks[idx] = r;
        self(self, idx + 1);
      }
    };
    sweep(sweep, 0);
  }
  return rep;
}

/// Abelian triple tensor equals sum_i w_i a_i b_i c_i, and collapses to the
/// metric when the first slot is the identity direction.
inline OracleReport run_amari_cencov_suite(std::uint64_t seed, int trials, double tol) {
  Rng rng(seed ^ 0xa3cull);
  OracleReport rep = OracleReport::from("amari-cencov", 0.0, 0, tol);
  for (int t = 0; t < trials; ++t) {
    const int n = rng.uniform_int(3, 8);
    Eigen::VectorXd w(n), a(n), b(n), c(n);
    for (int i = 0; i < n; ++i) {
      w(i) = rng.uniform(0.1, 2.0);
      a(i) = rng.uniform(-1.0, 1.0);
      b(i) = rng.uniform(-1.0, 1.0);
      c(i) = rng.uniform(-1.0, 1.0);
    }
    Functional omega = Functional::from_abelian_weights(w);
    TangentFunctional ta = eta_from_element(omega, AlgebraElement::abelian_diagonal(a));
    TangentFunctional tb = eta_from_element(omega, AlgebraElement::abelian_diagonal(b));
    TangentFunctional tc = eta_from_element(omega, AlgebraElement::abelian_diagonal(c));
    const double direct = (w.array() * a.array() * b.array() * c.array()).sum();
    double err = std::abs(triple_tensor(omega, ta, tb, tc) - direct);

    TangentFunctional ti =
        eta_from_element(omega, AlgebraElement::identity(omega.shape()));
    err = std::max(err, std::abs(triple_tensor(omega, ti, tb, tc) -
                                 inner_product(omega, tb, tc)));
    rep.absorb(err, "trial " + std::to_string(t) + ", " + std::to_string(n) + " outcomes");
  }
  return rep;
}

}  // namespace jig
