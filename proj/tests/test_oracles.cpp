#include <catch2/catch_amalgamated.hpp>

#include "jig/metric.hpp"
#include "jig/oracles.hpp"
#include "jig/random.hpp"

using namespace jig;

namespace {

Functional qubit_diag(double a, double b) {
  Matrix d(2, 2);
  d << a, 0, 0, b;
  return Functional(AlgebraElement::single_block(d));
}

Functional single(const Matrix& m) { return Functional(AlgebraElement::single_block(m)); }

ClassicalFamily bernoulli_family() {
  ClassicalFamily fam;
  fam.outcomes = 2;
  fam.param_dim = 1;
  fam.weights = [](const Eigen::VectorXd& m) {
    Eigen::VectorXd w(2);
    w << m(0), 1.0 - m(0);
    return w;
  };
  fam.weight_jacobian = [](const Eigen::VectorXd&) {
    Eigen::MatrixXd j(2, 1);
    j << 1.0, -1.0;
    return j;
  };
  return fam;
}

}  // namespace

TEST_CASE("dense-solve lift oracle") {
  SECTION("tracial base") {
    AlgebraElement a = lift_oracle(qubit_diag(0.5, 0.5), single(0.5 * pauli_z()));
    REQUIRE(max_abs(a - AlgebraElement::single_block(pauli_z())) <= 1e-12);
  }
  SECTION("skewed diagonal base") {
    AlgebraElement a = lift_oracle(qubit_diag(2.0 / 3.0, 1.0 / 3.0), single(pauli_x() / 3.0));
    REQUIRE(max_abs(a - AlgebraElement::single_block((2.0 / 3.0) * pauli_x())) <= 1e-12);
  }
  SECTION("singular systems are refused") {
    REQUIRE_THROWS_AS(lift_oracle(qubit_diag(1.0, 0.0), single(pauli_x())), FaithfulnessError);
  }
  SECTION("agrees with the eigenbasis route on faithful bases") {
    Rng rng(101);
    for (const AlgebraShape& s : {AlgebraShape({2}), AlgebraShape({4}), AlgebraShape({2, 3})}) {
      for (int t = 0; t < 15; ++t) {
        Functional omega = random_faithful_nplf(rng, s);
        Functional eta(random_self_adjoint_element(rng, s));
        AlgebraElement direct = lift_oracle(omega, eta);
        AlgebraElement eig = jordan_lift(omega, eta).element;
        REQUIRE(operator_norm(direct - eig) <= 1e-9 * std::max(1.0, operator_norm(eig)));
      }
    }
  }
}

TEST_CASE("dense-solve metric oracle") {
  SECTION("orthonormal directions at the tracial qubit") {
    std::vector<Functional> tangents = {single(0.5 * pauli_z()), single(0.5 * pauli_x())};
    Eigen::MatrixXd g = lift_oracle_metric(qubit_diag(0.5, 0.5), tangents);
    REQUIRE((g - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SECTION("matches the pairing route") {
    Rng rng(103);
    AlgebraShape s({3});
    Functional omega = random_faithful_nplf(rng, s);
    std::vector<Functional> tangents;
    std::vector<TangentFunctional> wrapped;
    for (int i = 0; i < 3; ++i) {
      TangentFunctional t = eta_from_element(omega, random_self_adjoint_element(rng, s));
      tangents.push_back(t.value());
      wrapped.push_back(t);
    }
    Eigen::MatrixXd g = lift_oracle_metric(omega, tangents);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        REQUIRE(g(i, j) ==
                Catch::Approx(inner_product(omega, wrapped[size_t(i)], wrapped[size_t(j)]))
                    .margin(1e-9));
  }
}

TEST_CASE("classical information-matrix oracle") {
  SECTION("flat point of the simplex") {
    Eigen::VectorXd m = Eigen::VectorXd::Ones(3);
    MetricMatrix g = fisher_rao_oracle(simplex_family(3), m);
    REQUIRE((g.entries - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SECTION("reciprocal weights on the diagonal") {
    Eigen::VectorXd m(3);
    m << 4.0, 1.0, 1.0;
    MetricMatrix g = fisher_rao_oracle(simplex_family(3), m);
    Eigen::MatrixXd expect = Eigen::VectorXd(m.cwiseInverse()).asDiagonal();
    REQUIRE((g.entries - expect).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SECTION("bernoulli scalar value") {
    Eigen::VectorXd theta(1);
    theta << 0.3;
    MetricMatrix g = fisher_rao_oracle(bernoulli_family(), theta);
    REQUIRE(g.entries(0, 0) == Catch::Approx(1.0 / 0.3 + 1.0 / 0.7).epsilon(1e-14));
  }
  SECTION("exponential family jacobian is consistent with its weights") {
    Eigen::MatrixXd stats(4, 2);
    stats << 1, 0, 0, 1, 1, 1, -1, 0.5;
    ClassicalFamily fam = exponential_family(stats);
    Eigen::VectorXd m(2);
    m << 0.3, -0.2;
    const double h = 1e-6;
    Eigen::MatrixXd jac = fam.weight_jacobian(m);
    for (int j = 0; j < 2; ++j) {
      Eigen::VectorXd fd =
          (fam.weights(m + h * Eigen::VectorXd::Unit(2, j)) -
           fam.weights(m - h * Eigen::VectorXd::Unit(2, j))) /
          (2.0 * h);
      REQUIRE((fd - jac.col(j)).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
  SECTION("vanishing weights are a domain error") {
    Eigen::VectorXd m(3);
    m << 0.0, 1.0, 1.0;
    REQUIRE_THROWS_AS(fisher_rao_oracle(simplex_family(3), m), DomainError);
  }
  SECTION("families without analytic derivatives are refused") {
    ClassicalFamily fam = simplex_family(2);
    fam.weight_jacobian = nullptr;
    REQUIRE_THROWS_AS(fisher_rao_oracle(fam, Eigen::VectorXd::Ones(2)), ElementError);
  }
}

TEST_CASE("kernel-probe absolute continuity oracle") {
  Functional pure = qubit_diag(1.0, 0.0);
  SECTION("off-diagonal directions pass") {
    REQUIRE(ac_enumeration_oracle(single(pauli_x()), pure, 32));
  }
  SECTION("kernel-supported directions fail") {
    Matrix qq(2, 2);
    qq << 0, 0, 0, 1;
    REQUIRE_FALSE(ac_enumeration_oracle(single(qq), pure, 32));
  }
  SECTION("faithful bases accept everything") {
    Rng rng(107);
    for (int t = 0; t < 10; ++t) {
      Functional omega = random_faithful_nplf(rng, AlgebraShape({3}));
      REQUIRE(ac_enumeration_oracle(Functional(random_self_adjoint_element(rng, AlgebraShape({3}))),
                                    omega, 16));
    }
  }
  SECTION("agrees with the support-corner route") {
    Rng rng(109);
    AlgebraShape s({3, 2});
    for (int t = 0; t < 40; ++t) {
      Functional omega = random_nplf(rng, s, {rng.uniform_int(0, 3), rng.uniform_int(0, 2)});
      Functional xi(random_self_adjoint_element(rng, s));
      if (t % 2 == 0) xi = eta_from_element(omega, random_self_adjoint_element(rng, s)).value();
      REQUIRE(ac_enumeration_oracle(xi, omega, 24) == is_absolutely_continuous(xi, omega));
    }
  }
}

TEST_CASE("rank-one closed form") {
  const Eigen::Index d = 3;
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Unit(d, 0);
  Eigen::VectorXcd e2 = Eigen::VectorXcd::Unit(d, 1);

  SECTION("global phase direction has zero length") {
    std::vector<Eigen::VectorXcd> tang = {Complex(0.0, 1.0) * e1};
    REQUIRE(rank_one_metric_closed_form(e1, tang)(0, 0) == Catch::Approx(0.0).margin(1e-14));
  }
  SECTION("orthogonal unit direction has squared length four") {
    std::vector<Eigen::VectorXcd> tang = {e2};
    REQUIRE(rank_one_metric_closed_form(e1, tang)(0, 0) == Catch::Approx(4.0));
  }
  SECTION("value is invariant under rescaling the base vector") {
    std::vector<Eigen::VectorXcd> tang = {e2};
    REQUIRE(rank_one_metric_closed_form(2.0 * e1, tang)(0, 0) == Catch::Approx(4.0));
  }
  SECTION("matches the lift route for non-unit base vectors") {
    Rng rng(113);
    for (int t = 0; t < 20; ++t) {
      const int n = rng.uniform_int(2, 6);
      Eigen::VectorXcd phi = random_unit_vector(rng, n) * rng.uniform(0.4, 2.0);
      std::vector<Eigen::VectorXcd> tangents;
      std::vector<Functional> etas;
      for (int j = 0; j < 2; ++j) {
        Eigen::VectorXcd v = Complex(0.0, 1.0) * (random_hermitian(rng, n) * phi);
        tangents.push_back(v);
        etas.push_back(RankOneFamily::tangent_functional(phi, v));
      }
      Functional omega(AlgebraElement::single_block(phi * phi.adjoint()));
      JordanLifter lifter(omega);
      Eigen::MatrixXd g(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          g(i, j) = lifter.inner(etas[size_t(i)], etas[size_t(j)]);
      Eigen::MatrixXd ref = rank_one_metric_closed_form(phi, tangents);
      REQUIRE((g - ref).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
    }
  }
  SECTION("directions violating the orbit constraint are flagged") {
    std::vector<Eigen::VectorXcd> tang = {e1, (1.0 + Complex(0.0, 1.0)) * e1};
    REQUIRE_THROWS_AS(rank_one_metric_closed_form(e1, tang), NumericError);
  }
  SECTION("zero base vector is refused") {
    std::vector<Eigen::VectorXcd> tang = {e2};
    REQUIRE_THROWS_AS(rank_one_metric_closed_form(Eigen::VectorXcd::Zero(d), tang), ElementError);
  }
}

TEST_CASE("projective gram form") {
  Eigen::VectorXcd phi = Eigen::VectorXcd::Unit(3, 0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Unit(3, 1);
  Eigen::VectorXcd w = 0.5 * Eigen::VectorXcd::Unit(3, 1) + 2.0 * Eigen::VectorXcd::Unit(3, 2);
  Eigen::MatrixXd g = fubini_study_gram(phi, {v, w});
  REQUIRE(g(0, 0) == Catch::Approx(1.0));
  REQUIRE(g(0, 1) == Catch::Approx(0.5));
  REQUIRE(g(1, 1) == Catch::Approx(4.25));

  REQUIRE_THROWS_AS(fubini_study_gram(2.0 * phi, {v}), ElementError);
  REQUIRE_THROWS_AS(fubini_study_gram(phi, {v + 0.3 * phi}), ElementError);
}

TEST_CASE("oracle reports track the worst case") {
  OracleReport r = OracleReport::from("sample", 1e-3, 10, 1e-2);
  REQUIRE(r.pass);
  r.absorb(2e-2, "bad trial");
  REQUIRE_FALSE(r.pass);
  REQUIRE(r.sample_count == 11);
  REQUIRE(r.worst_case == "bad trial");
  REQUIRE(format_report_line(r).find("FAIL") != std::string::npos);
  REQUIRE(format_report_line(r).find("bad trial") != std::string::npos);
  r.absorb(1e-5, "fine trial");
  REQUIRE(r.worst_case == "bad trial");

  OracleReport ok = OracleReport::from("sample", 1e-12, 5, 1e-10);
  REQUIRE(format_report_line(ok).find("PASS") != std::string::npos);
}
