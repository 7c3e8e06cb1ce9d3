#include <catch2/catch_amalgamated.hpp>

#include "jig/metric.hpp"
#include "jig/random.hpp"

using namespace jig;

namespace {

Functional qubit_diag(double a, double b) {
  Matrix d(2, 2);
  d << a, 0, 0, b;
  return Functional(AlgebraElement::single_block(d));
}

Functional single(const Matrix& m) { return Functional(AlgebraElement::single_block(m)); }

}  // namespace

TEST_CASE("eta densities are symmetrized products with the base") {
  SECTION("tracial base") {
    TangentFunctional eta = eta_from_element(qubit_diag(0.5, 0.5),
                                             AlgebraElement::single_block(pauli_z()));
    REQUIRE(max_abs(eta.value().density() -
                    AlgebraElement::single_block(0.5 * pauli_z())) <= 1e-14);
  }
  SECTION("pure base against sigma_x") {
    TangentFunctional eta =
        eta_from_element(qubit_diag(1.0, 0.0), AlgebraElement::single_block(pauli_x()));
    REQUIRE(max_abs(eta.value().density() -
                    AlgebraElement::single_block(0.5 * pauli_x())) <= 1e-14);
  }
  SECTION("abelian case is pointwise") {
    Eigen::VectorXd w(3), a(3);
    w << 0.2, 0.3, 0.5;
    a << 1, -2, 4;
    Functional omega = Functional::from_abelian_weights(w);
    TangentFunctional eta = eta_from_element(omega, AlgebraElement::abelian_diagonal(a));
    Eigen::VectorXd expect = (w.array() * a.array()).matrix();
    REQUIRE(max_abs(eta.value().density() - AlgebraElement::abelian_diagonal(expect)) <= 1e-15);
  }
  SECTION("rejects non-self-adjoint directions") {
    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    REQUIRE_THROWS_AS(eta_from_element(qubit_diag(0.5, 0.5), AlgebraElement::single_block(bad)),
                      ElementError);
  }
}

TEST_CASE("tangent functionals enforce their invariants") {
  REQUIRE_THROWS_AS(TangentFunctional(single(pauli_z()), qubit_diag(0.1, 0.1)), PositivityError);
  // value charging the kernel of the base
  Matrix qq(2, 2);
  qq << 0, 0, 0, 1;
  REQUIRE_THROWS_AS(TangentFunctional(qubit_diag(1.0, 0.0), single(qq)),
                    AbsoluteContinuityError);
  REQUIRE_NOTHROW(TangentFunctional(qubit_diag(1.0, 0.0), single(pauli_x())));
}

TEST_CASE("lift solves the anticommutator equation") {
  SECTION("tracial base recovers the direction") {
    LiftedElement a = jordan_lift(qubit_diag(0.5, 0.5), single(0.5 * pauli_z()));
    REQUIRE(max_abs(a.element - AlgebraElement::single_block(pauli_z())) <= 1e-12);
  }
  SECTION("faithful diagonal base, off-diagonal direction") {
    const double l1 = 0.7, l2 = 0.3, eps = 0.11;
    LiftedElement a = jordan_lift(qubit_diag(l1, l2), single(eps * pauli_x()));
    REQUIRE(max_abs(a.element -
                    AlgebraElement::single_block((2.0 * eps / (l1 + l2)) * pauli_x())) <= 1e-12);
  }
  SECTION("pure base doubles the off-diagonal part") {
    LiftedElement a = jordan_lift(qubit_diag(1.0, 0.0), single(pauli_x()));
    REQUIRE(max_abs(a.element - AlgebraElement::single_block(2.0 * pauli_x())) <= 1e-12);
  }
  SECTION("defining equation holds on random faithful bases") {
    Rng rng(3);
    AlgebraShape s({3, 2});
    for (int t = 0; t < 25; ++t) {
      Functional omega = random_faithful_nplf(rng, s);
      Functional eta(random_self_adjoint_element(rng, s));
      AlgebraElement a = jordan_lift(omega, eta).element;
      REQUIRE(is_self_adjoint(a, 1e-10));
      AlgebraElement resid =
          omega.density() * a + a * omega.density() - 2.0 * eta.density();
      REQUIRE(operator_norm(resid) <= 1e-10 * std::max(1.0, operator_norm(eta.density())));
    }
  }
  SECTION("directions charging the kernel are rejected") {
    Matrix qq(2, 2);
    qq << 0, 0, 0, 1;
    REQUIRE_THROWS_AS(jordan_lift(qubit_diag(1.0, 0.0), single(qq)), AbsoluteContinuityError);
  }
  SECTION("base must be positive") {
    REQUIRE_THROWS_AS(jordan_lift(single(pauli_z()), single(pauli_x())), PositivityError);
  }
}

TEST_CASE("round trip recovers the movable component") {
  Rng rng(5);
  for (const AlgebraShape& s : {AlgebraShape({2}), AlgebraShape({3}), AlgebraShape({2, 2})}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<int> ranks;
      for (int k = 0; k < s.block_count(); ++k) ranks.push_back(rng.uniform_int(0, s.block_dim(k)));
      Functional omega = random_nplf(rng, s, ranks);
      AlgebraElement a = random_self_adjoint_element(rng, s);
      AlgebraElement lifted = jordan_lift(omega, eta_from_element(omega, a)).element;
      SupportDecomposition dec = support_projection(omega);
      REQUIRE(operator_norm(lifted - (a - dec.q * a * dec.q)) <= 1e-10);
    }
  }
}

TEST_CASE("inner product values and positivity") {
  SECTION("tracial qubit, z direction") {
    Functional omega = qubit_diag(0.5, 0.5);
    TangentFunctional eta = eta_from_element(omega, AlgebraElement::single_block(pauli_z()));
    REQUIRE(inner_product(omega, eta, eta) == Catch::Approx(1.0));
  }
  SECTION("pairing equals the jordan tensor of the lifts at faithful bases") {
    Rng rng(7);
    AlgebraShape s({2, 2});
    Functional omega = random_faithful_nplf(rng, s);
    AlgebraElement a = random_self_adjoint_element(rng, s);
    AlgebraElement b = random_self_adjoint_element(rng, s);
    TangentFunctional ea = eta_from_element(omega, a);
    TangentFunctional eb = eta_from_element(omega, b);
    REQUIRE(inner_product(omega, ea, eb) == Catch::Approx(jordan_tensor(omega, a, b)).margin(1e-10));
    REQUIRE(inner_product(omega, ea, eb) == Catch::Approx(inner_product(omega, eb, ea)).margin(1e-10));
  }
  SECTION("positive definite on movable directions") {
    Rng rng(11);
    Functional omega = random_nplf(rng, AlgebraShape({3}), {2});
    SupportDecomposition dec = support_projection(omega);
    for (int t = 0; t < 20; ++t) {
      AlgebraElement x = random_self_adjoint_element(rng, AlgebraShape({3}));
      AlgebraElement moved = x - dec.q * x * dec.q;
      if (operator_norm(moved) < 1e-6) continue;
      TangentFunctional eta = eta_from_element(omega, moved);
      REQUIRE(inner_product(omega, eta, eta) > 0.0);
    }
  }
  SECTION("mismatched bases are rejected") {
    Functional omega = qubit_diag(0.5, 0.5);
    Functional other = qubit_diag(0.7, 0.3);
    TangentFunctional eta = eta_from_element(other, AlgebraElement::single_block(pauli_z()));
    REQUIRE_THROWS_AS(inner_product(omega, eta, eta), ElementError);
  }
}

TEST_CASE("jordan tensor values") {
  Functional xi = single(pauli_z());
  AlgebraElement sx = AlgebraElement::single_block(pauli_x());
  REQUIRE(jordan_tensor(xi, sx, sx) == Catch::Approx(0.0).margin(1e-14));

  Rng rng(13);
  AlgebraShape s({3});
  Functional omega = random_nplf(rng, s, {2});
  AlgebraElement a = random_self_adjoint_element(rng, s);
  REQUIRE(jordan_tensor(omega, a, a) >= -1e-12);
  REQUIRE(jordan_tensor(omega, AlgebraElement::identity(s), a) ==
          Catch::Approx(omega(a).real()).margin(1e-12));

  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  REQUIRE_THROWS_AS(jordan_tensor(xi, AlgebraElement::single_block(bad), sx), ElementError);
}

TEST_CASE("distribution dimension counts movable directions") {
  Rng rng(17);
  REQUIRE(distribution_dim(random_faithful_nplf(rng, AlgebraShape({2}))) == 4);

  Eigen::VectorXcd v = random_unit_vector(rng, 2);
  REQUIRE(distribution_dim(single(v * v.adjoint())) == 3);

  Eigen::VectorXd w(3);
  w << 0.4, 0.6, 0.0;
  REQUIRE(distribution_dim(Functional::from_abelian_weights(w)) == 2);

  REQUIRE(distribution_dim(Functional::zero(AlgebraShape({2, 3}))) == 0);

  SECTION("matches the rank formula across random instances") {
    for (int t = 0; t < 20; ++t) {
      AlgebraShape s({rng.uniform_int(1, 3), rng.uniform_int(1, 3)});
      std::vector<int> ranks = {rng.uniform_int(0, s.block_dim(0)),
                                rng.uniform_int(0, s.block_dim(1))};
      Functional omega = random_nplf(rng, s, ranks);
      REQUIRE(distribution_dim(omega) == absolutely_continuous_dim(s, ranks));
    }
  }

  SECTION("defined for merely self-adjoint densities") {
    REQUIRE(distribution_dim(single(pauli_z())) == 2);
  }
}

TEST_CASE("triple tensor") {
  SECTION("abelian value is the weighted triple sum") {
    Eigen::VectorXd w(3), a(3), b(3), c(3);
    w << 0.5, 1.0, 0.25;
    a << 1, 2, -1;
    b << 0.5, -1, 2;
    c << 3, 1, 1;
    Functional omega = Functional::from_abelian_weights(w);
    TangentFunctional ta = eta_from_element(omega, AlgebraElement::abelian_diagonal(a));
    TangentFunctional tb = eta_from_element(omega, AlgebraElement::abelian_diagonal(b));
    TangentFunctional tc = eta_from_element(omega, AlgebraElement::abelian_diagonal(c));
    const double expect = (w.array() * a.array() * b.array() * c.array()).sum();
    REQUIRE(triple_tensor(omega, ta, tb, tc) == Catch::Approx(expect).margin(1e-13));
  }
  SECTION("identity slot reduces to the metric") {
    Rng rng(19);
    Functional omega = random_faithful_nplf(rng, AlgebraShape({2}));
    TangentFunctional ti = eta_from_element(omega, AlgebraElement::identity(omega.shape()));
    TangentFunctional tb = eta_from_element(omega, random_self_adjoint_element(rng, omega.shape()));
    TangentFunctional tc = eta_from_element(omega, random_self_adjoint_element(rng, omega.shape()));
    REQUIRE(triple_tensor(omega, ti, tb, tc) ==
            Catch::Approx(inner_product(omega, tb, tc)).margin(1e-11));
  }
  SECTION("outer arguments commute") {
    Rng rng(23);
    Functional omega = random_faithful_nplf(rng, AlgebraShape({3}));
    TangentFunctional ta = eta_from_element(omega, random_self_adjoint_element(rng, omega.shape()));
    TangentFunctional tb = eta_from_element(omega, random_self_adjoint_element(rng, omega.shape()));
    TangentFunctional tc = eta_from_element(omega, random_self_adjoint_element(rng, omega.shape()));
    REQUIRE(triple_tensor(omega, ta, tb, tc) ==
            Catch::Approx(triple_tensor(omega, tc, tb, ta)).margin(1e-10));
  }
  SECTION("restricted to faithful bases") {
    Functional omega = qubit_diag(1.0, 0.0);
    TangentFunctional eta = eta_from_element(omega, AlgebraElement::single_block(pauli_x()));
    REQUIRE_THROWS_AS(triple_tensor(omega, eta, eta, eta), FaithfulnessError);
  }
}
