#include <catch2/catch_amalgamated.hpp>

#include "jig/suites.hpp"

using namespace jig;

namespace {

void require_pass(const OracleReport& r) {
  INFO(format_report_line(r));
  REQUIRE(r.pass);
  REQUIRE(r.sample_count > 0);
}

}  // namespace

TEST_CASE("algebraic identity suites") {
  require_pass(run_jordan_lie_suite(1, 50, 1e-10));
  require_pass(run_triple_identity_suite(1, 50, 1e-10));
  require_pass(run_triple_symmetry_suite(1, 50, 1e-10));
}

TEST_CASE("lift suites") {
  require_pass(run_round_trip_suite(1, 40, 1e-10));
  require_pass(run_lift_agreement_suite(1, 30, 1e-9));
  require_pass(run_ac_agreement_suite(1, 60));
}

TEST_CASE("invariance and channel suites") {
  require_pass(run_unitary_invariance_suite(1, 30, 1e-10));
  require_pass(run_monotonicity_suite(1, 60, 1e-9));
  require_pass(run_kadison_schwarz_suite(1, 40, 1e-10));
  KrausMap pinch = KrausMap::pinching(3);
  require_pass(run_monotonicity_suite(1, 25, 1e-9, &pinch));
}

TEST_CASE("reduction suites") {
  require_pass(run_fisher_rao_suite(1, TangentMode::Analytic, 1e-10));
  require_pass(run_fisher_rao_suite(1, TangentMode::FiniteDifference, 1e-6));
  require_pass(run_bures_helstrom_suite(1, 40, 1e-9));
  require_pass(run_rank_one_suite(1, 20, 1e-8));
  require_pass(run_fubini_study_suite(1, 20, 1e-8));
  require_pass(run_left_invariance_suite(1, 10, 1e-10));
}

TEST_CASE("structure suites") {
  require_pass(run_structure_dimension_suite(1));
  require_pass(run_amari_cencov_suite(1, 40, 1e-12));
}

TEST_CASE("suites are deterministic in the seed") {
  OracleReport a = run_monotonicity_suite(7, 20, 1e-9);
  OracleReport b = run_monotonicity_suite(7, 20, 1e-9);
  REQUIRE(a.max_abs_error == b.max_abs_error);
  OracleReport c = run_bures_helstrom_suite(3, 15, 1e-9);
  OracleReport d = run_bures_helstrom_suite(3, 15, 1e-9);
  REQUIRE(c.max_abs_error == d.max_abs_error);
}
