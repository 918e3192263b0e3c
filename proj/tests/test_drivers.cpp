#include <doctest.h>

#include <cmath>

#include "tovlab/drivers.hpp"
#include "tovlab/error.hpp"
#include "oracles.hpp"

using namespace tovlab;

namespace {
const Tolerances tol{};
}

TEST_SUITE("drivers") {
  TEST_CASE("solve on every row") {
    for (const auto& e : catalog()) {
      const Params p{7, 1, 0.001};
      const double base = e.domain_lo < 1 ? 1.0 : e.domain_lo + 1;
      const auto s = solve_pressure(e, p, 1.0, base, tol);
      CAPTURE(e.name);
      CHECK(s.passed);
      CHECK(s.points.size() == 200);
      CHECK(s.window.contains(base));
      CHECK(s.max_riccati <= 10 * tol.residual_tol);
      for (std::size_t i = 1; i < s.points.size(); ++i) CHECK(s.points[i].r > s.points[i - 1].r);
      CHECK(s.max_tov.has_value() == e.is_constant());
    }
  }

  TEST_CASE("constant entry satisfies the TOV equation") {
    const auto s = solve_pressure(entry(RowId::Constant), {0, 1, 0.001}, 1.0, 1.0, tol);
    REQUIRE(s.max_tov);
    CHECK(*s.max_tov < 1e-6);
    for (const auto& pt : s.points) CHECK(pt.tov_residual.has_value());
  }

  TEST_CASE("row 1 window stops short of the singularity") {
    const auto s = solve_pressure(entry(RowId::R1), {7, 1, 1}, 1.0, 1.0, tol);
    CHECK(s.window.hi < oracle::sqrt_7_over_pi);
    CHECK(s.window.lo > 0);
  }

  TEST_CASE("a boundary base point is rejected") {
    CHECK_THROWS_AS(solve_pressure(entry(RowId::R2), {7, 1, 1}, 1.0, 1.0, tol), Error);
  }

  TEST_CASE("a singular base point is rejected") {
    try {
      solve_pressure(entry(RowId::R1), {7, 1, 1}, 1.0, oracle::sqrt_7_over_pi, tol);
      FAIL("expected DomainMismatch");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::DomainMismatch);
    }
  }

  TEST_CASE("tails") {
    const auto t3 = tails_report(entry(RowId::R3), {7, 1, 1}, tol);
    CHECK(t3.applicable);
    CHECK(t3.certificate.limit_zero);
    CHECK(t3.stable);

    const auto t7 = tails_report(entry(RowId::R7), {7, 1, 1}, tol);
    REQUIRE(t7.certificate.limit_estimate);
    CHECK(*t7.certificate.limit_estimate == doctest::Approx(oracle::row7_lambda1_limit).epsilon(1e-4));
    CHECK_FALSE(t7.certificate.limit_zero);

    const auto tc = tails_report(entry(RowId::Constant), {0, 1, 0.001}, tol);
    CHECK_FALSE(tc.applicable);
    CHECK_FALSE(tc.message.empty());
  }
}
