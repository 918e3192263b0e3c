#include <doctest.h>

#include <cmath>

#include "tovlab/catalog.hpp"
#include "tovlab/error.hpp"
#include "tovlab/tov_core.hpp"
#include "oracles.hpp"

using namespace tovlab;

namespace {
const Tolerances tol{};
const Domain positive = Domain::open(0, kInf);
ScalarField field(std::function<double(double)> f) { return ScalarField(std::move(f), positive); }

MassModel constant_mass(double c) {
  return {field([c](double r) { return 4 * kPi * c * r * r * r / 3; }),
          field([c](double r) { return 4 * kPi * c * r * r; })};
}

double interior(double c, double R, double r) {
  const double a = std::sqrt(1 - 8 * kPi * c * R * R / 3);
  const double b = std::sqrt(1 - 8 * kPi * c * r * r / 3);
  return c * (b - a) / (3 * a - b);
}
}  // namespace

TEST_SUITE("tov-core") {
  TEST_CASE("coefficients in vacuum") {
    const auto k = riccati_coefficients(0, 0, 1, tol);
    CHECK(k.A == 0.0);
    CHECK(k.B == 0.0);
    CHECK(k.C == doctest::Approx(-4 * kPi));
  }

  TEST_CASE("coefficients match substitution oracles") {
    const auto k = riccati_coefficients(constant_mass(1 / (100 * kPi)), 1, tol);
    CHECK(k.A == doctest::Approx(oracle::const_A).epsilon(1e-13));
    CHECK(k.B == doctest::Approx(oracle::const_B).epsilon(1e-13));
    CHECK(k.C == doctest::Approx(oracle::const_C).epsilon(1e-13));

    const auto& e = entry(RowId::R1);
    const auto k1 = riccati_coefficients(e.mass_model({7, 1, 1}, tol), 3, tol);
    CHECK(k1.A == doctest::Approx(oracle::row1_A).epsilon(1e-12));
    CHECK(k1.B == doctest::Approx(oracle::row1_B).epsilon(1e-12));
    CHECK(k1.C == doctest::Approx(oracle::row1_C).epsilon(1e-12));
  }

  TEST_CASE("sign convention") {
    for (double r : {0.5, 1.0, 2.0}) {
      const auto k = riccati_coefficients(constant_mass(0.01), r, tol);
      CHECK(k.A < 0);
      CHECK(k.B < 0);
      CHECK(k.C < 0);
    }
  }

  TEST_CASE("coefficient errors") {
    CHECK_THROWS_AS(riccati_coefficients(1.0, 1.0, 2.0, tol), Error);  // 2M/r = 1
    try {
      riccati_coefficients(1.0, 1.0, 2.0, tol);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::HorizonSingularity);
    }
    try {
      riccati_coefficients(0.0, 0.0, 0.0, tol);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OriginSingularity);
    }
  }

  TEST_CASE("coefficient relation is an identity") {
    const auto [a, b] = coefficient_relation_residual(constant_mass(1 / (100 * kPi)), 1, tol);
    CHECK(std::abs(a) < tol.residual_tol);
    CHECK(std::abs(b) < tol.residual_tol);
    const auto m1 = entry(RowId::R1).mass_model({7, 1, 1}, tol);
    const auto [c, d] = coefficient_relation_residual(m1, 2, tol);
    CHECK(std::abs(c) < tol.residual_tol);
    CHECK(std::abs(d) < tol.residual_tol);
    for (const auto& e : catalog()) {
      const auto m = e.mass_model({7, 1, 0.01}, tol);
      const auto [x, y] = coefficient_relation_residual(m, 3.7, tol);
      CHECK(std::abs(x) < tol.residual_tol);
      CHECK(std::abs(y) < tol.residual_tol);
    }
  }

  TEST_CASE("degenerate coefficient relation") {
    MassModel flat{field([](double) { return 0.1; }), field([](double) { return 0.0; })};
    try {
      coefficient_relation_residual(flat, 1, tol);
      FAIL("expected DegenerateDenominator");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateDenominator);
    }
  }

  TEST_CASE("TOV residual") {
    StellarSystem vac{field([](double) { return 0.0; }), field([](double) { return 0.0; }),
                      {field([](double) { return 0.0; }), field([](double) { return 0.0; })}};
    CHECK(tov_residual(vac, 1, tol) == 0.0);

    const double c = 0.001, R = 5;
    StellarSystem star{field([=](double r) { return interior(c, R, r); }), field([=](double) { return c; }),
                       constant_mass(c)};
    CHECK(interior(c, R, 1) == doctest::Approx(oracle::interior_p_1).epsilon(1e-13));
    CHECK(interior(c, R, 2.5) == doctest::Approx(oracle::interior_p_2_5).epsilon(1e-13));
    CHECK(std::abs(tov_residual(star, R / 2, tol)) < tol.residual_tol);

    // pseudo-asymptotic row 1 is not a TOV system at small r
    const auto& e = entry(RowId::R1);
    const Params p{7, 1, 1};
    StellarSystem ps{field([](double) { return 0.01; }), e.rho_field(p, tol), e.mass_model(p, tol)};
    CHECK(std::abs(tov_residual(ps, 0.3, tol)) > 1e-3);
  }

  TEST_CASE("TOV and Riccati agree when continuity holds") {
    const double c = 0.001, R = 5;
    auto p = field([=](double r) { return interior(c, R, r) * (1 + 0.1 * r); });  // any smooth pressure
    StellarSystem s{p, field([=](double) { return c; }), constant_mass(c)};
    CoefficientsAt k = [&](double r) { return riccati_coefficients(s.mass, r, tol); };
    for (double r : {0.7, 1.9, 3.3}) {
      REQUIRE(std::abs(continuity_residual(s, r, tol)) < 1e-15);
      CHECK(tov_residual(s, r, tol) == doctest::Approx(riccati_residual(p, k, r, tol)).epsilon(1e-9));
    }
  }

  TEST_CASE("continuity residual") {
    const double c = 0.02;
    StellarSystem s{field([](double) { return 0.0; }), field([=](double) { return c; }), constant_mass(c)};
    CHECK(continuity_residual(s, 1.3, tol) == doctest::Approx(0).epsilon(1e-15));
    StellarSystem shifted{s.p, field([=](double) { return c + 1; }), s.mass};
    CHECK(continuity_residual(shifted, 1.3, tol) == doctest::Approx(-4 * kPi * 1.3 * 1.3));

    const auto& e = entry(RowId::R1);
    const Params p{7, 1, 1};
    StellarSystem r1{s.p, e.rho_field(p, tol), e.mass_model(p, tol)};
    for (double r : {0.3, 1.0, 2.0, 5.0})
      CHECK(std::abs(continuity_residual(r1, r, tol)) < tol.residual_tol * (1 + std::abs(e.mass_prime(p, r))));
  }

  TEST_CASE("Riccati residual trivial case") {
    CoefficientsAt zero = [](double) { return RiccatiCoefficients{}; };
    CHECK(riccati_residual(field([](double) { return 3.0; }), zero, 2, tol) == doctest::Approx(0).epsilon(1e-12));
  }

  TEST_CASE("mass model derivative mismatch") {
    const auto m = constant_mass(0.01);
    CHECK(m.derivative_mismatch({0.5, 1, 2}, tol) < tol.residual_tol);
    const auto fd = MassModel::with_fd_derivative(m.M, tol);
    CHECK(fd.M_prime(2) == doctest::Approx(m.M_prime(2)).epsilon(1e-8));
  }
}
