#include <doctest.h>

#include <cmath>

#include "tovlab/error.hpp"
#include "tovlab/numerics.hpp"
#include "oracles.hpp"

using namespace tovlab;

namespace {
const Tolerances tol{};
ScalarField field(std::function<double(double)> f, Domain d = Domain::open(-kInf, kInf)) {
  return ScalarField(std::move(f), std::move(d));
}
}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("tolerances validate") {
    CHECK_NOTHROW(tol.validate());
    Tolerances bad = tol;
    bad.quad_rel = 1.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = tol;
    bad.root_tol = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = tol;
    bad.guard_band = -1;
    CHECK_THROWS_AS(bad.validate(), Error);
  }

  TEST_CASE("domain invariants") {
    CHECK_THROWS_AS(Domain({{1, 0}}), Error);
    CHECK_THROWS_AS(Domain({{0, 2}, {1, 3}}), Error);
    CHECK_THROWS_AS(Domain({{0, 1}}, {2.0}), Error);
    Domain d({{0, 1}, {2, kInf}}, {0.5, 3.0});
    CHECK(d.contains(0.25));
    CHECK_FALSE(d.contains(1.5));
    CHECK(d.contains(1e9));
    CHECK(d.path_is_regular(0.1, 0.4));
    CHECK_FALSE(d.path_is_regular(0.1, 0.6));
    CHECK_FALSE(d.path_is_regular(0.5, 2.5));
    const auto pieces = d.regular_pieces();
    REQUIRE(pieces.size() == 4);
    CHECK(pieces[1] == Interval{0.5, 1});
    CHECK(pieces[3] == Interval{3, kInf});
    const auto w = d.intersect({0.2, 2.5});
    CHECK(w.intervals().size() == 2);
    CHECK(w.excluded() == std::vector<double>{0.5});
  }

  TEST_CASE("integrate examples") {
    CHECK(integrate(field([](double r) { return r * r; }), 0, 1, tol) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate(field([](double) { return 0.0; }), -3, 7, tol) == 0.0);
    // F = 0 integrand of the first row
    CHECK(integrate(field([](double) { return 0.0; }), 0.5, 40, tol) == 0.0);
    CHECK(integrate_fn([](double r) { return std::exp(-r); }, 0, kInf, tol) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_fn([](double r) { return 1 / (r * r); }, 1, kInf, tol) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("integrate is additive") {
    auto f = field([](double r) { return std::sin(3 * r) / (1 + r * r); });
    for (double b : {0.3, 1.7, 2.9}) {
      const double whole = integrate(f, 0.1, 3.0, tol);
      const double parts = integrate(f, 0.1, b, tol) + integrate(f, b, 3.0, tol);
      CHECK(std::abs(whole - parts) <= 2 * std::max(tol.quad_abs, tol.quad_rel * std::abs(whole)));
    }
  }

  TEST_CASE("integrate errors") {
    auto bad = field([](double r) { return 1 / (r - 0.5); });
    CHECK_THROWS_AS(integrate_fn([](double r) { return r > 0.5 ? std::nan("") : 1.0; }, 0, 1, tol), Error);
    Domain d({{0, 1}}, {0.5});
    CHECK_THROWS_AS(integrate(bad.with_domain(d), 0.1, 0.9, tol), Error);
  }

  TEST_CASE("find_root examples") {
    auto f = field([](double r) { return kPi * r * r - 7; });
    CHECK(find_root(f, 1, 2, tol) == doctest::Approx(oracle::sqrt_7_over_pi).epsilon(1e-13));
    CHECK(std::abs(find_root(field([](double r) { return r; }), -1, 1, tol)) < 1e-12);
    // second row at c1 = pi 4 + pi log 3, i.e. r0 = 2
    const double c1 = 4 * kPi + kPi * std::log(3.0);
    auto Y = field([c1](double r) { return -c1 + kPi * r * r + kPi * std::log(r * r - 1); });
    CHECK(find_root(Y, 1.5, 3, tol) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(find_root(f, 2, 3, tol), Error);
  }

  TEST_CASE("find_root never worse than the bracket ends") {
    auto f = field([](double r) { return std::cos(r) - r; });
    const double x = find_root(f, 0, 1, tol);
    CHECK(std::abs(f(x)) <= std::abs(f(0.0)));
    CHECK(std::abs(f(x)) <= std::abs(f(1.0)));
    CHECK(std::abs(f(x)) < 1e-12);
  }

  TEST_CASE("derivative examples") {
    CHECK(derivative(field([](double r) { return r * r * r; }), 2, tol) == doctest::Approx(12).epsilon(1e-9));
    CHECK(derivative(field([](double) { return 4.2; }), 2, tol) == doctest::Approx(0).epsilon(1e-12));
    auto h = field([](double r) { return 1 / (kPi * r * r - 7); });
    CHECK(derivative(h, 2, tol) == doctest::Approx(oracle::row1_hprime_at_2).epsilon(1e-9));
    Domain d({{0, 3}}, {1.0});
    CHECK_THROWS_AS(derivative(h.with_domain(d), 1.0 + 1e-7, tol), Error);
  }

  TEST_CASE("fundamental theorem round trip") {
    auto g = [](double r) { return std::exp(-r) * std::cos(r); };
    auto G = field([g](double r) { return integrate_fn(g, 0, r, tol); });
    for (double r : {0.5, 1.0, 2.5}) CHECK(derivative(G, r, tol) == doctest::Approx(g(r)).epsilon(1e-7));
  }

  TEST_CASE("sample_grid") {
    auto g = sample_grid(Domain::open(0, 1), 3, GridScale::Linear, tol);
    REQUIRE(g.size() == 3);
    CHECK(g[0] > 0);
    CHECK(g[2] < 1);
    CHECK(g[0] < g[1]);
    CHECK(g[1] < g[2]);

    Domain d({{0, 1}}, {0.5});
    auto g2 = sample_grid(d, 101, GridScale::Linear, tol);
    for (double x : g2) CHECK(std::abs(x - 0.5) > guard_width(0.5, tol.guard_band));

    auto g3 = sample_grid(Domain::open(1, kInf), 5, GridScale::Log, tol);
    REQUIRE(g3.size() == 5);
    CHECK(g3.back() <= 1e6);
    CHECK(g3.front() > 1);
    CHECK_THROWS_AS(sample_grid(Domain(), 5, GridScale::Linear, tol), Error);
  }

  TEST_CASE("relative residual") {
    CHECK(relative_residual(2.0, {1.0, -3.0}) == doctest::Approx(0.5));
    CHECK(relative_residual(-1.0, {}) == doctest::Approx(1.0));
  }
}
