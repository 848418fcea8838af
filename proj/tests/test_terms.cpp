#include <doctest.h>

#include <cmath>
#include <random>

#include "ladder/errors.hpp"
#include "ladder/terms.hpp"

using namespace ladder;

TEST_SUITE("terms") {
  TEST_CASE("term evaluation") {
    // 2 x^2 sin(3u + 1) - 0.5 tanh(xi)
    const TermSum s({Term{2.0, {Factor{FactorKind::poly, Var::x, 1.0, 0.0, 2},
                                Factor{FactorKind::sin, Var::u, 3.0, 1.0, 1}}},
                     Term{-0.5, {Factor{FactorKind::tanh, Var::xi, 1.0, 0.0, 1}}}});
    const Vars v{1.5, 0.0, 0.2, 0.7};
    CHECK(s(v) == doctest::Approx(2.0 * 2.25 * std::sin(1.6) - 0.5 * std::tanh(0.7)));
    CHECK(s.d_du(v) == doctest::Approx(2.0 * 2.25 * 3.0 * std::cos(1.6)));
    CHECK(s.depends_on(Var::xi));
    CHECK_FALSE(s.depends_on(Var::y));
  }

  TEST_CASE("empty sums and constant terms") {
    const TermSum empty;
    CHECK(empty.empty());
    CHECK(empty(Vars{1, 2, 3, 4}) == 0.0);
    const TermSum c({Term{4.0, {}}});
    CHECK(c(Vars{}) == 4.0);
    CHECK(c.d_du(Vars{}) == 0.0);
  }

  TEST_CASE("u derivative matches central differences") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    const TermSum s({Term{1.3, {Factor{FactorKind::poly, Var::u, 1.0, 0.5, 3},
                                Factor{FactorKind::cos, Var::u, 0.7, 0.0, 2}}},
                     Term{0.4, {Factor{FactorKind::sech2, Var::u, 2.0, -0.3, 1},
                                Factor{FactorKind::poly, Var::x, 1.0, 0.0, 1}}},
                     Term{-2.0, {Factor{FactorKind::tanh, Var::u, 1.0, 0.0, 1}}}});
    for (int k = 0; k < 200; ++k) {
      Vars v{d(rng), d(rng), d(rng), d(rng)};
      const double h = 1e-6;
      Vars a = v, b = v;
      a.u += h;
      b.u -= h;
      CHECK(s.d_du(v) == doctest::Approx((s(a) - s(b)) / (2 * h)).epsilon(1e-6).scale(1.0));
    }
  }

  TEST_CASE("names round trip") {
    for (Var v : {Var::x, Var::y, Var::u, Var::xi}) CHECK(var_from_string(to_string(v)) == v);
    CHECK(var_from_string("t") == Var::x);
    for (FactorKind k : {FactorKind::poly, FactorKind::sin, FactorKind::cos, FactorKind::tanh, FactorKind::sech2}) {
      CHECK(factor_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(var_from_string("z"), ConfigError);
    CHECK_THROWS_AS(factor_kind_from_string("exp"), ConfigError);
  }
}
