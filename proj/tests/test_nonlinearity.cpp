#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ladder/errors.hpp"
#include "ladder/nonlinearity.hpp"

using namespace ladder;
using std::numbers::pi;

TEST_SUITE("nonlinearity") {
  TEST_CASE("sine ladder geometry") {
    const NonlinearitySpec s = load_sine_elliptic({});
    for (int n = 0; n < 5; ++n) {
      const Window p = window_of(s.ladder, n, Sign::plus);
      CHECK(p.lo == doctest::Approx(2 * n * pi));
      CHECK(p.hi == doctest::Approx(2 * (n + 1) * pi));
      CHECK(p.witness == doctest::Approx((2 * n + 1) * pi));
      const Window m = window_of(s.ladder, n, Sign::minus);
      CHECK(m.lo == doctest::Approx(-2 * (n + 1) * pi));
      CHECK(m.hi == doctest::Approx(-2 * n * pi));
      CHECK(m.witness == doctest::Approx(-(2 * n + 1) * pi));
    }
    CHECK_THROWS_AS(window_of(s.ladder, -1, Sign::plus), ConfigError);
  }

  TEST_CASE("finite ladders run out") {
    const ZeroLadder l({0.0, 1.0, 2.0}, {0.0, -1.0}, {0.5, 1.5}, {-0.5});
    CHECK(l.available_windows() == 1);
    CHECK_NOTHROW(window_of(l, 1, Sign::plus));
    CHECK_THROWS_AS(window_of(l, 1, Sign::minus), ConfigError);
  }

  TEST_CASE("truncated sine values") {
    const NonlinearitySpec s = load_sine_elliptic({});
    const auto tr = truncate(s, 0, Sign::plus);
    const Point x{0.3, 0.0};
    CHECK(tr.value(x, -1.0) == 0.0);
    CHECK(tr.value(x, pi / 2) == doctest::Approx(1.0));
    CHECK(tr.value(x, 3 * pi) == 0.0);
    CHECK(tr.value(x, 0.0) == 0.0);
    CHECK(tr.value(x, 2 * pi) == 0.0);
    CHECK(tr.antiderivative(x, pi) == doctest::Approx(2.0));
    CHECK(tr.antiderivative(x, 10.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tr.antiderivative(x, -3.0) == 0.0);

    const NonlinearitySpec s50 = load_sine_elliptic({{"a", 50.0}});
    const auto tr2 = truncate(s50, 2, Sign::minus);
    CHECK(tr2.window().lo == doctest::Approx(-6 * pi));
    CHECK(tr2.value(x, -4.5 * pi) == doctest::Approx(-50.0));
    CHECK(tr2.antiderivative(x, -5 * pi) == doctest::Approx(100.0));
    CHECK(tr2.antiderivative(x, 0.0) == 0.0);
  }

  TEST_CASE("modulated amplitude") {
    const NonlinearitySpec s = load_sine_elliptic({{"a", 2.0}, {"modulation", 0.5}});
    const auto tr = truncate(s, 0, Sign::plus);
    const Point x{pi / 2, 0.0};
    CHECK(tr.antiderivative(x, pi) == doctest::Approx(2.0 * 2.0 * 1.5));
    CHECK_THROWS_AS(load_sine_elliptic({{"modulation", 1.0}}), ConfigError);
    CHECK_THROWS_AS(load_sine_elliptic({{"a", -1.0}}), ConfigError);
    CHECK_THROWS_AS(load_sine_elliptic({{"amplitude", 1.0}}), ConfigError);
  }

  TEST_CASE("truncated convection values") {
    const ConvectionSpec s = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
    const auto tr = truncate(s, 0, Sign::plus);
    const Xi unit{1.0, 0.0};
    CHECK(tr.value(Point{}, 0.5, unit) == doctest::Approx(0.3 + 0.1 * std::tanh(1.0)));
    CHECK(tr.antiderivative(Point{}, 0.5, unit) ==
          doctest::Approx((0.3 + 0.1 * std::tanh(1.0)) / pi));
    CHECK(tr.value(Point{}, 1.5, unit) == 0.0);
    CHECK(tr.window().hi == doctest::Approx(1.0));
  }

  TEST_CASE("truncated antiderivative is an antiderivative") {
    std::mt19937_64 rng(3);
    const NonlinearitySpec s = load_sine_elliptic({{"a", 50.0}, {"modulation", 0.3}});
    for (int n : {0, 1, 2}) {
      for (Sign sign : {Sign::plus, Sign::minus}) {
        const auto tr = truncate(s, n, sign);
        const Window w = tr.window();
        std::uniform_real_distribution<double> u(w.lo - 2.0, w.hi + 2.0);
        for (int k = 0; k < 50; ++k) {
          const double t = u(rng);
          const Point x{0.7 * k, 0.0};
          const double h = 1e-5;
          const double fd = (tr.antiderivative(x, t + h) - tr.antiderivative(x, t - h)) / (2 * h);
          CHECK(fd == doctest::Approx(tr.value(x, t)).epsilon(1e-6).scale(50.0));
          if (t < w.lo || t > w.hi) CHECK(tr.value(x, t) == 0.0);
        }
      }
    }
  }

  TEST_CASE("quadrature antiderivative agrees with closed form") {
    NonlinearitySpec s = load_sine_elliptic({{"a", 3.0}});
    NonlinearitySpec q = s;
    q.F = nullptr;
    for (int n : {0, 1}) {
      const auto a = truncate(s, n, Sign::plus);
      const auto b = truncate(q, n, Sign::plus);
      CHECK_FALSE(b.closed_form());
      for (double u : {-1.0, 0.5, 3.0, 7.0, 9.0, 13.0, 20.0}) {
        CHECK(b.antiderivative(Point{}, u) == doctest::Approx(a.antiderivative(Point{}, u)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("adaptive simpson") {
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, pi) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(adaptive_simpson([](double x) { return x * x; }, 0.0, 3.0) == doctest::Approx(9.0));
    CHECK(adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
  }

  TEST_CASE("builtin hypotheses hold") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 256);
    const auto r1 = validate_hypotheses(load_sine_elliptic({}), g);
    CHECK(r1.passed());
    for (const char* n : {"ladder-monotone", "witness-in-window", "zeros-vanish", "witness-positive", "growth"}) {
      REQUIRE(r1.find(n) != nullptr);
    }

    const Grid unit = Grid::dirichlet_1d(0.0, 1.0, 256);
    const auto r2 = validate_hypotheses(load_tanh_convection({{"a", 0.3}, {"b", 0.1}}), unit);
    CHECK(r2.passed());
    REQUIRE(r2.find("contraction") != nullptr);
    REQUIRE(r2.find("example-parameter-box") != nullptr);

    const Grid per = Grid::periodic_1d(1, 1.0, 64);
    const auto r3 = validate_hypotheses(load_sinusoidal_hamiltonian({}), per);
    CHECK(r3.passed());
    REQUIRE(r3.find("K-bounds") != nullptr);
    CHECK(r3.find("K-bounds")->passed);
  }

  TEST_CASE("hamiltonian quadratic bounds") {
    const HamiltonianSpec s = load_sinusoidal_hamiltonian({});
    CHECK(s.b1 == doctest::Approx(0.4));
    CHECK(s.b2 == doctest::Approx(1.6));
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < 4000; ++i) {
      const double t = i / 4000.0;
      const double r = s.K(t, 1.7) / (1.7 * 1.7);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      CHECK(s.K_u(t, 1.7) == doctest::Approx(2 * r * 1.7));
    }
    CHECK(lo >= 0.4);
    CHECK(hi <= 1.6);
    CHECK(s.F(0.2, 2 * pi) == doctest::Approx(0.0).scale(250.0));
    CHECK(s.F(0.2, pi) == doctest::Approx(500.0));
  }

  TEST_CASE("violated hypotheses are reported") {
    NonlinearitySpec s = load_sine_elliptic({});
    s.ladder = ZeroLadder({1.0, 0.5}, {0.0, -2 * pi}, {0.75}, {-pi});
    const auto r = validate_hypotheses(s, Grid::dirichlet_1d(0.0, 1.0, 16));
    CHECK_FALSE(r.passed());
    REQUIRE(r.find("ladder-monotone") != nullptr);
    CHECK_FALSE(r.find("ladder-monotone")->passed);

    NonlinearitySpec shifted = load_sine_elliptic({});
    shifted.ladder = ZeroLadder({0.5, 2 * pi}, {0.0, -2 * pi}, {pi}, {-pi});
    const auto r2 = validate_hypotheses(shifted, Grid::dirichlet_1d(0.0, 1.0, 16));
    CHECK_FALSE(r2.find("zeros-vanish")->passed);
  }

  TEST_CASE("convection parameter constraints") {
    CHECK_NOTHROW(load_tanh_convection({{"a", 0.3}, {"b", 0.1}}));
    CHECK_THROWS_AS(load_tanh_convection({{"a", 0.1}, {"b", 0.3}}), ConfigError);
    CHECK_THROWS_AS(load_tanh_convection({{"a", 0.3}, {"b", 0.0}}), ConfigError);
    CHECK_NOTHROW(load_tanh_convection({{"a", 0.3}, {"b", 0.0}}, true));
    CHECK_THROWS_AS(load_tanh_convection({{"a", 0.3}, {"b", 0.3}, {"c1", 0.45}}), ConfigError);
  }

  TEST_CASE("contraction check fails when L1 reaches lambda1") {
    ConvectionSpec s = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
    const Grid wide = Grid::dirichlet_1d(0.0, 20.0, 128);
    const auto r = validate_hypotheses(s, wide);
    REQUIRE(r.find("contraction") != nullptr);
    CHECK_FALSE(r.find("contraction")->passed);
  }

  TEST_CASE("zero gradient slice") {
    const ConvectionSpec s = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
    const NonlinearitySpec z = zero_gradient_slice(s);
    for (double u : {0.1, 0.4, 0.9}) CHECK(z.f(Point{}, u) == doctest::Approx(0.3 * std::sin(pi * u)));
  }
}
