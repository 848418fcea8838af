#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ladder/errors.hpp"
#include "ladder/variational.hpp"
#include "ladder/verify.hpp"

using namespace ladder;
using std::numbers::pi;

namespace {

// u*(x) = x (1 - x) e^x on [0, 1]; -u*'' = (x^2 + 3x) e^x.
double u_star(double x) { return x * (1.0 - x) * std::exp(x); }
double f_star(double x) { return (x * x + 3.0 * x) * std::exp(x); }

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("residual of the trivial solution") {
    const Grid g = Grid::dirichlet_1d(0.0, 1.0, 32);
    const ResidualEvaluator f = [](Point, double u, const Xi&) { return std::sin(u); };
    CHECK(residual_norm(g, f, GridFunction(g)) == 0.0);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    GridFunction u(g);
    for (std::size_t i = 0; i < g.dof(); ++i) u[i] = d(rng);
    CHECK(residual_norm(g, f, u) > 0.0);
  }

  TEST_CASE("manufactured solution residual is second order") {
    const ResidualEvaluator f = [](Point p, double, const Xi&) { return f_star(p.x); };
    double prev = 0.0;
    for (int cells : {32, 64, 128}) {
      const Grid g = Grid::dirichlet_1d(0.0, 1.0, cells);
      GridFunction u(g);
      for (std::size_t i = 0; i < g.dof(); ++i) u[i] = u_star(g.node(i).x);
      const double r = residual_norm(g, f, u);
      if (prev > 0.0) CHECK(std::log2(prev / r) >= 1.9);
      prev = r;
    }
  }

  TEST_CASE("window certificate") {
    const Grid g = Grid::dirichlet_1d(0.0, 1.0, 10);
    GridFunction mid(g);
    for (std::size_t i = 0; i < g.dof(); ++i) mid[i] = 1.5;
    const WindowCheck ok = window_certificate(mid, 1.0, 2.0, 1e-6);
    CHECK(ok.lower_ok);
    CHECK(ok.upper_ok);

    GridFunction bump = mid;
    bump[4] = 2.0 + 2e-6;
    const WindowCheck bad = window_certificate(bump, 1.0, 2.0, 1e-6);
    CHECK_FALSE(bad.upper_ok);
    CHECK(bad.worst_high == doctest::Approx(2e-6));
    CHECK(bad.lower_ok);

    // Interior nodes only: the zero boundary does not count against lo > 0.
    CHECK(window_certificate(mid, 1.2, 2.0, 1e-6).lower_ok);
    CHECK_FALSE(window_certificate(mid, 1.6, 2.0, 1e-6).lower_ok);
  }

  TEST_CASE("distinctness") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 128);
    const NonlinearitySpec s = load_sine_elliptic({{"a", 50.0}});
    const SolutionCertificate c = solve_window(s, g, 0, Sign::plus);
    CHECK_THROWS_AS(distinctness_report({c}), UsageError);
    const DistinctnessReport dup = distinctness_report({c, c});
    CHECK(dup.has_duplicates);
    CHECK(dup.min_distance == 0.0);

    const SolutionCertificate m = solve_window(s, g, 0, Sign::minus);
    const DistinctnessReport pm = distinctness_report({c, m});
    CHECK_FALSE(pm.has_duplicates);
    CHECK(pm.min_distance >= c.sup_norm);
  }

  TEST_CASE("oracle on a linear homogeneous problem") {
    const auto f = [](double, double) { return 0.0; };
    OracleOptions o;
    o.steps = 1000;
    o.slope_samples = 101;
    const auto sols = shooting_oracle_1d(f, 1.0, {-1.0, 1.0}, {}, o);
    REQUIRE(sols.size() == 1);
    CHECK(std::abs(sols[0].initial_slope) < 1e-9);
    CHECK(sols[0].max_value < 1e-9);
  }

  TEST_CASE("oracle eigenvalue degeneracy gives a flat miss function") {
    const auto f = [](double, double u) { return pi * pi * u; };
    OracleOptions o;
    o.steps = 2000;
    o.slope_samples = 11;
    for (const auto& [slope, miss] : miss_function(f, 1.0, {0.0, 5.0}, o)) {
      CHECK(std::abs(miss) <= 1e-10 * (1.0 + slope));
    }
  }

  TEST_CASE("stencil oracle reproduces the discrete minimizer") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 512);
    const NonlinearitySpec s = load_sine_elliptic({{"a", 50.0}});
    const SolutionCertificate c = solve_window(s, g, 0, Sign::plus);
    const auto tr = truncate(s, 0, Sign::plus);
    OracleOptions o;
    o.integrator = OracleIntegrator::stencil;
    o.steps = 512;
    const auto sols = shooting_oracle_1d([&](double x, double u) { return tr.value(Point{x, 0.0}, u); }, 20.0,
                                         {0.0, 20.0}, {OracleWindow{0.0, 2 * pi}}, o);
    REQUIRE_FALSE(sols.empty());
    double best = 1e300;
    for (const auto& sol : sols) {
      CHECK(sol.boundary_miss <= 1e-8);
      const GridFunction r = restrict_to_grid(sol, g);
      double d = 0.0;
      for (std::size_t i = 0; i < g.dof(); ++i) d = std::max(d, std::abs(r[i] - c.solution[i]));
      best = std::min(best, d);
    }
    CHECK(best <= 1e-7);
  }

  TEST_CASE("hermite restriction is exact for cubics") {
    OracleSolution sol;
    sol.domain_length = 2.0;
    const int steps = 8;
    for (int j = 0; j <= steps; ++j) {
      const double x = 2.0 * j / steps;
      sol.u.push_back(x * (2.0 - x) * (x + 1.0));
      sol.du.push_back(-3.0 * x * x + 2.0 * x + 2.0);
    }
    const Grid g = Grid::dirichlet_1d(0.0, 2.0, 37);
    const GridFunction r = restrict_to_grid(sol, g);
    for (std::size_t i = 0; i < g.dof(); ++i) {
      const double x = g.node(i).x;
      CHECK(r[i] == doctest::Approx(x * (2.0 - x) * (x + 1.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(restrict_to_grid(sol, Grid::dirichlet_1d(0.0, 3.0, 10)), UsageError);
  }

  TEST_CASE("gradient check is deterministic") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 64);
    const auto tr = truncate(load_sine_elliptic({{"a", 50.0}}), 0, Sign::plus);
    GridFunction u(g);
    for (std::size_t i = 0; i < g.dof(); ++i) u[i] = 3.0 + std::sin(g.node(i).x);
    const double a = fd_gradient_check(g, tr, u, 1e-6);
    const double b = fd_gradient_check(g, tr, u, 1e-6);
    CHECK(a == b);
    CHECK(a <= 1e-5);
  }
}
