#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ladder/convection.hpp"
#include "ladder/errors.hpp"

using namespace ladder;
using std::numbers::pi;

namespace {

ConvectionSpec xi_free(double a) {
  ConvectionSpec s = load_tanh_convection({{"a", a}, {"b", 0.0}}, true);
  return s;
}

}  // namespace

TEST_SUITE("convection") {
  TEST_CASE("contraction constant") {
    const Grid g = Grid::dirichlet_1d(0.0, 1.0, 1024);
    const ConvectionSpec s = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
    const double lambda = first_eigenvalue(g);
    const double k = contraction_bound(s, g);
    CHECK(k == doctest::Approx((0.1 / std::sqrt(lambda)) / (1.0 - 0.4 * pi / lambda)).epsilon(1e-14));
    const double continuum = (0.1 / pi) / (1.0 - 0.4 * pi / (pi * pi));
    CHECK(continuum == doctest::Approx(0.0365).epsilon(0.01));
    CHECK(k == doctest::Approx(continuum).epsilon(1e-4));

    ConvectionSpec z = s;
    z.L2 = 0.0;
    CHECK(contraction_bound(z, g) == 0.0);
    ConvectionSpec half = s;
    half.L1 = lambda / 2.0;
    half.L2 = std::sqrt(lambda) / 4.0;
    CHECK(contraction_bound(half, g) == doctest::Approx(0.5));
    ConvectionSpec big = s;
    big.L1 = lambda;
    CHECK_THROWS_AS(contraction_bound(big, g), HypothesisError);
  }

  TEST_CASE("frozen solve ignores w when f does not see the gradient") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 128);
    const ConvectionSpec s = xi_free(20.0);
    GridFunction w(g);
    for (std::size_t i = 0; i < g.dof(); ++i) w[i] = std::sin(g.node(i).x);
    const SolutionCertificate a = frozen_solve(s, g, 0, Sign::plus, GridFunction(g));
    const SolutionCertificate b = frozen_solve(s, g, 0, Sign::plus, w);
    CHECK(a.solution == b.solution);
    CHECK(a.energy == b.energy);
  }

  TEST_CASE("frozen solve respects the upper window bound") {
    const Grid g = Grid::dirichlet_1d(0.0, 1.0, 256);
    const ConvectionSpec s = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
    GridFunction w(g);
    for (std::size_t i = 0; i < g.dof(); ++i) w[i] = 0.3 * g.node(i).x;
    const SolutionCertificate c = frozen_solve(s, g, 0, Sign::plus, w);
    CHECK(c.window_upper_ok());
    CHECK(c.window_check.max_value <= 1.0 + c.window_tol);
  }

  TEST_CASE("picard iteration with a gradient-free nonlinearity") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 128);
    const ConvectionSpec s = xi_free(20.0);
    const auto [cert, trace] = picard_iterate(s, g, 0, Sign::plus);
    CHECK(trace.converged);
    CHECK(trace.iterations == 2);
    REQUIRE(trace.increments.size() == 2);
    CHECK(trace.increments[1] == 0.0);
    CHECK(trace.empirical);
    CHECK_FALSE(trace.theoretical_k.has_value());
  }

  TEST_CASE("picard iteration contracts at the theoretical rate") {
    const Grid g = Grid::dirichlet_1d(0.0, 1.0, 256);
    const ConvectionSpec s = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
    // Start away from the (trivial) fixed point so the increments are visible.
    GridFunction start(g);
    for (std::size_t i = 0; i < g.dof(); ++i) start[i] = std::sin(pi * g.node(i).x);
    const auto [cert, trace] = picard_iterate(s, g, 0, Sign::plus, start);
    REQUIRE(trace.theoretical_k.has_value());
    CHECK(trace.converged);
    CHECK(trace.ratios_within_bound);
    CHECK(trace.geometric_decay);
    CHECK(trace.fixed_point_residual <= trace.residual_bound);
    CHECK_FALSE(trace.empirical);
  }

  TEST_CASE("outer budget exhaustion") {
    const Grid g = Grid::dirichlet_1d(0.0, 1.0, 64);
    const ConvectionSpec s = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
    GridFunction start(g);
    for (std::size_t i = 0; i < g.dof(); ++i) start[i] = 0.5;
    PicardOptions p;
    p.max_outer = 1;
    const auto [cert, trace] = picard_iterate(s, g, 0, Sign::plus, start, p);
    CHECK_FALSE(trace.converged);
    CHECK(trace.increments.size() == 1);
    CHECK_FALSE(cert.converged);
  }

  TEST_CASE("contraction failure without the empirical flag") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 64);
    const ConvectionSpec s = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
    CHECK_THROWS_AS(picard_iterate(s, g, 0, Sign::plus), HypothesisError);
  }

  TEST_CASE("walk base case and degenerate agreement") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 128);
    const ConvectionSpec s = xi_free(20.0);
    const auto walk = ladder_walk_convection(s, g, 1, Sign::plus);
    const auto [single, trace] = picard_iterate(s, g, 0, Sign::plus);
    REQUIRE(walk.size() == 1);
    CHECK(walk[0].solution == single.solution);

    const auto conv = ladder_walk_convection(s, g, 2, Sign::plus);
    const auto var = ladder_walk(zero_gradient_slice(s), g, 2, Sign::plus);
    REQUIRE(conv.size() == var.size());
    for (std::size_t k = 0; k < conv.size(); ++k) CHECK(conv[k].solution == var[k].solution);
  }

  TEST_CASE("empirical gradient-dependent ladder") {
    const Grid g = Grid::dirichlet_1d(0.0, 20.0, 256);
    const ConvectionSpec s = load_tanh_convection({{"a", 20.0}, {"b", 1.0}}, true);
    std::vector<IterationTrace> traces;
    const auto certs = ladder_walk_convection(s, g, 2, Sign::plus, {}, {}, {}, &traces);
    REQUIRE(certs.size() == 2);
    CHECK(certs[1].sup_norm > certs[0].sup_norm);
    for (const auto& c : certs) {
      CHECK(c.empirical);
      CHECK(c.energy_negative);
    }
    for (const auto& t : traces) CHECK(t.converged);
  }
}
