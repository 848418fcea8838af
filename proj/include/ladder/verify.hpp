#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ladder/grid.hpp"
#include "ladder/variational.hpp"

namespace ladder {

using ResidualEvaluator = std::function<double(Point, double, const Xi&)>;

/// ||-Delta_h u - f(., u, xi(u))||_{L2}, with xi from node_gradient_magnitudes.
double residual_norm(const Grid& grid, const ResidualEvaluator& f, const GridFunction& u);

/// lower_ok <=> min u >= lo - tol, upper_ok <=> max u <= hi + tol over the
/// stored nodes (interior nodes on Dirichlet grids).
WindowCheck window_certificate(const GridFunction& u, double lo, double hi, double window_tol);

struct DistinctnessReport {
  std::vector<std::vector<double>> linf_distance;
  /// separated[i][j]: the pair lies in different windows and both have
  /// negative energy, so sup-norm separation applies.
  std::vector<std::vector<bool>> separated;
  double min_distance = 0.0;
  bool sup_norms_increasing = true;  ///< among negative-energy certificates, in input order
  bool has_duplicates = false;       ///< some pair at distance zero
};

DistinctnessReport distinctness_report(const std::vector<SolutionCertificate>& certs);

enum class OracleIntegrator { rk4, stencil };

struct OracleOptions {
  OracleIntegrator integrator = OracleIntegrator::rk4;
  int steps = 100000;          ///< integration steps over [0, L]
  int slope_samples = 2001;
  double oracle_tol = 1e-10;   ///< on the boundary miss
  int max_bisections = 200;
  double segment_length = 0.0; ///< multiple-shooting segment length; 0 -> L / 200
  int max_newton = 60;
  int max_solutions = 64;      ///< distinct accepted solutions kept
};

struct OracleSolution {
  double initial_slope = 0.0;
  double domain_length = 0.0;
  std::vector<double> u;   ///< nodal values at x_j = j L / steps, j = 0..steps
  std::vector<double> du;  ///< matching derivative values
  double boundary_miss = 0.0;  ///< |u(L)|, or the largest multiple-shooting defect if larger
  bool polished = false;       ///< refined by multiple shooting after bisection stalled
  double min_value = 0.0;
  double max_value = 0.0;
  std::optional<int> window_hit;  ///< index into the supplied window list

  /// Profile on the interior nodes of a fine Dirichlet grid of `steps` cells.
  GridFunction profile() const;
};

struct SlopeRange {
  double lo = 0.0;
  double hi = 1.0;
};

struct OracleWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Shooting for -u'' = f(x, u), u(0) = u(L) = 0. Brackets are found by a
/// slope sweep comparing the number of interior sign changes of u_s (which
/// can only change through the endpoint x = L), then refined by bisection.
/// Brackets that collapse before the miss drops to oracle_tol are polished by
/// multiple shooting seeded from the bracket trajectory. Returns accepted
/// solutions whose range meets one of `windows` (all accepted solutions when
/// `windows` is empty).
std::vector<OracleSolution> shooting_oracle_1d(const std::function<double(double, double)>& f,
                                               double L, SlopeRange slopes,
                                               const std::vector<OracleWindow>& windows,
                                               const OracleOptions& opts = {});

/// (slope, u_s(L)) over the slope sweep, for inspecting degenerate problems.
std::vector<std::pair<double, double>> miss_function(const std::function<double(double, double)>& f,
                                                    double L, SlopeRange slopes,
                                                    const OracleOptions& opts = {});

/// Cubic Hermite restriction of an oracle profile to a Dirichlet 1D grid on [0, L].
GridFunction restrict_to_grid(const OracleSolution& sol, const Grid& grid);

/// Worst relative error between central differences of the energy along
/// `directions` random unit directions and <gradient, direction>.
double fd_gradient_check(const Functional& fn, const GridFunction& u, double step,
                         int directions = 20, std::uint64_t seed = 7);
double fd_gradient_check(const Grid& grid, const TruncatedNonlinearity& tr, const GridFunction& u,
                         double step, int directions = 20, std::uint64_t seed = 7);

}  // namespace ladder
