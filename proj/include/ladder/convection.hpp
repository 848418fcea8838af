#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ladder/grid.hpp"
#include "ladder/nonlinearity.hpp"
#include "ladder/variational.hpp"

namespace ladder {

struct PicardOptions {
  double picard_tol = 1e-8;  ///< on the H10-seminorm increment
  int max_outer = 50;
  double ratio_slack = 1e-6;
};

struct IterationTrace {
  int n = 0;
  Sign sign = Sign::plus;
  std::vector<double> increments;  ///< ||u_{m+1} - u_m|| in the H10 seminorm, u_0 = start
  std::vector<double> ratios;      ///< increments[i+1] / increments[i]
  std::optional<double> theoretical_k;
  bool empirical = false;
  bool converged = false;
  int iterations = 0;
  double ratio_slack = 1e-6;
  bool ratios_within_bound = true;  ///< every ratio <= k + slack (vacuous without k)
  bool geometric_decay = true;      ///< increments[m] <= increments[0] (k (1 + slack))^m
  /// ||-Delta_h u - f_n(., u, xi(u))||_{L2} of the final iterate, with its
  /// a-priori bound grad_tol + C_residual * (last increment), C_residual = L2.
  double fixed_point_residual = 0.0;
  double c_residual = 0.0;
  double residual_bound = 0.0;
};

/// k = (L2 / sqrt(lambda1)) / (1 - L1 / lambda1) with the discrete lambda1.
/// Throws HypothesisError when L1 >= lambda1.
double contraction_bound(const ConvectionSpec& spec, const Grid& grid);

/// Inner solve with xi frozen at the gradient of w; seeded with `seed` when
/// given, otherwise by the configured seed profile.
SolutionCertificate frozen_solve(const ConvectionSpec& spec, const Grid& grid, int n, Sign sign,
                                 const GridFunction& w, const MinimizeOptions& opts = {},
                                 const std::optional<GridFunction>& seed = std::nullopt);

/// u_m = frozen_solve(w = u_{m-1}) seeded with u_{m-1}; u_0 = u_start or the
/// seed profile. Without the contraction hypothesis the run is only allowed for
/// specs flagged empirical.
std::pair<SolutionCertificate, IterationTrace> picard_iterate(
    const ConvectionSpec& spec, const Grid& grid, int n, Sign sign,
    const std::optional<GridFunction>& u_start = std::nullopt, const PicardOptions& popts = {},
    const MinimizeOptions& opts = {});

std::vector<SolutionCertificate> ladder_walk_convection(
    const ConvectionSpec& spec, const Grid& grid, int count, Sign sign,
    const PicardOptions& popts = {}, const MinimizeOptions& opts = {},
    const std::vector<int>& schedule = {}, std::vector<IterationTrace>* traces = nullptr);

}  // namespace ladder
