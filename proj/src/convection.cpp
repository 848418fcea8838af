#include "ladder/convection.hpp"

#include <cmath>
#include <sstream>

#include "ladder/errors.hpp"
#include "ladder/verify.hpp"

namespace ladder {

double contraction_bound(const ConvectionSpec& spec, const Grid& grid) {
  const double lambda1 = first_eigenvalue(grid);
  if (spec.L1 >= lambda1) {
    std::ostringstream os;
    os << spec.name << ": L1 = " << spec.L1 << " >= lambda1 = " << lambda1
       << "; the contraction estimate does not apply";
    throw HypothesisError(os.str());
  }
  return (spec.L2 / std::sqrt(lambda1)) / (1.0 - spec.L1 / lambda1);
}

SolutionCertificate frozen_solve(const ConvectionSpec& spec, const Grid& grid, int n, Sign sign,
                                 const GridFunction& w, const MinimizeOptions& opts,
                                 const std::optional<GridFunction>& seed) {
  if (!grid.is_dirichlet()) throw UsageError("frozen_solve: needs a Dirichlet grid");
  require_same_grid(grid, w, "frozen_solve");
  opts.validate();
  const TruncatedNonlinearity tr = truncate(spec, n, sign);
  const Functional fn(grid, tr, node_gradient_magnitudes(grid, w));
  GridFunction start = seed ? *seed : make_seed(grid, tr.window(), opts);
  require_same_grid(grid, start, "frozen_solve");
  SolutionCertificate c = solve_functional(fn, start, opts, dirichlet_policy(tr.window()));
  c.empirical = spec.empirical;
  return c;
}

std::pair<SolutionCertificate, IterationTrace> picard_iterate(
    const ConvectionSpec& spec, const Grid& grid, int n, Sign sign,
    const std::optional<GridFunction>& u_start, const PicardOptions& popts,
    const MinimizeOptions& opts) {
  if (!(popts.picard_tol > 0.0)) throw ConfigError("tolerances.picard_tol must be positive");
  if (popts.max_outer < 1) throw ConfigError("tolerances.max_outer must be positive");
  if (!(popts.ratio_slack >= 0.0)) throw ConfigError("tolerances.ratio_slack must be nonnegative");

  IterationTrace trace;
  trace.n = n;
  trace.sign = sign;
  trace.ratio_slack = popts.ratio_slack;
  trace.empirical = spec.empirical;
  try {
    const double k = contraction_bound(spec, grid);
    if (k >= 1.0 && !spec.empirical) {
      std::ostringstream os;
      os << spec.name << ": contraction constant k = " << k << " >= 1";
      throw HypothesisError(os.str());
    }
    if (k < 1.0) trace.theoretical_k = k;
  } catch (const HypothesisError&) {
    if (!spec.empirical) throw;
  }
  if (!trace.theoretical_k) trace.empirical = true;

  const TruncatedNonlinearity tr = truncate(spec, n, sign);
  GridFunction prev = u_start ? *u_start : make_seed(grid, tr.window(), opts);
  require_same_grid(grid, prev, "picard_iterate");

  std::optional<SolutionCertificate> cert;
  for (int m = 0; m < popts.max_outer; ++m) {
    cert = frozen_solve(spec, grid, n, sign, prev, opts, prev);
    GridFunction diff(grid);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = cert->solution[i] - prev[i];
    const double inc = norm(grid, diff, Norm::h10_seminorm);
    trace.increments.push_back(inc);
    const std::size_t q = trace.increments.size();
    if (q >= 2) {
      const double before = trace.increments[q - 2];
      trace.ratios.push_back(before > 0.0 ? inc / before : 0.0);
    }
    trace.iterations = m + 1;
    prev = cert->solution;
    if (inc <= popts.picard_tol) {
      trace.converged = true;
      break;
    }
  }

  if (trace.theoretical_k) {
    const double k = *trace.theoretical_k;
    for (double r : trace.ratios) {
      if (r > k + popts.ratio_slack) trace.ratios_within_bound = false;
    }
    const double rate = k * (1.0 + popts.ratio_slack);
    double bound = trace.increments.front();
    for (std::size_t m = 1; m < trace.increments.size(); ++m) {
      bound *= rate;
      if (trace.increments[m] > bound) trace.geometric_decay = false;
    }
  }

  ResidualEvaluator f = [&tr](Point p, double t, const Xi& xi) { return tr.value(p, t, xi); };
  trace.fixed_point_residual = residual_norm(grid, f, cert->solution);
  trace.c_residual = spec.L2;
  trace.residual_bound = opts.grad_tol + spec.L2 * trace.increments.back();

  cert->empirical = trace.empirical;
  cert->converged = cert->converged && trace.converged;
  return {std::move(*cert), std::move(trace)};
}

std::vector<SolutionCertificate> ladder_walk_convection(
    const ConvectionSpec& spec, const Grid& grid, int count, Sign sign, const PicardOptions& popts,
    const MinimizeOptions& opts, const std::vector<int>& schedule,
    std::vector<IterationTrace>* traces) {
  const std::vector<int> windows = schedule.empty() ? stride_two_schedule(count) : schedule;
  validate_schedule(windows);
  std::vector<SolutionCertificate> out;
  for (int n : windows) {
    auto [cert, trace] = picard_iterate(spec, grid, n, sign, std::nullopt, popts, opts);
    out.push_back(std::move(cert));
    if (traces) traces->push_back(std::move(trace));
  }
  return out;
}

}  // namespace ladder
