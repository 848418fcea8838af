#include "ladder/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ladder/errors.hpp"

namespace ladder {

namespace {

double inf_ratio(const HamiltonianSpec& spec, double w, int t_samples, const char* label, int i) {
  double inf = std::numeric_limits<double>::infinity();
  for (int j = 0; j < t_samples; ++j) {
    const double t = spec.period * j / t_samples;
    const double F = spec.F(t, w);
    if (!(F > 0.0)) {
      std::ostringstream os;
      os << spec.name << ": F(t, " << label << "_" << i << ") = " << F << " <= 0 at t = " << t;
      throw HypothesisError(os.str());
    }
    inf = std::min(inf, F);
  }
  return inf / (w * w);
}

}  // namespace

AlphaGate alpha_threshold(const HamiltonianSpec& spec, int n, int t_samples) {
  if (n < 0) throw ConfigError("alpha_threshold: n must be nonnegative");
  if (t_samples < 1) throw ConfigError("alpha_threshold: t_samples must be positive");
  AlphaGate g;
  g.n = n;
  g.b2 = spec.b2;
  g.alpha = std::numeric_limits<double>::infinity();
  g.alpha_gamma = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 2 * n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    g.alpha = std::min(g.alpha, inf_ratio(spec, spec.ladder.beta(idx), t_samples, "beta", i));
    g.alpha_gamma =
        std::min(g.alpha_gamma, inf_ratio(spec, spec.ladder.gamma(idx), t_samples, "gamma", i));
  }
  g.passed = spec.b2 < g.alpha && spec.b2 < g.alpha_gamma;
  std::ostringstream os;
  os.precision(10);
  os << "b2 = " << spec.b2 << (spec.b2 < g.alpha ? " < " : " >= ") << "alpha_" << n << " = "
     << g.alpha << " (negative witnesses: " << g.alpha_gamma << ")";
  g.inequality = os.str();
  return g;
}

SolutionCertificate solve_periodic_window(const HamiltonianSpec& spec, int k, int n, Sign sign,
                                          const PeriodicOptions& popts,
                                          const MinimizeOptions& opts,
                                          const std::optional<GridFunction>& seed) {
  opts.validate();
  const Grid grid = Grid::periodic_1d(k, spec.period, popts.cells_per_period);
  const TruncatedNonlinearity tr = truncate(spec, n, sign);
  const Window& w = tr.window();

  // Window gate: the constant witness must beat the quadratic part.
  double inf_F = std::numeric_limits<double>::infinity();
  for (int j = 0; j < popts.t_samples; ++j) {
    const double t = spec.period * j / popts.t_samples;
    inf_F = std::min(inf_F, tr.antiderivative(Point{t, 0.0}, w.witness));
  }
  if (!(spec.b2 < inf_F / (w.witness * w.witness))) {
    std::ostringstream os;
    os << spec.name << ": window " << n << " (" << to_string(sign) << ") gate fails: b2 = "
       << spec.b2 << " >= inf_t F_n(t, witness) / witness^2 = "
       << inf_F / (w.witness * w.witness);
    throw HypothesisError(os.str());
  }

  const Functional fn(grid, tr);
  GridFunction start = seed ? *seed : make_seed(grid, w, opts);
  require_same_grid(grid, start, "solve_periodic_window");
  CertifyPolicy policy;
  policy.lower_asserted = true;
  policy.upper_asserted = true;
  policy.energy_asserted = true;
  SolutionCertificate c = solve_functional(fn, start, opts, policy);
  GridFunction trial(grid);
  for (auto& v : trial.values()) v = w.witness;
  c.trial_energy = fn.energy(trial);
  return c;
}

HamiltonianFamily family_solve(const HamiltonianSpec& spec, int n, int k,
                               const PeriodicOptions& popts, const MinimizeOptions& opts) {
  if (k < 1) throw ConfigError("family_solve: k must be positive");
  HamiltonianFamily fam;
  fam.gate = alpha_threshold(spec, n, popts.t_samples);
  if (!fam.gate.passed) throw HypothesisError(spec.name + ": coercivity gate fails: " + fam.gate.inequality);
  for (int i = 0; i <= n; ++i) {
    fam.positive.push_back(solve_periodic_window(spec, k, 2 * i, Sign::plus, popts, opts));
    fam.negative.push_back(solve_periodic_window(spec, k, 2 * i, Sign::minus, popts, opts));
  }
  return fam;
}

double derivative_bound(const HamiltonianSpec& spec, double M, int t_samples, int u_samples) {
  double c = 0.0;
  for (int j = 0; j < t_samples; ++j) {
    const double t = spec.period * j / t_samples;
    for (int q = 0; q < u_samples; ++q) {
      const double u = -M + 2.0 * M * q / std::max(u_samples - 1, 1);
      c = std::max(c, std::abs(spec.K_u(t, u) - spec.F_u(t, u)));
    }
  }
  return c;
}

GridFunction extend_periodically(const GridFunction& u, const Grid& target) {
  const Grid& src = u.grid();
  if (src.kind() != GridKind::periodic_1d || target.kind() != GridKind::periodic_1d ||
      src.cells_per_period() != target.cells_per_period() || src.period() != target.period()) {
    throw UsageError("extend_periodically: needs periodic grids with equal period and resolution");
  }
  const long np = src.cells_per_period();
  const long n_src = static_cast<long>(src.dof());
  const long shift = (static_cast<long>(target.k()) - src.k()) * np;
  GridFunction out(target);
  for (std::size_t j = 0; j < target.dof(); ++j) {
    const long s = ((static_cast<long>(j) - shift) % n_src + n_src) % n_src;
    out[j] = u[static_cast<std::size_t>(s)];
  }
  return out;
}

namespace {

std::size_t node_index(const Grid& grid, double t) {
  const double q = (t + grid.k() * grid.period()) / grid.hx();
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) {
    throw ConfigError("limit_study: compact window endpoints must be grid nodes");
  }
  const long n = static_cast<long>(grid.dof());
  return static_cast<std::size_t>((static_cast<long>(r) % n + n) % n);
}

}  // namespace

ConvergenceReport limit_study(const HamiltonianSpec& spec, int n, const std::vector<int>& k_list,
                              double a, double b, const PeriodicOptions& popts,
                              const MinimizeOptions& opts, const std::vector<Sign>& signs) {
  if (k_list.empty()) throw ConfigError("grid.k_list must not be empty");
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 1) throw ConfigError("grid.k_list entries must be positive");
    if (i > 0 && k_list[i] <= k_list[i - 1]) {
      throw ConfigError("grid.k_list must be strictly increasing");
    }
  }
  const double kmin_T = k_list.front() * spec.period;
  if (!(a < b) || a < -kmin_T - 1e-12 || b > kmin_T + 1e-12) {
    throw ConfigError("limit_study: compact window must satisfy -k_min T <= a < b <= k_min T");
  }

  ConvergenceReport rep;
  rep.k_list = k_list;
  rep.compact_a = a;
  rep.compact_b = b;
  rep.cells_per_period = popts.cells_per_period;
  rep.fd_slack = popts.fd_slack;
  rep.gate = alpha_threshold(spec, n, popts.t_samples);
  if (!rep.gate.passed) {
    throw HypothesisError(spec.name + ": coercivity gate fails: " + rep.gate.inequality);
  }
  const auto top = static_cast<std::size_t>(2 * n + 1);
  rep.uniform_bound_M = std::max(std::abs(spec.ladder.mu(top)), std::abs(spec.ladder.eta(top)));
  rep.derivative_bound_c =
      derivative_bound(spec, rep.uniform_bound_M, popts.t_samples, popts.u_samples);

  const double h = spec.period / popts.cells_per_period;
  const int span = static_cast<int>(std::lround((b - a) / h));

  for (Sign sign : signs) {
    for (int i = 0; i <= n; ++i) {
      MemberStudy ms;
      ms.member = i;
      ms.sign = sign;
      const Window w = window_of(spec.ladder, 2 * i, sign);
      ms.bound_M = std::abs(w.outer());
      ms.derivative_bound_c = derivative_bound(spec, ms.bound_M, popts.t_samples, popts.u_samples);

      std::optional<GridFunction> prev;
      for (int k : k_list) {
        const Grid grid = Grid::periodic_1d(k, spec.period, popts.cells_per_period);
        std::optional<GridFunction> seed;
        if (prev) seed = extend_periodically(*prev, grid);
        try {
          SolutionCertificate c = solve_periodic_window(spec, k, 2 * i, sign, popts, opts, seed);
          if (!c.passed()) {
            std::ostringstream os;
            os << "k = " << k << ": certificate fails (";
            for (const auto& f : c.failed_assertions()) os << ' ' << f;
            os << " )";
            ms.stable = false;
            ms.instability = os.str();
            break;
          }
          prev = c.solution;
          ms.k_list.push_back(k);
          ms.sup_norms.push_back(c.sup_norm);
          const auto du = central_derivative(grid, c.solution);
          const GridFunction ddu = neg_laplacian_apply(grid, c.solution);
          double mdu = 0.0, mddu = 0.0;
          for (double v : du) mdu = std::max(mdu, std::abs(v));
          for (double v : ddu.values()) mddu = std::max(mddu, std::abs(v));
          ms.max_du.push_back(mdu);
          ms.max_ddu.push_back(mddu);
          if (c.sup_norm > ms.bound_M + c.window_tol) ms.uniform_bound_ok = false;
          if (mddu > ms.derivative_bound_c * (1.0 + popts.fd_slack)) ms.derivative_bound_ok = false;
          ms.certificates.push_back(std::move(c));
        } catch (const Error& e) {
          ms.stable = false;
          ms.instability = "k = " + std::to_string(k) + ": " + e.what();
          break;
        }
      }

      // C1 distances between consecutive k on [a, b].
      for (std::size_t q = 1; q < ms.certificates.size(); ++q) {
        const auto& u1 = ms.certificates[q - 1].solution;
        const auto& u2 = ms.certificates[q].solution;
        const auto d1 = central_derivative(u1.grid(), u1);
        const auto d2 = central_derivative(u2.grid(), u2);
        const std::size_t j1 = node_index(u1.grid(), a);
        const std::size_t j2 = node_index(u2.grid(), a);
        const std::size_t n1 = u1.size(), n2 = u2.size();
        double dist = 0.0;
        for (int m = 0; m <= span; ++m) {
          const std::size_t p1 = (j1 + static_cast<std::size_t>(m)) % n1;
          const std::size_t p2 = (j2 + static_cast<std::size_t>(m)) % n2;
          dist = std::max(dist, std::abs(u1[p1] - u2[p2]) + std::abs(d1[p1] - d2[p2]));
        }
        ms.c1_distances.push_back(dist);
      }

      if (!ms.certificates.empty()) {
        const auto& u = ms.certificates.back().solution;
        const Grid& grid = u.grid();
        const auto du = central_derivative(grid, u);
        const GridFunction minus_ddu = neg_laplacian_apply(grid, u);
        const std::size_t j0 = node_index(grid, a);
        const std::size_t nn = u.size();
        double integral = 0.0;
        double prev_g = 0.0;
        for (int m = 0; m <= span; ++m) {
          const std::size_t p = (j0 + static_cast<std::size_t>(m)) % nn;
          const double t = a + m * h;
          const double Vu = spec.F_u(t, u[p]) - spec.K_u(t, u[p]);
          ms.limit_t.push_back(t);
          ms.limit_candidate.push_back(u[p]);
          ms.limit_residual = std::max(ms.limit_residual, std::abs(-minus_ddu[p] + Vu));
          const double g = -Vu;
          if (m > 0) integral += 0.5 * h * (prev_g + g);
          prev_g = g;
          ms.integral_identity_discrepancy =
              std::max(ms.integral_identity_discrepancy, std::abs(du[p] - du[j0] - integral));
        }
      }
      rep.members.push_back(std::move(ms));
    }
  }
  return rep;
}

}  // namespace ladder
