#include "ladder/variational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "ladder/errors.hpp"
#include "ladder/verify.hpp"

namespace ladder {

std::string to_string(SeedProfile s) {
  switch (s) {
    case SeedProfile::plateau: return "plateau";
    case SeedProfile::constant_interior: return "constant-interior";
    case SeedProfile::custom: return "custom";
  }
  return "?";
}

SeedProfile seed_profile_from_string(const std::string& name) {
  if (name == "plateau") return SeedProfile::plateau;
  if (name == "constant-interior") return SeedProfile::constant_interior;
  if (name == "custom") return SeedProfile::custom;
  throw ConfigError("unknown seed profile '" + name + "'");
}

void MinimizeOptions::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("tolerances.") + name + " must be positive");
    }
  };
  positive(grad_tol, "grad_tol");
  positive(line_search.initial_step, "initial_step");
  positive(line_search.sufficient_decrease, "sufficient_decrease");
  positive(window_tol_factor, "window_tol_factor");
  positive(nontrivial_tol_factor, "nontrivial_tol_factor");
  if (max_iters < 1) throw ConfigError("tolerances.max_iters must be positive");
  if (!(line_search.shrink > 0.0 && line_search.shrink < 1.0)) {
    throw ConfigError("tolerances.shrink must lie in (0, 1)");
  }
  if (line_search.sufficient_decrease >= 1.0) {
    throw ConfigError("tolerances.sufficient_decrease must lie in (0, 1)");
  }
  if (line_search.max_halvings < 1) throw ConfigError("tolerances.max_halvings must be positive");
  if (!(plateau_ramp_fraction > 0.0 && plateau_ramp_fraction < 0.5)) {
    throw ConfigError("tolerances.plateau_ramp_fraction must lie in (0, 1/2)");
  }
  if (memory < 0) throw ConfigError("tolerances.memory must be nonnegative");
  if (seed_profile == SeedProfile::custom && !custom_seed) {
    throw ConfigError("seed_profile custom requires a custom seed");
  }
}

// ---------------------------------------------------------------------------
// Functional

Functional::Functional(const Grid& grid, TruncatedNonlinearity tr, std::vector<Xi> frozen_xi)
    : grid_(grid), tr_(std::move(tr)), xi_(std::move(frozen_xi)) {
  const bool periodic = grid.kind() == GridKind::periodic_1d;
  if (periodic != (tr_.problem() == ProblemClass::hamiltonian)) {
    throw UsageError("Functional: periodic grids pair with Hamiltonian truncations only");
  }
  if (xi_.empty()) xi_.assign(grid.dof(), Xi{0.0, 0.0});
  if (xi_.size() != grid.dof()) throw UsageError("Functional: frozen gradient field has wrong size");
  points_.resize(grid.dof());
  for (std::size_t i = 0; i < grid.dof(); ++i) points_[i] = grid.node(i);
  kinks_ = tr_.kinks();
}

double Functional::potential(std::size_t i, double s) const {
  const double F = tr_.antiderivative(points_[i], s, xi_[i]);
  if (tr_.has_quadratic()) return tr_.quadratic(points_[i].x, s) - F;
  return -F;
}

double Functional::potential_slope(std::size_t i, double s, bool truncated) const {
  const double f = truncated ? tr_.value(points_[i], s, xi_[i])
                             : tr_.base_value(points_[i], s, xi_[i]);
  if (tr_.has_quadratic()) return tr_.quadratic_derivative(points_[i].x, s) - f;
  return -f;
}

namespace {

// 4-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 4> kGLx{-0.8611363115940526, -0.3399810435848563,
                                     0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGLw{0.3478548451374538, 0.6521451548625461,
                                     0.6521451548625461, 0.3478548451374538};

}  // namespace

double Functional::potential_remainder(std::size_t i, double s0, double s1) const {
  const double delta = s1 - s0;
  if (delta == 0.0) return 0.0;
  const double base = potential_slope(i, s0);
  if (std::abs(delta) > 1e-3 * (1.0 + std::abs(s0))) {
    return potential(i, s1) - potential(i, s0) - base * delta;
  }
  const double a = std::min(s0, s1);
  const double b = std::max(s0, s1);
  double total = 0.0;
  double left = a;
  auto piece = [&](double l, double r) {
    const double mid = 0.5 * (l + r);
    const double half = 0.5 * (r - l);
    double acc = 0.0;
    for (std::size_t q = 0; q < kGLx.size(); ++q) {
      acc += kGLw[q] * (potential_slope(i, mid + half * kGLx[q]) - base);
    }
    return acc * half;
  };
  for (double k : kinks_) {
    if (k > left && k < b) {
      total += piece(left, k);
      left = k;
    }
  }
  total += piece(left, b);
  return delta > 0.0 ? total : -total;
}

double Functional::energy(const GridFunction& u) const {
  require_same_grid(grid_, u, "assemble_energy");
  double pot = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) pot += potential(i, u[i]);
  return 0.5 * edge_inner_product(grid_, u, u) + grid_.node_weight() * pot;
}

GridFunction Functional::residual(const GridFunction& u, bool truncated) const {
  require_same_grid(grid_, u, "residual");
  GridFunction r = neg_laplacian_apply(grid_, u);
  for (std::size_t i = 0; i < u.size(); ++i) r[i] += potential_slope(i, u[i], truncated);
  return r;
}

GridFunction Functional::gradient(const GridFunction& u) const {
  GridFunction g = residual(u, true);
  const double w = grid_.node_weight();
  for (auto& v : g.values()) v *= w;
  return g;
}

double Functional::residual_norm(const GridFunction& u, bool truncated) const {
  return norm(grid_, residual(u, truncated), Norm::l2);
}

double assemble_energy(const Grid& grid, const TruncatedNonlinearity& tr, const GridFunction& u,
                       const std::vector<Xi>& frozen_xi) {
  return Functional(grid, tr, frozen_xi).energy(u);
}

GridFunction assemble_gradient(const Grid& grid, const TruncatedNonlinearity& tr,
                               const GridFunction& u, const std::vector<Xi>& frozen_xi) {
  return Functional(grid, tr, frozen_xi).gradient(u);
}

GridFunction make_seed(const Grid& grid, const Window& window, const MinimizeOptions& opts) {
  if (opts.seed_profile == SeedProfile::custom) {
    if (!opts.custom_seed) throw ConfigError("seed_profile custom requires a custom seed");
    require_same_grid(grid, *opts.custom_seed, "make_seed");
    return *opts.custom_seed;
  }
  GridFunction u(grid);
  if (!grid.is_dirichlet() || opts.seed_profile == SeedProfile::constant_interior) {
    for (auto& v : u.values()) v = window.witness;
    return u;
  }
  const double ramp = opts.plateau_ramp_fraction * grid.diameter();
  for (std::size_t i = 0; i < grid.dof(); ++i) {
    u[i] = window.witness * std::min(1.0, grid.boundary_distance(i) / ramp);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Minimizer

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct Pair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

std::vector<double> lbfgs_direction(const std::vector<double>& g, const std::deque<Pair>& hist) {
  std::vector<double> q = g;
  std::vector<double> alpha(hist.size());
  for (std::size_t k = hist.size(); k-- > 0;) {
    alpha[k] = hist[k].rho * dot(hist[k].s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * hist[k].y[i];
  }
  const Pair& last = hist.back();
  const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
  for (double& v : q) v *= gamma;
  for (std::size_t k = 0; k < hist.size(); ++k) {
    const double beta = hist[k].rho * dot(hist[k].y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[k] - beta) * hist[k].s[i];
  }
  for (double& v : q) v = -v;
  return q;
}

}  // namespace

MinimizeResult minimize(const Functional& fn, const GridFunction& seed,
                        const MinimizeOptions& opts) {
  opts.validate();
  const Grid& grid = fn.grid();
  require_same_grid(grid, seed, "minimize");
  const double w = grid.node_weight();
  const std::size_t n = grid.dof();
  const auto& ls = opts.line_search;

  MinimizeResult out{seed, 0, 0.0, false, {}};
  GridFunction& u = out.solution;
  double energy = fn.energy(u);
  out.energy_history.push_back(energy);

  GridFunction r = fn.residual(u);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = w * r[i];
  out.grad_norm = norm(grid, r, Norm::l2);

  std::deque<Pair> hist;
  GridFunction d_fn(grid);
  GridFunction trial(grid);
  std::vector<double> slope0(n);

  while (out.grad_norm > opts.grad_tol) {
    if (out.iterations >= opts.max_iters) return out;

    std::vector<double> d;
    bool steepest = hist.empty();
    if (!steepest) {
      d = lbfgs_direction(g, hist);
      if (!(dot(g, d) < 0.0)) {
        hist.clear();
        steepest = true;
      }
    }
    if (steepest) {
      const double scale = ls.initial_step / max_abs(g);
      d.resize(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i] * scale;
    }

    std::copy(d.begin(), d.end(), d_fn.values().begin());
    const GridFunction Ad = neg_laplacian_apply(grid, d_fn);
    double curvature = 0.0;
    double directional = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      curvature += Ad[i] * d[i];
      directional += r[i] * d[i];
    }

    // E(u + a d) - E(u) = w [a <r, d> + a^2/2 <A d, d> + sum_i remainder_i(a)]
    double step = 1.0;
    double decrement = 0.0;
    bool accepted = false;
    for (int k = 0; k <= ls.max_halvings; ++k) {
      double rem = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = u[i] + step * d[i];
        rem += fn.potential_remainder(i, u[i], trial[i]);
      }
      decrement = w * (step * directional + 0.5 * step * step * curvature + rem);
      if (decrement <= ls.sufficient_decrease * step * w * directional) {
        accepted = true;
        break;
      }
      step *= ls.shrink;
    }
    if (!accepted) {
      if (!hist.empty()) {
        hist.clear();
        continue;
      }
      std::ostringstream os;
      os << "line search underflow after " << out.iterations << " iterations (residual "
         << out.grad_norm << ")";
      throw NumericError(os.str(), u.vector());
    }

    GridFunction r_new = fn.residual(trial);
    Pair p{std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      p.s[i] = trial[i] - u[i];
      p.y[i] = w * r_new[i] - g[i];
      g[i] = w * r_new[i];
    }
    const double sy = dot(p.s, p.y);
    if (sy > 1e-300 && opts.memory > 0) {
      p.rho = 1.0 / sy;
      hist.push_back(std::move(p));
      if (hist.size() > static_cast<std::size_t>(opts.memory)) hist.pop_front();
    }
    std::swap(u, trial);
    r = std::move(r_new);
    energy += decrement;
    out.energy_history.push_back(energy);
    out.grad_norm = norm(grid, r, Norm::l2);
    ++out.iterations;
  }
  out.converged = true;
  return out;
}

MinimizeResult minimize(const Grid& grid, const TruncatedNonlinearity& tr,
                        const MinimizeOptions& opts) {
  Functional fn(grid, tr);
  return minimize(fn, make_seed(grid, tr.window(), opts), opts);
}

// ---------------------------------------------------------------------------
// Certificates

std::vector<std::string> SolutionCertificate::failed_assertions() const {
  std::vector<std::string> failed;
  if (!converged) failed.push_back("converged");
  if (!(truncated_residual <= residual_tol)) failed.push_back("truncated_residual");
  if (policy.upper_asserted && !window_check.upper_ok) failed.push_back("window_upper");
  if (policy.lower_asserted && !window_check.lower_ok) failed.push_back("window_lower");
  if (policy.energy_asserted) {
    if (!energy_negative) failed.push_back("energy_negative");
    if (trial_energy && !(energy <= *trial_energy)) failed.push_back("energy_vs_trial");
  }
  return failed;
}

SolutionCertificate certify(const Functional& fn, const GridFunction& u,
                            const MinimizeOptions& opts, const CertifyPolicy& policy) {
  const auto& tr = fn.truncation();
  const Window& w = tr.window();
  SolutionCertificate c(u);
  c.problem = tr.problem();
  c.spec_name = tr.spec_name();
  c.window = w;
  c.policy = policy;
  c.energy = fn.energy(u);
  c.energy_negative = c.energy < 0.0;
  c.window_tol = opts.window_tol_factor * w.width();
  c.window_check = window_certificate(u, w.lo, w.hi, c.window_tol);
  c.truncated_residual = fn.residual_norm(u, true);
  c.original_residual = fn.residual_norm(u, false);
  c.residual_tol = opts.grad_tol;
  c.sup_norm = norm(fn.grid(), u, Norm::linf);
  c.nontrivial_tol = opts.nontrivial_tol_factor * std::max(1.0, std::abs(w.outer()));
  c.nontrivial = c.sup_norm > c.nontrivial_tol;
  c.converged = c.truncated_residual <= opts.grad_tol;
  return c;
}

SolutionCertificate solve_functional(const Functional& fn, const GridFunction& seed,
                                     const MinimizeOptions& opts, const CertifyPolicy& policy) {
  const MinimizeResult res = minimize(fn, seed, opts);
  SolutionCertificate c = certify(fn, res.solution, opts, policy);
  c.seed_energy = res.energy_history.front();
  c.iterations = res.iterations;
  c.converged = res.converged && c.converged;
  return c;
}

CertifyPolicy dirichlet_policy(const Window& window) {
  CertifyPolicy p;
  // Zero boundary data pins the near bound of the window only when that bound is on the far side of zero.
  if (window.sign == Sign::plus) {
    p.upper_asserted = true;
    p.lower_asserted = window.lo <= 0.0;
  } else {
    p.lower_asserted = true;
    p.upper_asserted = window.hi >= 0.0;
  }
  return p;
}

void require_window_hypotheses(const NonlinearitySpec& spec, const Grid& grid, int n, Sign sign) {
  const Window w = window_of(spec.ladder, n, sign);
  const TruncatedNonlinearity tr = truncate(spec, n, sign);
  for (std::size_t i = 0; i < grid.dof(); ++i) {
    const Point p = grid.node(i);
    for (double z : {w.lo, w.hi}) {
      const double v = spec.f(p, z);
      if (!(std::abs(v) <= spec.zero_tol)) {
        std::ostringstream os;
        os << spec.name << ": |f(x, " << z << ")| = " << std::abs(v) << " > zero_tol "
           << spec.zero_tol << " at x = (" << p.x << ", " << p.y << ")";
        throw HypothesisError(os.str());
      }
    }
    const double Fw = tr.antiderivative(p, w.witness);
    if (!(Fw > 0.0)) {
      std::ostringstream os;
      os << spec.name << ": truncated F at witness " << w.witness << " is " << Fw
         << " <= 0 at x = (" << p.x << ", " << p.y << ")";
      throw HypothesisError(os.str());
    }
  }
}

SolutionCertificate solve_window(const NonlinearitySpec& spec, const Grid& grid, int n, Sign sign,
                                 const MinimizeOptions& opts) {
  if (!grid.is_dirichlet()) throw UsageError("solve_window: needs a Dirichlet grid");
  opts.validate();
  require_window_hypotheses(spec, grid, n, sign);
  const TruncatedNonlinearity tr = truncate(spec, n, sign);
  const Functional fn(grid, tr);
  return solve_functional(fn, make_seed(grid, tr.window(), opts), opts,
                          dirichlet_policy(tr.window()));
}

std::vector<int> stride_two_schedule(int count) {
  if (count < 1) throw ConfigError("windows.count must be positive");
  std::vector<int> s(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) s[static_cast<std::size_t>(i)] = 2 * i;
  return s;
}

void validate_schedule(const std::vector<int>& schedule) {
  if (schedule.empty()) throw ConfigError("windows.schedule must not be empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 0) throw ConfigError("windows.schedule entries must be nonnegative");
    if (i > 0 && schedule[i] <= schedule[i - 1]) {
      throw ConfigError("windows.schedule must be strictly increasing");
    }
  }
}

std::vector<SolutionCertificate> ladder_walk(const NonlinearitySpec& spec, const Grid& grid,
                                             int count, Sign sign, const MinimizeOptions& opts,
                                             const std::vector<int>& schedule) {
  const std::vector<int> windows = schedule.empty() ? stride_two_schedule(count) : schedule;
  validate_schedule(windows);
  std::vector<SolutionCertificate> out;
  out.reserve(windows.size());
  for (int n : windows) out.push_back(solve_window(spec, grid, n, sign, opts));
  return out;
}

}  // namespace ladder
