#include "ladder/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ladder/errors.hpp"

namespace ladder {

double residual_norm(const Grid& grid, const ResidualEvaluator& f, const GridFunction& u) {
  require_same_grid(grid, u, "residual_norm");
  GridFunction r = neg_laplacian_apply(grid, u);
  const auto xi = node_gradient_magnitudes(grid, u);
  for (std::size_t i = 0; i < u.size(); ++i) r[i] -= f(grid.node(i), u[i], xi[i]);
  return norm(grid, r, Norm::l2);
}

WindowCheck window_certificate(const GridFunction& u, double lo, double hi, double window_tol) {
  if (!(lo < hi)) throw UsageError("window_certificate: need lo < hi");
  WindowCheck c;
  const auto vals = u.values();
  c.min_value = *std::min_element(vals.begin(), vals.end());
  c.max_value = *std::max_element(vals.begin(), vals.end());
  c.worst_low = std::max(0.0, lo - c.min_value);
  c.worst_high = std::max(0.0, c.max_value - hi);
  c.lower_ok = c.min_value >= lo - window_tol;
  c.upper_ok = c.max_value <= hi + window_tol;
  return c;
}

DistinctnessReport distinctness_report(const std::vector<SolutionCertificate>& certs) {
  if (certs.size() < 2) throw UsageError("distinctness_report: needs at least two certificates");
  const Grid& grid = certs.front().solution.grid();
  for (const auto& c : certs) require_same_grid(grid, c.solution, "distinctness_report");
  const std::size_t m = certs.size();
  DistinctnessReport rep;
  rep.linf_distance.assign(m, std::vector<double>(m, 0.0));
  rep.separated.assign(m, std::vector<bool>(m, false));
  rep.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double d = 0.0;
      const auto& a = certs[i].solution;
      const auto& b = certs[j].solution;
      for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
      rep.linf_distance[i][j] = rep.linf_distance[j][i] = d;
      const bool different_window = certs[i].window.n != certs[j].window.n ||
                                    certs[i].window.sign != certs[j].window.sign;
      const bool sep = different_window && certs[i].energy_negative && certs[j].energy_negative;
      rep.separated[i][j] = rep.separated[j][i] = sep;
      rep.min_distance = std::min(rep.min_distance, d);
      if (d == 0.0) rep.has_duplicates = true;
    }
  }
  double last = -1.0;
  for (const auto& c : certs) {
    if (!c.energy_negative) continue;
    if (!(c.sup_norm > last)) rep.sup_norms_increasing = false;
    last = c.sup_norm;
  }
  return rep;
}


// ---------------------------------------------------------------------------
// Shooting oracle

namespace {

struct State {
  double u = 0.0;
  double p = 0.0;
};

/// u' = p, p' = -f(x, u) on x_j = j h.
class Integrator {
 public:
  Integrator(const std::function<double(double, double)>& f, OracleIntegrator kind, double L,
             int steps)
      : f_(f), kind_(kind), h_(L / steps), steps_(steps) {}

  double h() const noexcept { return h_; }
  int steps() const noexcept { return steps_; }

  State step(int j, State s) const {
    const double x = j * h_;
    const double h = h_;
    if (kind_ == OracleIntegrator::stencil) {
      // Symplectic Euler: reproduces -(u_{j+1} - 2u_j + u_{j-1}) / h^2 = f(x_j, u_j).
      const double u1 = s.u + h * s.p;
      return {u1, s.p - h * f_(x + h, u1)};
    }
    const double k1u = s.p, k1p = -f_(x, s.u);
    const double k2u = s.p + 0.5 * h * k1p, k2p = -f_(x + 0.5 * h, s.u + 0.5 * h * k1u);
    const double k3u = s.p + 0.5 * h * k2p, k3p = -f_(x + 0.5 * h, s.u + 0.5 * h * k2u);
    const double k4u = s.p + h * k3p, k4p = -f_(x + h, s.u + h * k3u);
    return {s.u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
            s.p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)};
  }

  State flow(int j0, int j1, State s, std::vector<State>* path = nullptr) const {
    if (path) path->push_back(s);
    for (int j = j0; j < j1; ++j) {
      s = step(j, s);
      if (path) path->push_back(s);
    }
    return s;
  }

 private:
  const std::function<double(double, double)>& f_;
  OracleIntegrator kind_;
  double h_;
  int steps_;
};

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

struct Shot {
  double slope = 0.0;
  double miss = 0.0;
  int crossings = 0;  ///< interior sign changes of u
  int sign = 0;       ///< sign of the miss

  bool same_class(const Shot& o) const { return crossings == o.crossings && sign == o.sign; }
};

Shot shoot(const Integrator& integ, double slope, std::vector<State>* path = nullptr) {
  State s{0.0, slope};
  if (path) {
    path->clear();
    path->reserve(static_cast<std::size_t>(integ.steps()) + 1);
    path->push_back(s);
  }
  int crossings = 0;
  int last = 0;
  for (int j = 0; j < integ.steps(); ++j) {
    s = integ.step(j, s);
    if (path) path->push_back(s);
    if (j + 1 < integ.steps()) {
      const int sg = sign_of(s.u);
      if (sg != 0) {
        if (last != 0 && sg != last) ++crossings;
        last = sg;
      }
    }
  }
  Shot out;
  out.slope = slope;
  out.miss = std::isfinite(s.u) ? s.u : std::numeric_limits<double>::max();
  out.crossings = crossings;
  out.sign = sign_of(out.miss);
  return out;
}

OracleSolution from_path(double slope, double L, const std::vector<State>& path, double miss,
                         bool polished) {
  OracleSolution sol;
  sol.initial_slope = slope;
  sol.domain_length = L;
  sol.u.resize(path.size());
  sol.du.resize(path.size());
  for (std::size_t j = 0; j < path.size(); ++j) {
    sol.u[j] = path[j].u;
    sol.du[j] = path[j].p;
  }
  sol.boundary_miss = miss;
  sol.polished = polished;
  sol.min_value = *std::min_element(sol.u.begin(), sol.u.end());
  sol.max_value = *std::max_element(sol.u.begin(), sol.u.end());
  return sol;
}

/// Multiple shooting from the bracket [a, b] whose single-shooting miss
/// cannot be resolved in double precision. The seed follows the bracket
/// trajectory until the two sides part, holds that state and mirrors the
/// rising part onto the far end.
std::optional<OracleSolution> polish(const Integrator& integ, double L, double a, double b,
                                     const OracleOptions& opts) {
  const int S = integ.steps();
  std::vector<State> pa, pb;
  shoot(integ, a, &pa);
  shoot(integ, b, &pb);
  int jf = S;
  for (int j = 0; j <= S; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    if (std::abs(pa[idx].u - pb[idx].u) > 1e-6 * (1.0 + std::abs(pa[idx].u))) {
      jf = j;
      break;
    }
  }
  std::vector<State> seed(pa);
  if (jf < S) {
    jf = std::min(jf, S / 2);
    const State hold{pa[static_cast<std::size_t>(jf)].u, 0.0};
    for (int j = jf + 1; j <= S; ++j) {
      const auto idx = static_cast<std::size_t>(j);
      if (j >= S - jf) {
        const State m = pa[static_cast<std::size_t>(S - j)];
        seed[idx] = {m.u, -m.p};
      } else {
        seed[idx] = hold;
      }
    }
  }

  const double seg_len = opts.segment_length > 0.0 ? opts.segment_length : L / 200.0;
  const int per = std::max(1, static_cast<int>(std::lround(seg_len / integ.h())));
  std::vector<int> bounds;
  for (int j = 0; j < S; j += per) bounds.push_back(j);
  bounds.push_back(S);
  const int K = static_cast<int>(bounds.size()) - 1;
  const int dim = 2 * K - 1;

  Eigen::VectorXd z(dim);
  z[0] = seed[0].p;
  for (int k = 1; k < K; ++k) {
    const State& s = seed[static_cast<std::size_t>(bounds[static_cast<std::size_t>(k)])];
    z[2 * k - 1] = s.u;
    z[2 * k] = s.p;
  }
  auto start = [&](const Eigen::VectorXd& v, int k) {
    return k == 0 ? State{0.0, v[0]} : State{v[2 * k - 1], v[2 * k]};
  };
  auto seg_flow = [&](int k, State s) {
    return integ.flow(bounds[static_cast<std::size_t>(k)], bounds[static_cast<std::size_t>(k + 1)], s);
  };
  auto residual = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd r(dim);
    for (int k = 0; k < K; ++k) {
      const State e = seg_flow(k, start(v, k));
      if (k + 1 < K) {
        const State nx = start(v, k + 1);
        r[2 * k] = e.u - nx.u;
        r[2 * k + 1] = e.p - nx.p;
      } else {
        r[2 * k] = e.u;
      }
    }
    return r;
  };
  auto bad = [](const Eigen::VectorXd& r) {
    return !r.allFinite() ? std::numeric_limits<double>::infinity() : r.lpNorm<Eigen::Infinity>();
  };

  Eigen::VectorXd r = residual(z);
  for (int it = 0; it < opts.max_newton && bad(r) > opts.oracle_tol; ++it) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < K; ++k) {
      const State s0 = start(z, k);
      const int row = 2 * k;
      const int rows = k + 1 < K ? 2 : 1;
      // columns of the segment's own start state
      for (int c = (k == 0 ? 1 : 0); c < 2; ++c) {
        const double v = c == 0 ? s0.u : s0.p;
        const double d = 1e-6 * (1.0 + std::abs(v));
        State sp = s0, sm = s0;
        (c == 0 ? sp.u : sp.p) += d;
        (c == 0 ? sm.u : sm.p) -= d;
        const State ep = seg_flow(k, sp), em = seg_flow(k, sm);
        const int col = k == 0 ? 0 : 2 * k - 1 + c;
        J(row, col) = (ep.u - em.u) / (2 * d);
        if (rows == 2) J(row + 1, col) = (ep.p - em.p) / (2 * d);
      }
      if (k + 1 < K) {
        J(row, 2 * k + 1) -= 1.0;
        J(row + 1, 2 * k + 2) -= 1.0;
      }
    }
    const Eigen::VectorXd delta = J.partialPivLu().solve(-r);
    const double r0 = bad(r);
    double lambda = 1.0;
    bool moved = false;
    while (lambda > 1e-8) {
      const Eigen::VectorXd zt = z + lambda * delta;
      const Eigen::VectorXd rt = residual(zt);
      if (bad(rt) < r0) {
        z = zt;
        r = rt;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) break;
  }
  if (!(bad(r) <= opts.oracle_tol)) return std::nullopt;

  std::vector<State> path;
  path.reserve(static_cast<std::size_t>(S) + 1);
  for (int k = 0; k < K; ++k) {
    std::vector<State> seg;
    integ.flow(bounds[static_cast<std::size_t>(k)], bounds[static_cast<std::size_t>(k + 1)],
               start(z, k), &seg);
    path.insert(path.end(), seg.begin() + (k == 0 ? 0 : 1), seg.end());
  }
  return from_path(z[0], L, path, bad(r), true);
}

bool duplicate_of(const OracleSolution& a, const OracleSolution& b) {
  double scale = 1.0, d = 0.0;
  for (std::size_t j = 0; j < a.u.size(); ++j) {
    d = std::max(d, std::abs(a.u[j] - b.u[j]));
    scale = std::max(scale, std::abs(a.u[j]));
  }
  return d <= 1e-6 * scale;
}

}  // namespace

GridFunction OracleSolution::profile() const {
  const int steps = static_cast<int>(u.size()) - 1;
  const Grid fine = Grid::dirichlet_1d(0.0, domain_length, steps);
  return GridFunction(fine, std::vector<double>(u.begin() + 1, u.end() - 1));
}

std::vector<OracleSolution> shooting_oracle_1d(const std::function<double(double, double)>& f,
                                               double L, SlopeRange slopes,
                                               const std::vector<OracleWindow>& windows,
                                               const OracleOptions& opts) {
  if (!(L > 0.0)) throw UsageError("shooting_oracle_1d: domain length must be positive");
  if (!(slopes.lo < slopes.hi)) throw UsageError("shooting_oracle_1d: empty slope range");
  if (opts.steps < 4 || opts.slope_samples < 2) {
    throw UsageError("shooting_oracle_1d: need at least 4 steps and 2 slope samples");
  }
  const Integrator integ(f, opts.integrator, L, opts.steps);
  const int M = opts.slope_samples;
  std::vector<Shot> shots(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) {
    const double s = slopes.lo + (slopes.hi - slopes.lo) * k / (M - 1);
    shots[static_cast<std::size_t>(k)] = shoot(integ, s);
  }

  std::vector<OracleSolution> found;
  auto accept = [&](OracleSolution sol) {
    if (!(sol.boundary_miss <= opts.oracle_tol)) return;
    if (found.size() >= static_cast<std::size_t>(opts.max_solutions)) return;
    for (const auto& other : found) {
      if (duplicate_of(sol, other)) return;
    }
    found.push_back(std::move(sol));
  };
  auto accept_slope = [&](double s) {
    std::vector<State> path;
    const Shot sh = shoot(integ, s, &path);
    accept(from_path(s, L, path, std::abs(sh.miss), false));
  };

  for (std::size_t k = 0; k < shots.size(); ++k) {
    if (std::abs(shots[k].miss) <= opts.oracle_tol) accept_slope(shots[k].slope);
  }
  for (std::size_t k = 0; k + 1 < shots.size(); ++k) {
    Shot lo = shots[k], hi = shots[k + 1];
    if (std::abs(lo.miss) <= opts.oracle_tol || std::abs(hi.miss) <= opts.oracle_tol) continue;
    if (lo.same_class(hi)) continue;
    bool done = false;
    for (int it = 0; it < opts.max_bisections; ++it) {
      const double mid = 0.5 * (lo.slope + hi.slope);
      if (!(mid > lo.slope && mid < hi.slope)) break;
      const Shot m = shoot(integ, mid);
      if (std::abs(m.miss) <= opts.oracle_tol) {
        accept_slope(mid);
        done = true;
        break;
      }
      if (m.same_class(lo)) {
        lo = m;
      } else {
        hi = m;
      }
    }
    if (!done) {
      if (auto sol = polish(integ, L, lo.slope, hi.slope, opts)) accept(std::move(*sol));
    }
  }

  std::vector<OracleSolution> out;
  for (auto& sol : found) {
    for (std::size_t w = 0; w < windows.size(); ++w) {
      if (sol.max_value > windows[w].lo && sol.min_value < windows[w].hi) {
        sol.window_hit = static_cast<int>(w);
        break;
      }
    }
    if (windows.empty() || sol.window_hit) out.push_back(std::move(sol));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.initial_slope < b.initial_slope; });
  return out;
}

std::vector<std::pair<double, double>> miss_function(const std::function<double(double, double)>& f,
                                                    double L, SlopeRange slopes,
                                                    const OracleOptions& opts) {
  const Integrator integ(f, opts.integrator, L, opts.steps);
  std::vector<std::pair<double, double>> out;
  const int M = std::max(opts.slope_samples, 2);
  for (int k = 0; k < M; ++k) {
    const double s = slopes.lo + (slopes.hi - slopes.lo) * k / (M - 1);
    out.emplace_back(s, shoot(integ, s).miss);
  }
  return out;
}

GridFunction restrict_to_grid(const OracleSolution& sol, const Grid& grid) {
  if (grid.kind() != GridKind::dirichlet_1d) {
    throw UsageError("restrict_to_grid: needs a 1D Dirichlet grid");
  }
  if (std::abs(grid.length_x() - sol.domain_length) > 1e-12 * sol.domain_length) {
    throw UsageError("restrict_to_grid: grid and oracle domains differ");
  }
  const int S = static_cast<int>(sol.u.size()) - 1;
  const double hf = sol.domain_length / S;
  GridFunction out(grid);
  for (std::size_t i = 0; i < grid.dof(); ++i) {
    const double t = (grid.node(i).x - grid.x_lo()) / hf;
    const int j = std::clamp(static_cast<int>(std::floor(t)), 0, S - 1);
    const double th = t - j;
    const auto a = static_cast<std::size_t>(j);
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    const double h10 = th * (1 - th) * (1 - th);
    const double h01 = th * th * (3 - 2 * th);
    const double h11 = th * th * (th - 1);
    out[i] = h00 * sol.u[a] + h10 * hf * sol.du[a] + h01 * sol.u[a + 1] + h11 * hf * sol.du[a + 1];
  }
  return out;
}

double fd_gradient_check(const Functional& fn, const GridFunction& u, double step, int directions,
                         std::uint64_t seed) {
  const Grid& grid = fn.grid();
  require_same_grid(grid, u, "fd_gradient_check");
  const GridFunction g = fn.gradient(u);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  GridFunction v(grid), up(grid), um(grid);
  for (int k = 0; k < directions; ++k) {
    double len = 0.0;
    for (auto& x : v.values()) {
      x = normal(rng);
      len += x * x;
    }
    len = std::sqrt(len);
    double exact = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] /= len;
      exact += g[i] * v[i];
      up[i] = u[i] + step * v[i];
      um[i] = u[i] - step * v[i];
    }
    const double fd = (fn.energy(up) - fn.energy(um)) / (2.0 * step);
    const double scale = std::max({std::abs(exact), std::abs(fd), 1e-300});
    worst = std::max(worst, std::abs(fd - exact) / scale);
  }
  return worst;
}

double fd_gradient_check(const Grid& grid, const TruncatedNonlinearity& tr, const GridFunction& u,
                         double step, int directions, std::uint64_t seed) {
  return fd_gradient_check(Functional(grid, tr), u, step, directions, seed);
}

}  // namespace ladder
