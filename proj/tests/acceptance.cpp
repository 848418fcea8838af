// Acceptance runs. One PASS/FAIL line per criterion, diagnostics indented below it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ladder/config.hpp"
#include "ladder/convection.hpp"
#include "ladder/errors.hpp"
#include "ladder/hamiltonian.hpp"
#include "ladder/run.hpp"
#include "ladder/variational.hpp"
#include "ladder/verify.hpp"

using namespace ladder;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void info(const std::string& what) { notes.push_back("info " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string window_label(const Window& w) {
  std::ostringstream os;
  os << "n=" << w.n << " " << to_string(w.sign);
  return os.str();
}

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("threw: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(secs < budget_s, fmt("runtime %.2f s < %.0f s", secs, budget_s));
  if (!o.passed) ++failures;
  std::printf("%s criterion %d: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", id, title.c_str(), secs);
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

const char* kSineLadder = R"(
problem: elliptic
spec:
  builtin: sine-elliptic
  params: {a: 50}
grid:
  kind: dirichlet-1d
  x_lo: 0
  x_hi: 20
  cells_x: 2048
windows: {count: 3}
sign: both
)";

const char* kSine2d = R"(
problem: elliptic
spec:
  builtin: sine-elliptic
  params: {a: 50}
grid:
  kind: dirichlet-2d
  x_hi: 20
  y_hi: 20
  cells_x: 256
  cells_y: 256
windows: {count: 2}
sign: plus
)";

const char* kConvection = R"(
problem: convection
spec:
  builtin: tanh-convection
  params: {a: 0.3, b: 0.1}
grid:
  kind: dirichlet-1d
  x_hi: 1
  cells_x: 1024
windows: {count: 1}
sign: both
)";

// The far window bound: hi for plus windows, lo for minus windows.
bool far_bound_certified(const SolutionCertificate& c) {
  return c.window.sign == Sign::plus ? c.policy.upper_asserted && c.window_upper_ok()
                                     : c.policy.lower_asserted && c.window_lower_ok();
}

void hypotheses_of_builtins(Outcome& o) {
  const auto show = [&](const HypothesisReport& r) {
    for (const auto& c : r.checks) {
      o.require(c.passed, r.spec_name + " " + c.name + fmt(" (worst violation %.3g)", c.worst_violation));
    }
  };
  show(validate_hypotheses(load_sine_elliptic({{"a", 50.0}}), Grid::dirichlet_1d(0.0, 20.0, 2048)));
  show(validate_hypotheses(load_tanh_convection({{"a", 0.3}, {"b", 0.1}}), Grid::dirichlet_1d(0.0, 1.0, 1024)));
  const HamiltonianSpec h = load_sinusoidal_hamiltonian({{"a", 250.0}});
  show(validate_hypotheses(h, Grid::periodic_1d(1, 1.0, 256)));
  o.require(h.b1 == 0.4 && h.b2 == 1.6, fmt("K bounds b1 = %.17g, b2 = %.17g", h.b1, h.b2));
}

void sine_ladder(Outcome& o) {
  const RunConfig c = parse_config_string(kSineLadder);
  const RunReport r = run(c, {Command::oracle, 1});
  o.require(r.certificates.size() == 6, "6 certificates, got " + std::to_string(r.certificates.size()));
  for (const auto& cert : r.certificates) {
    const std::string w = window_label(cert.window);
    o.require(cert.energy < 0.0, w + fmt(" energy %.10g < 0", cert.energy));
    o.require(cert.truncated_residual <= 1e-8, w + fmt(" truncated residual %.3g <= 1e-8", cert.truncated_residual));
    o.require(far_bound_certified(cert), w + " far window bound asserted and held");
    o.require(cert.passed(), w + " certificate passes");
  }
  o.require(r.distinctness.size() == 2, "distinctness for both signs");
  for (const auto& d : r.distinctness) {
    const std::string s = to_string(d.sign);
    o.require(d.report.sup_norms_increasing, s + " sup-norms strictly increasing");
    o.require(d.report.min_distance >= 2 * pi - 0.01, s + fmt(" min pairwise distance %.10g >= 2pi - 0.01", d.report.min_distance));
  }
  for (const auto& m : r.oracle) {
    if (m.sign != Sign::plus) continue;
    o.require(m.matched, "rk4 oracle n=" + std::to_string(m.n) + ": " + std::to_string(m.solutions.size()) +
                             fmt(" solutions, best distance %.3g <= %.0e", m.best_distance, m.match_tol));
  }

  // Diagnostic: the same shooting problem integrated with the solver's own stencil.
  RunConfig s = c;
  s.oracle.integrator = OracleIntegrator::stencil;
  s.oracle.steps = c.grid.cells_x;
  const RunReport rs = run(s, {Command::oracle, 1});
  for (const auto& m : rs.oracle) {
    if (m.sign != Sign::plus) continue;
    o.info("stencil oracle n=" + std::to_string(m.n) + fmt(": best distance %.3g", m.best_distance));
  }
}

void sine_2d(Outcome& o) {
  const RunReport r = run(parse_config_string(kSine2d));
  o.require(r.certificates.size() == 2, "2 certificates, got " + std::to_string(r.certificates.size()));
  for (const auto& cert : r.certificates) {
    const std::string w = window_label(cert.window);
    o.require(cert.energy < 0.0, w + fmt(" energy %.10g < 0", cert.energy));
    o.require(far_bound_certified(cert), w + " upper window bound asserted and held");
    o.require(cert.passed(), w + fmt(" certificate passes (sup %.10g)", cert.sup_norm));
  }
  o.require(r.distinctness.size() == 1, "distinctness reported");
  for (const auto& d : r.distinctness) {
    o.require(d.report.min_distance >= 2 * pi - 0.05, fmt("separation %.10g >= 2pi - 0.05", d.report.min_distance));
  }
}

GridFunction random_in(const Grid& g, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(lo, hi);
  GridFunction u(g);
  for (std::size_t i = 0; i < g.dof(); ++i) u[i] = d(rng);
  return u;
}

void gradient_checks(Outcome& o) {
  std::mt19937_64 rng(2024);
  const Grid line = Grid::dirichlet_1d(0.0, 20.0, 200);
  const Grid unit = Grid::dirichlet_1d(0.0, 1.0, 200);
  const Grid ring = Grid::periodic_1d(1, 1.0, 128);
  const NonlinearitySpec sine = load_sine_elliptic({{"a", 50.0}});
  const ConvectionSpec conv = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
  const HamiltonianSpec ham = load_sinusoidal_hamiltonian({{"a", 250.0}});

  struct Case {
    std::string name;
    Functional fn;
  };
  std::vector<Case> cases;
  for (int n : {0, 2}) {
    cases.push_back({"sine-elliptic n=" + std::to_string(n), Functional(line, truncate(sine, n, Sign::plus))});
    std::vector<Xi> xi(unit.dof());
    std::uniform_real_distribution<double> dx(-3.0, 3.0);
    for (auto& v : xi) v = {dx(rng), 0.0};
    cases.push_back({"tanh-convection n=" + std::to_string(n), Functional(unit, truncate(conv, n, Sign::plus), xi)});
    cases.push_back({"sinusoidal-hamiltonian n=" + std::to_string(n), Functional(ring, truncate(ham, n, Sign::plus))});
  }

  for (const auto& c : cases) {
    const Window& w = c.fn.truncation().window();
    const Grid& g = c.fn.grid();
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const GridFunction u = random_in(g, w.lo - 0.5 * w.width(), w.hi + 0.5 * w.width(), rng);
      // cbrt(eps) balances truncation against roundoff for central differences.
      const double step = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + norm(g, u, Norm::linf));
      worst = std::max(worst, fd_gradient_check(c.fn, u, step, 20, static_cast<std::uint64_t>(k)));
    }
    o.require(worst <= 1e-5, c.name + fmt(" random points: worst relative error %.3g <= 1e-5", worst));

    // A third of the nodes sit exactly on a truncation kink.
    double kink = 0.0;
    for (int k = 0; k < 5; ++k) {
      GridFunction u = random_in(g, w.lo, w.hi, rng);
      for (std::size_t i = 0; i < g.dof(); i += 3) u[i] = (i % 2 == 0) ? w.lo : w.hi;
      const double step = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + norm(g, u, Norm::linf));
      kink = std::max(kink, fd_gradient_check(c.fn, u, step, 20, static_cast<std::uint64_t>(100 + k)));
    }
    o.require(kink <= 1e-3, c.name + fmt(" kink points: worst relative error %.3g <= 1e-3", kink));
  }
}

void contraction(Outcome& o) {
  const ConvectionSpec spec = load_tanh_convection({{"a", 0.3}, {"b", 0.1}});
  const Grid g = Grid::dirichlet_1d(0.0, 1.0, 1024);
  const double k = contraction_bound(spec, g);

  // Independent arithmetic: L1 = pi (a + b), L2 = b.
  const double L1 = pi * 0.4, L2 = 0.1;
  const double h = g.hx();
  const double lambda_h = 4.0 / (h * h) * std::pow(std::sin(pi * h / 2.0), 2);
  const double k_discrete = (L2 / std::sqrt(lambda_h)) / (1.0 - L1 / lambda_h);
  const double k_continuum = (L2 / pi) / (1.0 - L1 / (pi * pi));
  o.require(std::abs(k - k_discrete) <= 1e-12 * k_discrete, fmt("k = %.15g from the discrete lambda1 (%.15g)", k, k_discrete));
  o.require(std::abs(k - 0.0365) <= 0.01 * 0.0365, fmt("k within 1%% of 0.0365 (continuum formula gives %.6g)", k_continuum));

  for (Sign sign : {Sign::plus, Sign::minus}) {
    const auto [cert, trace] = picard_iterate(spec, g, 0, sign);
    const std::string s = to_string(sign);
    o.require(trace.converged, s + " picard converged in " + std::to_string(trace.iterations) + " iterations");
    o.require(cert.passed(), s + " certificate passes");
    bool within = true;
    for (double r : trace.ratios) within = within && r <= k + 1e-6;
    std::ostringstream ratios;
    for (double r : trace.ratios) ratios << " " << r;
    o.require(within, s + " every ratio <= k + 1e-6:" + ratios.str());
    bool geometric = true;
    for (std::size_t m = 0; m < trace.increments.size(); ++m) {
      geometric = geometric && trace.increments[m] <= trace.increments[0] * std::pow(k + 1e-6, static_cast<double>(m));
    }
    o.require(geometric, s + " increments decay at least geometrically with ratio k");
  }
}

void degenerate_convection(Outcome& o) {
  const ConvectionSpec spec = load_tanh_convection({{"a", 0.3}, {"b", 0.0}}, true);
  const NonlinearitySpec slice = zero_gradient_slice(spec);
  const Grid g = Grid::dirichlet_1d(0.0, 20.0, 512);
  for (Sign sign : {Sign::plus, Sign::minus}) {
    const auto conv = ladder_walk_convection(spec, g, 2, sign);
    const auto var = ladder_walk(slice, g, 2, sign);
    o.require(conv.size() == var.size() && conv.size() == 2, to_string(sign) + " both walks produce 2 certificates");
    for (std::size_t i = 0; i < std::min(conv.size(), var.size()); ++i) {
      const bool same = conv[i].solution == var[i].solution && conv[i].energy == var[i].energy;
      o.require(same, window_label(var[i].window) + fmt(" bitwise identical (sup %.10g, energy %.10g)",
                                                        var[i].sup_norm, var[i].energy));
    }
  }
}

void gate(Outcome& o) {
  const HamiltonianSpec s250 = load_sinusoidal_hamiltonian({{"a", 250.0}});
  for (int n : {0, 1, 2}) {
    const AlphaGate g = alpha_threshold(s250, n);
    const double closed = 2.0 * 250.0 / std::pow((4 * n + 1) * pi, 2);
    o.require(std::abs(g.alpha - closed) <= 1e-9 * closed,
              "n=" + std::to_string(n) + fmt(": alpha %.15g vs closed form %.15g", g.alpha, closed));
  }
  const AlphaGate accept = alpha_threshold(s250, 1);
  const AlphaGate reject = alpha_threshold(load_sinusoidal_hamiltonian({{"a", 150.0}}), 1);
  o.require(accept.b2 == 1.6 && reject.b2 == 1.6, "b2 = 8/5");
  o.require(accept.passed, "a = 250 accepted: " + accept.inequality);
  o.require(!reject.passed, "a = 150 rejected: " + reject.inequality);
}

void families(Outcome& o) {
  const HamiltonianSpec spec = load_sinusoidal_hamiltonian({{"a", 250.0}});
  const HamiltonianFamily fam = family_solve(spec, 1, 2);
  o.require(fam.positive.size() == 2 && fam.negative.size() == 2, "2 positive + 2 negative certificates");
  std::vector<SolutionCertificate> all = fam.positive;
  all.insert(all.end(), fam.negative.begin(), fam.negative.end());
  for (const auto& c : all) {
    const std::string w = window_label(c.window);
    o.require(c.policy.lower_asserted && c.policy.upper_asserted && c.window_lower_ok() && c.window_upper_ok(),
              w + fmt(" both window bounds asserted and held (range [%.6g, %.6g])", c.window_check.min_value,
                      c.window_check.max_value));
    o.require(c.energy < 0.0, w + fmt(" energy %.10g < 0", c.energy));
    o.require(c.trial_energy && c.energy <= *c.trial_energy,
              w + fmt(" energy <= constant-witness trial energy %.10g", c.trial_energy.value_or(NAN)));
    o.require(c.passed(), w + " certificate passes");
  }
}

// max |K_u - F_u| over [0, T] x [-M, M], sampled independently of the library.
double sampled_derivative_bound(const HamiltonianSpec& s, double M) {
  double c = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = s.period * i / 2000.0;
    for (int j = 0; j <= 4000; ++j) {
      const double u = -M + 2.0 * M * j / 4000.0;
      c = std::max(c, std::abs(s.K_u(t, u) - s.F_u(t, u)));
    }
  }
  return c;
}

void limit(Outcome& o) {
  const HamiltonianSpec spec = load_sinusoidal_hamiltonian({{"a", 250.0}});
  PeriodicOptions popts;
  popts.cells_per_period = 256;
  const ConvergenceReport r = limit_study(spec, 0, {1, 2, 3, 4}, -1.0, 1.0, popts);
  const double c = sampled_derivative_bound(spec, 2 * pi);
  o.info(fmt("c = %.10g (sampled), %.10g (library)", c, r.derivative_bound_c));
  o.require(r.members.size() == 2, "one member per sign");
  for (const auto& m : r.members) {
    const std::string s = to_string(m.sign);
    o.require(m.stable && m.k_list.size() == 4, s + " stable across k = 1..4 " + m.instability);
    for (std::size_t i = 0; i < m.certificates.size(); ++i) {
      const std::string k = s + " k=" + std::to_string(m.k_list[i]);
      o.require(m.sup_norms[i] <= 2 * pi + m.certificates[i].window_tol, k + fmt(" sup %.10g <= 2pi", m.sup_norms[i]));
      o.require(m.max_ddu[i] <= 1.05 * c, k + fmt(" max|u''| %.8g <= 1.05 c = %.8g", m.max_ddu[i], 1.05 * c));
      o.require(m.certificates[i].passed(), k + " certificate passes");
    }
    if (m.c1_distances.size() == 3) {
      o.require(m.c1_distances[2] <= m.c1_distances[1],
                s + fmt(" C1 distance k=3->4 %.3g <= k=2->3 %.3g", m.c1_distances[2], m.c1_distances[1]));
      o.info(s + fmt(" C1 distance k=1->2 %.3g", m.c1_distances[0]));
    } else {
      o.require(false, s + " three consecutive C1 distances");
    }
    o.require(m.integral_identity_discrepancy <= 1e-3,
              s + fmt(" integral identity discrepancy %.3g <= 1e-3", m.integral_identity_discrepancy));
    o.require(m.limit_residual <= 1e-3, s + fmt(" limit residual %.3g <= 1e-3", m.limit_residual));
  }
}

// u*(x, y) = sin(pi x) sin(2 pi y) e^x on the unit square.
double u2(double x, double y) { return std::sin(pi * x) * std::sin(2 * pi * y) * std::exp(x); }
double f2(double x, double y) {
  // -Laplacian of u*: e^x sin(2 pi y) [(5 pi^2 - 1) sin(pi x) - 2 pi cos(pi x)].
  return std::exp(x) * std::sin(2 * pi * y) * ((5 * pi * pi - 1.0) * std::sin(pi * x) - 2 * pi * std::cos(pi * x));
}

void orders(Outcome& o) {
  const auto report = [&](const std::string& what, const std::vector<double>& errs) {
    for (std::size_t i = 1; i < errs.size(); ++i) {
      const double p = std::log2(errs[i - 1] / errs[i]);
      o.require(p >= 1.9, what + fmt(" observed order %.4f (error %.3g)", p, errs[i]));
    }
  };

  std::vector<double> r1, r2, l1, l2;
  for (int cells : {32, 64, 128}) {
    const Grid g = Grid::dirichlet_1d(0.0, 1.0, cells);
    GridFunction u(g);
    for (std::size_t i = 0; i < g.dof(); ++i) {
      const double x = g.node(i).x;
      u[i] = x * (1.0 - x) * std::exp(x);
    }
    r1.push_back(residual_norm(g, [](Point p, double, const Xi&) { return (p.x * p.x + 3.0 * p.x) * std::exp(p.x); }, u));
    l1.push_back(std::abs(first_eigenvalue(g) - pi * pi));

    const Grid sq = Grid::dirichlet_2d(0.0, 1.0, 0.0, 1.0, cells, cells);
    GridFunction v(sq);
    for (std::size_t i = 0; i < sq.dof(); ++i) v[i] = u2(sq.node(i).x, sq.node(i).y);
    r2.push_back(residual_norm(sq, [](Point p, double, const Xi&) { return f2(p.x, p.y); }, v));
    l2.push_back(std::abs(first_eigenvalue(sq) - 2 * pi * pi));
  }
  report("1D manufactured residual", r1);
  report("1D lambda1", l1);
  report("2D manufactured residual", r2);
  report("2D lambda1", l2);
}

void determinism(Outcome& o) {
  const RunConfig sine = parse_config_string(kSineLadder);
  const std::string a = report_json(run(sine), false);
  const std::string b = report_json(run(sine), false);
  o.require(a == b, "sine ladder report repeated: byte-identical (" + std::to_string(a.size()) + " bytes)");

  const RunConfig conv = parse_config_string(kConvection);
  const std::string c = report_json(run(conv), false);
  const std::string d = report_json(run(conv), false);
  o.require(c == d, "convection report repeated: byte-identical (" + std::to_string(c.size()) + " bytes)");

  const HamiltonianSpec spec = load_sinusoidal_hamiltonian({{"a", 250.0}});
  const auto e = family_solve(spec, 1, 1);
  const auto f = family_solve(spec, 1, 1);
  bool same = e.positive.size() == f.positive.size() && e.negative.size() == f.negative.size();
  for (std::size_t i = 0; same && i < e.positive.size(); ++i) {
    same = e.positive[i].solution == f.positive[i].solution && e.negative[i].solution == f.negative[i].solution &&
           e.positive[i].energy == f.positive[i].energy && e.negative[i].energy == f.negative[i].energy;
  }
  o.require(same, "hamiltonian family repeated: identical solutions and energies");
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number; all run by default.
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int ran = 0;
  const auto maybe = [&](int id, const std::string& title, double budget_s, void (*body)(Outcome&)) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), id) == selected.end()) return;
    ++ran;
    criterion(id, title, budget_s, body);
  };
  maybe(1, "hypotheses of the builtin examples", 5, hypotheses_of_builtins);
  maybe(2, "sine ladder, 1D, both signs, shooting oracle", 120, sine_ladder);
  maybe(3, "sine ladder, 2D", 300, sine_2d);
  maybe(4, "gradient checks", 30, gradient_checks);
  maybe(5, "convection contraction", 60, contraction);
  maybe(6, "gradient-free convection equals the variational walk", 60, degenerate_convection);
  maybe(7, "coercivity gate", 1, gate);
  maybe(8, "periodic families", 120, families);
  maybe(9, "limit study over k", 300, limit);
  maybe(10, "discretization orders", 60, orders);
  maybe(11, "determinism", 600, determinism);
  std::printf("%d of %d criteria failed\n", failures, ran);
  return failures == 0 ? 0 : 1;
}
