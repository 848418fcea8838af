#include "ladder/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "ladder/errors.hpp"

namespace ladder {

std::string to_string(Sign sign) { return sign == Sign::plus ? "plus" : "minus"; }

Sign sign_from_string(const std::string& name) {
  if (name == "plus") return Sign::plus;
  if (name == "minus") return Sign::minus;
  throw ConfigError("unknown sign '" + name + "' (expected plus or minus)");
}

std::string to_string(ProblemClass problem) {
  switch (problem) {
    case ProblemClass::elliptic: return "elliptic";
    case ProblemClass::convection: return "convection";
    case ProblemClass::hamiltonian: return "hamiltonian";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// ZeroLadder

ZeroLadder::ZeroLadder(std::vector<double> mu, std::vector<double> eta, std::vector<double> beta,
                       std::vector<double> gamma)
    : mu_(std::move(mu)), eta_(std::move(eta)), beta_(std::move(beta)), gamma_(std::move(gamma)) {}

ZeroLadder ZeroLadder::from_rules(SequenceRule mu, SequenceRule eta, SequenceRule beta,
                                  SequenceRule gamma) {
  ZeroLadder l;
  l.mu_rule_ = std::move(mu);
  l.eta_rule_ = std::move(eta);
  l.beta_rule_ = std::move(beta);
  l.gamma_rule_ = std::move(gamma);
  return l;
}

namespace {

double ladder_entry(const std::vector<double>& prefix, const SequenceRule& rule, std::size_t n,
                    const char* name) {
  if (n < prefix.size()) return prefix[n];
  if (rule) return rule(n);
  std::ostringstream os;
  os << "ladder too short: " << name << "_" << n << " requested but only " << prefix.size()
     << " entries given";
  throw ConfigError(os.str());
}

}  // namespace

double ZeroLadder::mu(std::size_t n) const { return ladder_entry(mu_, mu_rule_, n, "mu"); }
double ZeroLadder::eta(std::size_t n) const { return ladder_entry(eta_, eta_rule_, n, "eta"); }
double ZeroLadder::beta(std::size_t n) const { return ladder_entry(beta_, beta_rule_, n, "beta"); }
double ZeroLadder::gamma(std::size_t n) const {
  return ladder_entry(gamma_, gamma_rule_, n, "gamma");
}

std::size_t ZeroLadder::available_windows() const noexcept {
  if (has_rules()) return std::numeric_limits<std::size_t>::max();
  const std::size_t zeros = std::min(mu_.size(), eta_.size());
  const std::size_t witnesses = std::min(beta_.size(), gamma_.size());
  return std::min(zeros == 0 ? 0 : zeros - 1, witnesses);
}

bool HypothesisReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const HypothesisCheck* HypothesisReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Truncation

Window window_of(const ZeroLadder& ladder, int n, Sign sign) {
  if (n < 0) throw ConfigError("window index must be nonnegative");
  const auto idx = static_cast<std::size_t>(n);
  Window w;
  w.n = n;
  w.sign = sign;
  if (sign == Sign::plus) {
    w.lo = ladder.mu(idx);
    w.hi = ladder.mu(idx + 1);
    w.witness = ladder.beta(idx);
  } else {
    w.lo = ladder.eta(idx + 1);
    w.hi = ladder.eta(idx);
    w.witness = ladder.gamma(idx);
  }
  if (!(w.lo < w.hi)) {
    std::ostringstream os;
    os << "window " << n << " (" << to_string(sign) << ") is empty: (" << w.lo << ", " << w.hi
       << ")";
    throw ConfigError(os.str());
  }
  return w;
}

TruncatedNonlinearity::TruncatedNonlinearity(ProblemClass problem, std::string spec_name,
                                             Window window, Evaluator f, Evaluator F)
    : problem_(problem),
      spec_name_(std::move(spec_name)),
      window_(window),
      f_(std::move(f)),
      F_(std::move(F)) {
  if (!f_) throw ConfigError("truncate: spec has no evaluator for f");
}

double TruncatedNonlinearity::value(Point p, double t, const Xi& xi) const {
  if (t <= window_.lo || t >= window_.hi) return 0.0;
  return f_(p, t, xi);
}

double TruncatedNonlinearity::antiderivative(Point p, double u, const Xi& xi) const {
  const double lo = window_.lo;
  const double hi = window_.hi;
  if (window_.sign == Sign::plus) {
    if (u <= lo) return 0.0;
    const double top = std::min(u, hi);
    if (F_) return F_(p, top, xi) - F_(p, lo, xi);
    return adaptive_simpson([&](double s) { return f_(p, s, xi); }, lo, top);
  }
  if (u >= hi) return 0.0;
  const double bottom = std::max(u, lo);
  if (F_) return F_(p, bottom, xi) - F_(p, hi, xi);
  return -adaptive_simpson([&](double s) { return f_(p, s, xi); }, bottom, hi);
}

void TruncatedNonlinearity::set_quadratic(std::function<double(double, double)> K,
                                          std::function<double(double, double)> K_u) {
  K_ = std::move(K);
  K_u_ = std::move(K_u);
}

std::vector<double> TruncatedNonlinearity::kinks() const {
  std::vector<double> k{window_.lo, window_.hi};
  if (has_quadratic()) k.push_back(0.0);
  std::sort(k.begin(), k.end());
  return k;
}

TruncatedNonlinearity truncate(const NonlinearitySpec& spec, int n, Sign sign) {
  TruncatedNonlinearity::Evaluator f = [g = spec.f](Point p, double t, const Xi&) {
    return g(p, t);
  };
  TruncatedNonlinearity::Evaluator F;
  if (spec.F) F = [G = spec.F](Point p, double t, const Xi&) { return G(p, t); };
  return TruncatedNonlinearity(ProblemClass::elliptic, spec.name, window_of(spec.ladder, n, sign),
                               std::move(f), std::move(F));
}

TruncatedNonlinearity truncate(const ConvectionSpec& spec, int n, Sign sign) {
  return TruncatedNonlinearity(ProblemClass::convection, spec.name,
                               window_of(spec.ladder, n, sign), spec.f, spec.F);
}

TruncatedNonlinearity truncate(const HamiltonianSpec& spec, int n, Sign sign) {
  TruncatedNonlinearity::Evaluator f = [g = spec.F_u](Point p, double u, const Xi&) {
    return g(p.x, u);
  };
  TruncatedNonlinearity::Evaluator F = [G = spec.F](Point p, double u, const Xi&) {
    return G(p.x, u);
  };
  TruncatedNonlinearity tr(ProblemClass::hamiltonian, spec.name, window_of(spec.ladder, n, sign),
                           std::move(f), std::move(F));
  tr.set_quadratic(spec.K, spec.K_u);
  return tr;
}

double truncated_antiderivative(const TruncatedNonlinearity& tr, Point p, double u, const Xi& xi) {
  return tr.antiderivative(p, u, xi);
}

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& g, double a, double b, double fa,
                       double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                        std::max(1.0, std::abs(m))) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) throw NumericError("adaptive quadrature did not converge");
  return simpson_recurse(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double fa = g(a);
  const double fb = g(b);
  const double fm = g(0.5 * (a + b));
  return simpson_recurse(g, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), abs_tol, max_depth);
}

// ---------------------------------------------------------------------------
// Hypothesis spot-checks

namespace {

/// Tracks the worst violation of an inequality `lhs <= rhs` style check.
class CheckBuilder {
 public:
  CheckBuilder(std::string name, std::string hypothesis) {
    check_.name = std::move(name);
    check_.hypothesis = std::move(hypothesis);
  }

  /// Records violation magnitude v (>0 means failed) at a location.
  void record(double v, const std::string& where) {
    if (!std::isfinite(v)) v = std::numeric_limits<double>::infinity();
    if (v > check_.worst_violation || !seen_) {
      if (v > check_.worst_violation || check_.location.empty()) {
        check_.worst_violation = std::max(check_.worst_violation, v);
        if (v > 0.0 || check_.location.empty()) check_.location = where;
      }
    }
    seen_ = true;
    if (v > 0.0) check_.passed = false;
  }

  HypothesisCheck done(std::string detail = {}) {
    check_.detail = std::move(detail);
    return check_;
  }

 private:
  HypothesisCheck check_;
  bool seen_ = false;
};

std::string at(const char* label, double v) {
  std::ostringstream os;
  os.precision(10);
  os << label << "=" << v;
  return os.str();
}

std::string at2(const char* l1, double v1, const char* l2, double v2) {
  return at(l1, v1) + ", " + at(l2, v2);
}

std::size_t windows_to_check(const ZeroLadder& ladder, int depth) {
  return std::min<std::size_t>(ladder.available_windows(), static_cast<std::size_t>(depth));
}

void ladder_checks(const ZeroLadder& ladder, std::size_t windows, const std::string& hyp,
                   std::vector<HypothesisCheck>& out) {
  CheckBuilder mono("ladder-monotone", hyp);
  CheckBuilder wit("witness-in-window", hyp);
  if (windows == 0) {
    mono.record(1.0, "ladder provides no complete window");
  } else {
    mono.record(-ladder.mu(0), "mu_0");
    mono.record(ladder.eta(0), "eta_0");
    for (std::size_t n = 0; n < windows; ++n) {
      const double mu0 = ladder.mu(n), mu1 = ladder.mu(n + 1);
      const double e0 = ladder.eta(n), e1 = ladder.eta(n + 1);
      mono.record(mu0 >= mu1 ? mu0 - mu1 + std::abs(mu0) * 1e-16 + 1e-300 : 0.0,
                  at("mu index", static_cast<double>(n)));
      mono.record(e1 >= e0 ? e1 - e0 + std::abs(e0) * 1e-16 + 1e-300 : 0.0,
                  at("eta index", static_cast<double>(n)));
      const double b = ladder.beta(n), g = ladder.gamma(n);
      const double vb = std::max(mu0 - b, b - mu1);
      const double vg = std::max(e1 - g, g - e0);
      wit.record(vb >= 0 ? vb + 1e-300 : 0.0, at("beta index", static_cast<double>(n)));
      wit.record(vg >= 0 ? vg + 1e-300 : 0.0, at("gamma index", static_cast<double>(n)));
    }
  }
  out.push_back(mono.done("mu strictly increasing from mu_0 >= 0; eta strictly decreasing from "
                          "eta_0 <= 0"));
  out.push_back(wit.done("beta_n in (mu_n, mu_{n+1}), gamma_n in (eta_{n+1}, eta_n)"));
}

std::vector<Point> sample_nodes(const Grid& grid, int samples) {
  std::vector<Point> pts;
  const std::size_t n = grid.dof();
  const std::size_t count = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(samples, 1)));
  for (std::size_t j = 0; j < count; ++j) {
    const std::size_t i = count == 1 ? 0 : j * (n - 1) / (count - 1);
    pts.push_back(grid.node(i));
  }
  return pts;
}

std::vector<Point> all_nodes(const Grid& grid) {
  std::vector<Point> pts(grid.dof());
  for (std::size_t i = 0; i < grid.dof(); ++i) pts[i] = grid.node(i);
  return pts;
}

std::string point_str(Point p) { return at2("x", p.x, "y", p.y); }

double ladder_reach(const ZeroLadder& ladder, std::size_t windows) {
  if (windows == 0) return 1.0;
  return std::max(std::abs(ladder.mu(windows)), std::abs(ladder.eta(windows))) + 1.0;
}

std::vector<double> u_samples(double reach, int samples) {
  std::vector<double> us;
  const int n = std::max(samples, 2) * 2 + 1;
  for (int j = 0; j < n; ++j) us.push_back(-reach + 2.0 * reach * j / (n - 1));
  return us;
}

const std::vector<double> kXiSamples{0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 1e3};

}  // namespace

HypothesisReport validate_hypotheses(const NonlinearitySpec& spec, const Grid& grid,
                                     const ValidationOptions& opts) {
  HypothesisReport report;
  report.spec_name = spec.name;
  const std::size_t windows = windows_to_check(spec.ladder, opts.ladder_depth);
  ladder_checks(spec.ladder, windows, "H2", report.checks);
  const auto nodes = all_nodes(grid);

  CheckBuilder zeros("zeros-vanish", "H2");
  CheckBuilder wit("witness-positive", "H2");
  for (std::size_t n = 0; n <= windows && windows > 0; ++n) {
    for (Point p : nodes) {
      zeros.record(std::abs(spec.f(p, spec.ladder.mu(n))) - spec.zero_tol,
                   point_str(p) + ", " + at("mu index", static_cast<double>(n)));
      zeros.record(std::abs(spec.f(p, spec.ladder.eta(n))) - spec.zero_tol,
                   point_str(p) + ", " + at("eta index", static_cast<double>(n)));
      if (n < windows) {
        // F(x, beta_n) itself, not its truncated version, is what the hypothesis constrains.
        const double full_b = spec.F ? spec.F(p, spec.ladder.beta(n))
                                     : adaptive_simpson([&](double s) { return spec.f(p, s); },
                                                        0.0, spec.ladder.beta(n));
        const double full_g = spec.F ? spec.F(p, spec.ladder.gamma(n))
                                     : -adaptive_simpson([&](double s) { return spec.f(p, s); },
                                                         spec.ladder.gamma(n), 0.0);
        wit.record(full_b > 0 ? 0.0 : -full_b + 1e-300,
                   point_str(p) + ", " + at("beta index", static_cast<double>(n)));
        wit.record(full_g > 0 ? 0.0 : -full_g + 1e-300,
                   point_str(p) + ", " + at("gamma index", static_cast<double>(n)));
      }
    }
  }
  report.checks.push_back(zeros.done("|f(x, mu_n)|, |f(x, eta_n)| <= zero_tol"));
  report.checks.push_back(wit.done("F(x, beta_n) > 0 and F(x, gamma_n) > 0"));

  CheckBuilder growth("growth", "H1");
  CheckBuilder finite("finite", "H1");
  const double reach = ladder_reach(spec.ladder, windows);
  for (Point p : sample_nodes(grid, opts.samples)) {
    for (double t : u_samples(reach, opts.samples)) {
      const double v = spec.f(p, t);
      finite.record(std::isfinite(v) ? 0.0 : 1.0, point_str(p) + ", " + at("t", t));
      const double bound = spec.growth.c * (1.0 + std::pow(std::abs(t), spec.growth.r - 1.0));
      growth.record(std::abs(v) - bound * (1.0 + 1e-12), point_str(p) + ", " + at("t", t));
    }
  }
  if (!(spec.growth.c > 0.0) || spec.growth.r < 1.0) growth.record(1.0, "growth constants");
  report.checks.push_back(growth.done("|f(x,t)| <= c (1 + |t|^{r-1}), c > 0, r >= 1"));
  report.checks.push_back(finite.done("f finite at sampled (x, t)"));

  if (spec.extra_checks) {
    for (auto& c : spec.extra_checks(std::numeric_limits<double>::quiet_NaN())) {
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

HypothesisReport validate_hypotheses(const ConvectionSpec& spec, const Grid& grid,
                                     const ValidationOptions& opts) {
  HypothesisReport report;
  report.spec_name = spec.name;
  const std::size_t windows = windows_to_check(spec.ladder, opts.ladder_depth);
  ladder_checks(spec.ladder, windows, "H4", report.checks);
  const auto nodes = sample_nodes(grid, opts.samples);

  auto full_F = [&](Point p, double u, const Xi& xi) {
    if (spec.F) return spec.F(p, u, xi);
    return u >= 0 ? adaptive_simpson([&](double s) { return spec.f(p, s, xi); }, 0.0, u)
                  : -adaptive_simpson([&](double s) { return spec.f(p, s, xi); }, u, 0.0);
  };

  CheckBuilder zeros("zeros-vanish", "H4");
  CheckBuilder wit("witness-positive", "H4");
  for (std::size_t n = 0; n <= windows && windows > 0; ++n) {
    for (Point p : nodes) {
      for (double m : kXiSamples) {
        const Xi xi{m, 0.0};
        const std::string loc = point_str(p) + ", " + at("|xi|", m);
        zeros.record(std::abs(spec.f(p, spec.ladder.mu(n), xi)) - spec.zero_tol,
                     loc + ", " + at("mu index", static_cast<double>(n)));
        zeros.record(std::abs(spec.f(p, spec.ladder.eta(n), xi)) - spec.zero_tol,
                     loc + ", " + at("eta index", static_cast<double>(n)));
        if (n < windows) {
          const double fb = full_F(p, spec.ladder.beta(n), xi);
          const double fg = full_F(p, spec.ladder.gamma(n), xi);
          wit.record(fb > 0 ? 0.0 : -fb + 1e-300, loc + ", " + at("beta index", static_cast<double>(n)));
          wit.record(fg > 0 ? 0.0 : -fg + 1e-300, loc + ", " + at("gamma index", static_cast<double>(n)));
        }
      }
    }
  }
  report.checks.push_back(zeros.done("f(x, mu_n, xi) = f(x, eta_n, xi) = 0 within zero_tol"));
  report.checks.push_back(wit.done("F(x, beta_n, xi) > 0 and F(x, gamma_n, xi) > 0"));

  const double reach = ladder_reach(spec.ladder, windows);
  CheckBuilder growth("growth", "H3");
  if (!(spec.c1 > 0.0 && spec.c1 < 0.5)) growth.record(std::abs(spec.c1 - 0.25), "c1 outside (0, 1/2)");
  for (Point p : nodes) {
    for (double t : u_samples(reach, opts.samples)) {
      for (double m : kXiSamples) {
        const double v = spec.f(p, t, Xi{m, 0.0});
        const double bound = spec.c1 * (1.0 + std::pow(std::abs(t), spec.s - 1.0) + m);
        growth.record(std::abs(v) - bound * (1.0 + 1e-12), point_str(p) + ", " + at2("t", t, "|xi|", m));
      }
    }
  }
  report.checks.push_back(growth.done("|f| <= c1 (1 + |t|^{s-1} + |xi|) with c1 in (0, 1/2)"));

  CheckBuilder lip_t("lipschitz-t", "H5");
  CheckBuilder lip_xi("lipschitz-xi", "H5");
  std::mt19937_64 rng(20240613);
  std::uniform_real_distribution<double> ut(-reach, reach);
  std::uniform_real_distribution<double> uxi(0.0, 10.0);
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  for (int s = 0; s < 64 * std::max(opts.samples, 1); ++s) {
    const Point p = nodes[pick(rng)];
    const double t1 = ut(rng), t2 = ut(rng);
    const Xi x1{uxi(rng), grid.is_2d() ? uxi(rng) : 0.0};
    const Xi x2{uxi(rng), grid.is_2d() ? uxi(rng) : 0.0};
    const double dft = std::abs(spec.f(p, t1, x1) - spec.f(p, t2, x1));
    lip_t.record(dft - spec.L1 * std::abs(t1 - t2) * (1.0 + 1e-12) - 1e-14,
                 point_str(p) + ", " + at2("t'", t1, "t''", t2));
    const double dfx = std::abs(spec.f(p, t1, x1) - spec.f(p, t1, x2));
    const double dxi = std::hypot(x1[0] - x2[0], x1[1] - x2[1]);
    lip_xi.record(dfx - spec.L2 * dxi * (1.0 + 1e-12) - 1e-14, point_str(p) + ", " + at("t", t1));
  }
  if (!(spec.L1 > 0.0)) lip_t.record(1.0, "L1 must be positive");
  if (!(spec.L2 > 0.0)) lip_xi.record(1.0, "L2 must be positive");
  report.checks.push_back(lip_t.done("|f(x,t',xi) - f(x,t'',xi)| <= L1 |t' - t''|"));
  report.checks.push_back(lip_xi.done("|f(x,t,xi') - f(x,t,xi'')| <= L2 |xi' - xi''|"));

  double lambda1 = std::numeric_limits<double>::quiet_NaN();
  CheckBuilder contraction("contraction", "H5");
  if (grid.is_dirichlet()) {
    lambda1 = first_eigenvalue(grid);
    const double q = std::sqrt(lambda1) * spec.L2 / (lambda1 - spec.L1);
    const double v = spec.L1 >= lambda1 ? 1.0 : std::max(q - 1.0, -q);
    contraction.record(v >= 0.0 ? v + 1e-300 : 0.0, at("discrete lambda1", lambda1));
    report.checks.push_back(contraction.done(
        "0 < sqrt(lambda1) L2 / (lambda1 - L1) < 1 with the discrete lambda1 = " +
        std::to_string(lambda1)));
  }

  if (spec.extra_checks) {
    for (auto& c : spec.extra_checks(lambda1)) report.checks.push_back(std::move(c));
  }
  return report;
}

HypothesisReport validate_hypotheses(const HamiltonianSpec& spec, const Grid& grid,
                                     const ValidationOptions& opts) {
  HypothesisReport report;
  report.spec_name = spec.name;
  if (grid.kind() != GridKind::periodic_1d) {
    throw UsageError("validate_hypotheses: Hamiltonian specs need a periodic grid");
  }
  if (std::abs(grid.period() - spec.period) > 1e-12 * spec.period) {
    throw UsageError("validate_hypotheses: grid period differs from HamiltonianSpec::period");
  }
  const std::size_t windows = windows_to_check(spec.ladder, opts.ladder_depth);
  ladder_checks(spec.ladder, windows, "F2", report.checks);

  const double T = spec.period;
  std::vector<double> ts(static_cast<std::size_t>(std::max(opts.t_samples, 1)));
  for (std::size_t j = 0; j < ts.size(); ++j) ts[j] = T * static_cast<double>(j) / ts.size();
  const double reach = ladder_reach(spec.ladder, windows);
  const auto us = u_samples(reach, opts.samples);
  // A coarser t-sweep for the 2D (t, u) scans keeps validation fast.
  std::vector<double> ts_coarse;
  const std::size_t stride = std::max<std::size_t>(1, ts.size() / 128);
  for (std::size_t j = 0; j < ts.size(); j += stride) ts_coarse.push_back(ts[j]);

  CheckBuilder kb("K-bounds", "K1");
  CheckBuilder kh("K-homogeneous", "K2");
  CheckBuilder fg("F-growth", "F1");
  CheckBuilder per("periodic", "V1");
  CheckBuilder deriv("derivative-consistency", "V1");
  if (!(spec.b1 > 0.0 && spec.b2 >= spec.b1)) kb.record(1.0, "need 0 < b1 <= b2");
  if (!(spec.a > 0.0 && spec.p > 2.0)) fg.record(1.0, "need a > 0 and p > 2");
  for (double t : ts_coarse) {
    for (double u : us) {
      const std::string loc = at2("t", t, "u", u);
      const double K = spec.K(t, u);
      const double scale = 1e-12 * (1.0 + spec.b2 * u * u);
      kb.record(std::max(spec.b1 * u * u - K, K - spec.b2 * u * u) - scale, loc);
      for (double lam : {0.5, 2.0, 3.0}) {
        kh.record(std::abs(spec.K(t, lam * u) - lam * lam * K) - 1e-12 * (1.0 + std::abs(lam * lam * K)),
                  loc + ", " + at("lambda", lam));
      }
      const double F = spec.F(t, u);
      fg.record(std::abs(F) - spec.a * (std::abs(u) + std::pow(std::abs(u), spec.p)) * (1.0 + 1e-12) -
                    1e-14,
                loc);
      per.record(std::abs(spec.K(t + T, u) - K) - 1e-9 * (1.0 + std::abs(K)), loc);
      per.record(std::abs(spec.F(t + T, u) - F) - 1e-9 * (1.0 + std::abs(F)), loc);
      const double du = 1e-6 * (1.0 + std::abs(u));
      const double dK = (spec.K(t, u + du) - spec.K(t, u - du)) / (2 * du);
      const double dF = (spec.F(t, u + du) - spec.F(t, u - du)) / (2 * du);
      deriv.record(std::abs(dK - spec.K_u(t, u)) - 1e-5 * (1.0 + std::abs(dK)), loc + " (K_u)");
      deriv.record(std::abs(dF - spec.F_u(t, u)) - 1e-5 * (1.0 + std::abs(dF)), loc + " (F_u)");
    }
  }
  report.checks.push_back(kb.done("b1 u^2 <= K(t,u) <= b2 u^2"));
  report.checks.push_back(kh.done("K(t, lambda u) = lambda^2 K(t,u), lambda in {0.5, 2, 3}"));
  report.checks.push_back(fg.done("|F(t,u)| <= a (|u| + |u|^p), p > 2"));
  report.checks.push_back(per.done("K and F are T-periodic in t"));
  report.checks.push_back(deriv.done("K_u and F_u match central differences of K and F"));

  CheckBuilder zeros("zeros-vanish", "F2");
  CheckBuilder wit("witness-positive", "F2");
  for (std::size_t n = 0; n <= windows && windows > 0; ++n) {
    double inf_b = std::numeric_limits<double>::infinity();
    double inf_g = std::numeric_limits<double>::infinity();
    for (double t : ts) {
      zeros.record(std::abs(spec.F_u(t, spec.ladder.mu(n))) - spec.zero_tol,
                   at2("t", t, "mu index", static_cast<double>(n)));
      zeros.record(std::abs(spec.F_u(t, spec.ladder.eta(n))) - spec.zero_tol,
                   at2("t", t, "eta index", static_cast<double>(n)));
      if (n < windows) {
        inf_b = std::min(inf_b, spec.F(t, spec.ladder.beta(n)));
        inf_g = std::min(inf_g, spec.F(t, spec.ladder.gamma(n)));
      }
    }
    if (n < windows) {
      wit.record(inf_b > 0 ? 0.0 : -inf_b + 1e-300, at("beta index", static_cast<double>(n)));
      wit.record(inf_g > 0 ? 0.0 : -inf_g + 1e-300, at("gamma index", static_cast<double>(n)));
    }
  }
  report.checks.push_back(zeros.done("F_u(t, mu_n) = F_u(t, eta_n) = 0 within zero_tol"));
  report.checks.push_back(wit.done("inf_t F(t, beta_n) > 0 and inf_t F(t, gamma_n) > 0"));

  if (spec.extra_checks) {
    for (auto& c : spec.extra_checks(std::numeric_limits<double>::quiet_NaN())) {
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Builtin examples

namespace {

double param(const Parameters& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const Parameters& params, std::initializer_list<const char*> known,
                    const std::string& name) {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const char* kk : known) ok = ok || k == kk;
    if (!ok) throw ConfigError(name + ": unknown parameter '" + k + "'");
  }
}

ZeroLadder sine_ladder() {
  using std::numbers::pi;
  return ZeroLadder::from_rules([](std::size_t n) { return 2.0 * n * pi; },
                                [](std::size_t n) { return -2.0 * n * pi; },
                                [](std::size_t n) { return (2.0 * n + 1.0) * pi; },
                                [](std::size_t n) { return -(2.0 * n + 1.0) * pi; });
}

}  // namespace

NonlinearitySpec load_sine_elliptic(const Parameters& params) {
  reject_unknown(params, {"a", "modulation"}, "sine-elliptic");
  const double a = param(params, "a", 1.0);
  const double m = param(params, "modulation", 0.0);
  if (!(a > 0.0)) throw ConfigError("sine-elliptic: requires a > 0 (a = " + std::to_string(a) + ")");
  if (!(m >= 0.0 && m < 1.0)) {
    throw ConfigError("sine-elliptic: requires 0 <= modulation < 1 so that a(x) > 0");
  }
  NonlinearitySpec s;
  s.name = "sine-elliptic";
  // a(x) = a (1 + m sin x); m = 0 gives the constant coefficient.
  auto coef = [a, m](Point p) { return m == 0.0 ? a : a * (1.0 + m * std::sin(p.x)); };
  s.f = [coef](Point p, double t) { return coef(p) * std::sin(t); };
  s.F = [coef](Point p, double t) { return coef(p) * (1.0 - std::cos(t)); };
  s.ladder = sine_ladder();
  s.growth = {a * (1.0 + m), 1.0};
  s.params = {{"a", a}, {"modulation", m}};
  return s;
}

ConvectionSpec load_tanh_convection(const Parameters& params, bool empirical) {
  using std::numbers::pi;
  reject_unknown(params, {"a", "b", "c1", "s"}, "tanh-convection");
  const double a = param(params, "a", 0.3);
  const double b = param(params, "b", 0.1);
  const double c1 = param(params, "c1", a + b);
  const double s_exp = param(params, "s", 1.0);
  auto fmt = [&](const char* ineq) {
    std::ostringstream os;
    os << "tanh-convection: requires " << ineq << " (a = " << a << ", b = " << b << ", c1 = " << c1
       << ")";
    return os.str();
  };
  if (!empirical) {
    if (!(a > b && b > 0.0)) throw ConfigError(fmt("a > b > 0"));
    if (!(a + b <= c1)) throw ConfigError(fmt("a + b <= c1"));
    if (!(c1 > 0.0 && c1 < 0.5)) throw ConfigError(fmt("0 < c1 < 1/2"));
  } else if (!(a > 0.0 && b >= 0.0)) {
    throw ConfigError(fmt("a > 0 and b >= 0"));
  }
  ConvectionSpec s;
  s.name = "tanh-convection";
  s.f = [a, b](Point, double t, const Xi& xi) {
    return std::sin(pi * t) * (a + b * std::tanh(magnitude(xi)));
  };
  s.F = [a, b](Point, double t, const Xi& xi) {
    return (a + b * std::tanh(magnitude(xi))) * (1.0 - std::cos(pi * t)) / pi;
  };
  s.ladder = ZeroLadder::from_rules([](std::size_t n) { return static_cast<double>(n); },
                                    [](std::size_t n) { return -static_cast<double>(n); },
                                    [](std::size_t n) { return n + 0.5; },
                                    [](std::size_t n) { return -(n + 0.5); });
  s.L1 = pi * (a + b);
  s.L2 = b;
  s.c1 = c1;
  s.s = s_exp;
  s.empirical = empirical;
  s.params = {{"a", a}, {"b", b}, {"c1", c1}, {"s", s_exp}};
  if (!empirical) {
    s.extra_checks = [a, b](double lambda1) {
      std::vector<HypothesisCheck> out;
      HypothesisCheck box;
      box.name = "example-parameter-box";
      box.hypothesis = "H5";
      if (std::isnan(lambda1)) {
        box.passed = false;
        box.detail = "needs a Dirichlet grid for lambda1";
        box.worst_violation = 1.0;
      } else {
        const double v1 = pi * (a + b) - lambda1 / 4.0;
        const double v2 = std::sqrt(lambda1) * b - lambda1 / 4.0;
        box.worst_violation = std::max({v1, v2, 0.0});
        box.passed = v1 <= 0.0 && v2 <= 0.0;
        box.location = "lambda1=" + std::to_string(lambda1);
        box.detail = "pi (a + b) <= lambda1 / 4 and sqrt(lambda1) b <= lambda1 / 4";
      }
      out.push_back(box);
      return out;
    };
  }
  return s;
}

HamiltonianSpec load_sinusoidal_hamiltonian(const Parameters& params) {
  using std::numbers::pi;
  reject_unknown(params, {"a", "T", "p"}, "sinusoidal-hamiltonian");
  const double a = param(params, "a", 250.0);
  const double T = param(params, "T", 1.0);
  const double p = param(params, "p", 3.0);
  if (!(a > 0.0)) throw ConfigError("sinusoidal-hamiltonian: requires a > 0");
  if (!(T > 0.0)) throw ConfigError("sinusoidal-hamiltonian: requires T > 0");
  if (!(p > 2.0)) throw ConfigError("sinusoidal-hamiltonian: requires p > 2");
  HamiltonianSpec s;
  s.name = "sinusoidal-hamiltonian";
  auto coef = [T](double t) {
    return 1.0 + 0.5 * std::sin(2.0 * pi * t / T) + 0.1 * std::sin(4.0 * pi * t / T);
  };
  s.K = [coef](double t, double u) { return coef(t) * u * u; };
  s.K_u = [coef](double t, double u) { return 2.0 * coef(t) * u; };
  s.b1 = 2.0 / 5.0;
  s.b2 = 8.0 / 5.0;
  s.F = [a](double, double u) { return a * (1.0 - std::cos(u)); };
  s.F_u = [a](double, double u) { return a * std::sin(u); };
  s.ladder = sine_ladder();
  s.period = T;
  s.a = a;
  s.p = p;
  s.params = {{"a", a}, {"T", T}, {"p", p}};
  return s;
}

NonlinearitySpec zero_gradient_slice(const ConvectionSpec& spec) {
  NonlinearitySpec s;
  s.name = spec.name + "@xi=0";
  s.f = [g = spec.f](Point p, double t) { return g(p, t, Xi{0.0, 0.0}); };
  if (spec.F) s.F = [G = spec.F](Point p, double t) { return G(p, t, Xi{0.0, 0.0}); };
  s.ladder = spec.ladder;
  s.growth = {spec.c1, spec.s};
  s.zero_tol = spec.zero_tol;
  s.params = spec.params;
  return s;
}

}  // namespace ladder
