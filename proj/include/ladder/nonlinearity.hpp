#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ladder/grid.hpp"

namespace ladder {

enum class Sign { plus, minus };
std::string to_string(Sign sign);
Sign sign_from_string(const std::string& name);

enum class ProblemClass { elliptic, convection, hamiltonian };
std::string to_string(ProblemClass problem);

using SequenceRule = std::function<double(std::size_t)>;

/// Positive zeros mu_n (increasing, mu_0 >= 0), negative zeros eta_n
/// (decreasing, eta_0 <= 0) and witnesses beta_n in (mu_n, mu_{n+1}),
/// gamma_n in (eta_{n+1}, eta_n). A ladder is a finite prefix optionally
/// followed by generator rules that extend it on demand.
class ZeroLadder {
 public:
  ZeroLadder() = default;
  ZeroLadder(std::vector<double> mu, std::vector<double> eta, std::vector<double> beta,
             std::vector<double> gamma);

  /// Ladder fully described by rules (no prefix).
  static ZeroLadder from_rules(SequenceRule mu, SequenceRule eta, SequenceRule beta,
                               SequenceRule gamma);

  double mu(std::size_t n) const;
  double eta(std::size_t n) const;
  double beta(std::size_t n) const;
  double gamma(std::size_t n) const;

  bool has_rules() const noexcept { return static_cast<bool>(mu_rule_); }
  /// Number of windows (per sign) for which zeros n, n+1 and witness n exist.
  std::size_t available_windows() const noexcept;

  const std::vector<double>& mu_prefix() const noexcept { return mu_; }
  const std::vector<double>& eta_prefix() const noexcept { return eta_; }
  const std::vector<double>& beta_prefix() const noexcept { return beta_; }
  const std::vector<double>& gamma_prefix() const noexcept { return gamma_; }

 private:
  std::vector<double> mu_, eta_, beta_, gamma_;
  SequenceRule mu_rule_, eta_rule_, beta_rule_, gamma_rule_;
};

using Parameters = std::map<std::string, double>;

struct HypothesisCheck {
  std::string name;        ///< short identifier, e.g. "zeros-vanish"
  std::string hypothesis;  ///< which assumption it spot-checks, e.g. "H2"
  bool passed = true;
  double worst_violation = 0.0;  ///< >0 means violated by that much
  std::string location;          ///< where the worst case occurred
  std::string detail;
};

struct HypothesisReport {
  std::string spec_name;
  std::vector<HypothesisCheck> checks;
  bool passed() const;
  const HypothesisCheck* find(const std::string& name) const;
};

/// Extra, spec-specific checks (e.g. the parameter box of a builtin) that may
/// depend on the first Dirichlet eigenvalue of the grid (NaN if unavailable).
using ExtraChecks = std::function<std::vector<HypothesisCheck>(double lambda1)>;

struct GrowthBound {
  double c = 1.0;  ///< |f(x,t)| <= c (1 + |t|^{r-1})
  double r = 1.0;
};

/// Problem I data: f(x, t) with antiderivative F(x, t) = int_0^t f.
struct NonlinearitySpec {
  std::string name;
  std::function<double(Point, double)> f;
  std::function<double(Point, double)> F;  ///< empty -> adaptive quadrature
  ZeroLadder ladder;
  GrowthBound growth;
  double zero_tol = 1e-10;
  Parameters params;
  ExtraChecks extra_checks;
};

/// Problem II data: f(x, t, xi) Lipschitz in t (L1) and xi (L2).
struct ConvectionSpec {
  std::string name;
  std::function<double(Point, double, const Xi&)> f;
  std::function<double(Point, double, const Xi&)> F;  ///< empty -> quadrature
  ZeroLadder ladder;
  double L1 = 0.0;
  double L2 = 0.0;
  double c1 = 0.25;  ///< |f| <= c1 (1 + |t|^{s-1} + |xi|), c1 in (0, 1/2)
  double s = 1.0;
  double zero_tol = 1e-10;
  bool empirical = false;  ///< parameter box not enforced; results are labelled empirical
  Parameters params;
  ExtraChecks extra_checks;
};

/// Problem III data: V(t,u) = -K(t,u) + F(t,u), both T-periodic in t.
struct HamiltonianSpec {
  std::string name;
  std::function<double(double, double)> K;
  std::function<double(double, double)> K_u;
  double b1 = 0.0;
  double b2 = 0.0;
  std::function<double(double, double)> F;
  std::function<double(double, double)> F_u;
  ZeroLadder ladder;
  double period = 1.0;
  double a = 1.0;  ///< |F(t,u)| <= a (|u| + |u|^p)
  double p = 3.0;
  double zero_tol = 1e-10;
  Parameters params;
  ExtraChecks extra_checks;
};

/// Window (lo, hi) = (mu_n, mu_{n+1}) for plus, (eta_{n+1}, eta_n) for minus.
struct Window {
  int n = 0;
  Sign sign = Sign::plus;
  double lo = 0.0;
  double hi = 0.0;
  double witness = 0.0;  ///< beta_n or gamma_n

  double width() const noexcept { return hi - lo; }
  /// Bound on the far side of zero (hi for plus, lo for minus).
  double outer() const noexcept { return sign == Sign::plus ? hi : lo; }
  /// Bound on the near side of zero (lo for plus, hi for minus).
  double inner() const noexcept { return sign == Sign::plus ? lo : hi; }
};

/// f restricted to a window: zero outside [lo, hi], the base f inside. For
/// Hamiltonian specs the base f is F_u and the quadratic part K is carried
/// along so the periodic energy can be assembled from the same object.
class TruncatedNonlinearity {
 public:
  using Evaluator = std::function<double(Point, double, const Xi&)>;

  TruncatedNonlinearity(ProblemClass problem, std::string spec_name, Window window, Evaluator f,
                        Evaluator F);

  ProblemClass problem() const noexcept { return problem_; }
  const std::string& spec_name() const noexcept { return spec_name_; }
  const Window& window() const noexcept { return window_; }

  /// Truncated value f_n^{+-}(x, t, xi).
  double value(Point p, double t, const Xi& xi = {}) const;
  /// Untruncated base f(x, t, xi).
  double base_value(Point p, double t, const Xi& xi = {}) const { return f_(p, t, xi); }
  /// Truncated antiderivative F_n^{+-}(x, u, xi) = int_0^u f_n^{+-}.
  double antiderivative(Point p, double u, const Xi& xi = {}) const;
  bool closed_form() const noexcept { return static_cast<bool>(F_); }

  /// Quadratic part K(t,u) (Hamiltonian problems only).
  void set_quadratic(std::function<double(double, double)> K,
                     std::function<double(double, double)> K_u);
  bool has_quadratic() const noexcept { return static_cast<bool>(K_); }
  double quadratic(double t, double u) const { return K_(t, u); }
  double quadratic_derivative(double t, double u) const { return K_u_(t, u); }

  /// u-locations where the local potential is not smooth.
  std::vector<double> kinks() const;

 private:
  ProblemClass problem_;
  std::string spec_name_;
  Window window_;
  Evaluator f_;
  Evaluator F_;
  std::function<double(double, double)> K_;
  std::function<double(double, double)> K_u_;
};

Window window_of(const ZeroLadder& ladder, int n, Sign sign);

TruncatedNonlinearity truncate(const NonlinearitySpec& spec, int n, Sign sign);
TruncatedNonlinearity truncate(const ConvectionSpec& spec, int n, Sign sign);
TruncatedNonlinearity truncate(const HamiltonianSpec& spec, int n, Sign sign);

double truncated_antiderivative(const TruncatedNonlinearity& tr, Point p, double u,
                                const Xi& xi = {});

/// Adaptive Simpson quadrature with absolute tolerance; throws NumericError
/// when the recursion depth is exhausted.
double adaptive_simpson(const std::function<double(double)>& g, double a, double b,
                        double abs_tol = 1e-12, int max_depth = 60);

struct ValidationOptions {
  int samples = 64;        ///< spatial / xi / u sample count
  int ladder_depth = 6;    ///< windows 0..depth-1 are checked
  int t_samples = 1024;    ///< per-period time samples (Problem III)
};

HypothesisReport validate_hypotheses(const NonlinearitySpec& spec, const Grid& grid,
                                     const ValidationOptions& opts = {});
HypothesisReport validate_hypotheses(const ConvectionSpec& spec, const Grid& grid,
                                     const ValidationOptions& opts = {});
HypothesisReport validate_hypotheses(const HamiltonianSpec& spec, const Grid& grid,
                                     const ValidationOptions& opts = {});

NonlinearitySpec load_sine_elliptic(const Parameters& params);
ConvectionSpec load_tanh_convection(const Parameters& params, bool empirical = false);
HamiltonianSpec load_sinusoidal_hamiltonian(const Parameters& params);

/// f(x,t) := f(x,t,0): the xi = 0 slice of a convection spec.
NonlinearitySpec zero_gradient_slice(const ConvectionSpec& spec);

}  // namespace ladder
