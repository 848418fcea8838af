#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ladder/grid.hpp"
#include "ladder/nonlinearity.hpp"

namespace ladder {

enum class SeedProfile { plateau, constant_interior, custom };

std::string to_string(SeedProfile s);
SeedProfile seed_profile_from_string(const std::string& name);

struct LineSearchOptions {
  double initial_step = 1.0;  ///< first trial step, as max nodal move on the first iteration
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_halvings = 60;
};

struct MinimizeOptions {
  double grad_tol = 1e-9;  ///< on the L2 norm of -Delta_h u - f_n(u)
  int max_iters = 50000;
  LineSearchOptions line_search;
  SeedProfile seed_profile = SeedProfile::plateau;
  std::optional<GridFunction> custom_seed;
  double plateau_ramp_fraction = 0.1;  ///< ramp width as a fraction of the domain diameter
  int memory = 8;                      ///< L-BFGS history length
  double window_tol_factor = 1e-6;     ///< window_tol = factor * (hi - lo)
  double nontrivial_tol_factor = 1e-6; ///< nontrivial_tol = factor * max(1, hi)

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Discrete truncated energy
///   E(u) = 1/2 sum_edges w |grad_h u|^2 + sum_i w P_i(u_i),
/// with P_i(s) = -F_n(x_i, s, xi_i) (+ K(t_i, s) for periodic problems).
/// The frozen gradient field xi (one entry per node) is zero unless given.
class Functional {
 public:
  Functional(const Grid& grid, TruncatedNonlinearity tr, std::vector<Xi> frozen_xi = {});

  const Grid& grid() const noexcept { return grid_; }
  const TruncatedNonlinearity& truncation() const noexcept { return tr_; }
  const std::vector<Xi>& frozen_xi() const noexcept { return xi_; }

  double potential(std::size_t i, double s) const;
  /// dP_i/ds; with `truncated` false the untruncated nonlinearity is used.
  double potential_slope(std::size_t i, double s, bool truncated = true) const;
  /// int_{s0}^{s1} (P_i'(s) - P_i'(s0)) ds, evaluated without cancellation
  /// for short steps (Gauss-Legendre split at the kinks of P_i).
  double potential_remainder(std::size_t i, double s0, double s1) const;

  double energy(const GridFunction& u) const;
  /// Euclidean gradient of energy(): w * (-Delta_h u + P'(u)).
  GridFunction gradient(const GridFunction& u) const;
  /// Strong-form residual -Delta_h u - f(u) (= gradient / w).
  GridFunction residual(const GridFunction& u, bool truncated = true) const;
  double residual_norm(const GridFunction& u, bool truncated = true) const;

 private:
  Grid grid_;
  TruncatedNonlinearity tr_;
  std::vector<Point> points_;
  std::vector<Xi> xi_;
  std::vector<double> kinks_;
};

double assemble_energy(const Grid& grid, const TruncatedNonlinearity& tr, const GridFunction& u,
                       const std::vector<Xi>& frozen_xi = {});
GridFunction assemble_gradient(const Grid& grid, const TruncatedNonlinearity& tr,
                               const GridFunction& u, const std::vector<Xi>& frozen_xi = {});

/// Initial iterate for a window: plateau at the witness with linear ramps of
/// width fraction * diameter (Dirichlet), the constant witness (periodic or
/// constant-interior), or the custom seed.
GridFunction make_seed(const Grid& grid, const Window& window, const MinimizeOptions& opts);

struct MinimizeResult {
  GridFunction solution;
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
  /// Energy after each accepted step, starting with the seed's energy.
  std::vector<double> energy_history;
};

/// Limited-memory quasi-Newton descent with Armijo backtracking. Stops when the
/// residual L2 norm drops to grad_tol; running out of iterations is reported
/// through `converged`. Throws NumericError (carrying the last iterate) when
/// the line search underflows.
MinimizeResult minimize(const Functional& fn, const GridFunction& seed,
                        const MinimizeOptions& opts);
MinimizeResult minimize(const Grid& grid, const TruncatedNonlinearity& tr,
                        const MinimizeOptions& opts);

struct WindowCheck {
  bool lower_ok = true;
  bool upper_ok = true;
  double worst_low = 0.0;   ///< max(0, lo - min u)
  double worst_high = 0.0;  ///< max(0, max u - hi)
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Which certificate verdicts count toward pass/fail.
struct CertifyPolicy {
  bool lower_asserted = false;
  bool upper_asserted = true;
  bool energy_asserted = false;
};

struct SolutionCertificate {
  explicit SolutionCertificate(GridFunction u) : solution(std::move(u)) {}

  GridFunction solution;
  ProblemClass problem = ProblemClass::elliptic;
  std::string spec_name;
  Window window;
  double energy = 0.0;
  bool energy_negative = false;
  double seed_energy = 0.0;
  std::optional<double> trial_energy;  ///< constant-witness energy (periodic problems)
  WindowCheck window_check;
  double window_tol = 0.0;
  CertifyPolicy policy;
  double truncated_residual = 0.0;
  double original_residual = 0.0;
  double residual_tol = 0.0;
  double sup_norm = 0.0;
  double nontrivial_tol = 0.0;
  bool nontrivial = false;
  bool converged = false;
  int iterations = 0;
  bool empirical = false;

  bool window_lower_ok() const noexcept { return window_check.lower_ok; }
  bool window_upper_ok() const noexcept { return window_check.upper_ok; }
  /// Names of asserted verdicts that failed.
  std::vector<std::string> failed_assertions() const;
  bool passed() const { return failed_assertions().empty(); }
};

/// Evaluates every certificate field for `u` under the given functional.
SolutionCertificate certify(const Functional& fn, const GridFunction& u,
                            const MinimizeOptions& opts, const CertifyPolicy& policy);

/// Minimizes from `seed` and certifies the result.
SolutionCertificate solve_functional(const Functional& fn, const GridFunction& seed,
                                     const MinimizeOptions& opts, const CertifyPolicy& policy);

/// The far window bound (hi for plus, lo for minus) is always asserted. The
/// near bound is admissible under zero Dirichlet data only when the window
/// touches zero (lo <= 0 for plus, hi >= 0 for minus).
CertifyPolicy dirichlet_policy(const Window& window);

/// Throws HypothesisError unless the window's zeros vanish and its witness
/// has positive antiderivative at every node of the grid.
void require_window_hypotheses(const NonlinearitySpec& spec, const Grid& grid, int n, Sign sign);

SolutionCertificate solve_window(const NonlinearitySpec& spec, const Grid& grid, int n, Sign sign,
                                 const MinimizeOptions& opts = {});

/// Windows 0, 2, ..., 2(count-1) unless an explicit strictly increasing
/// schedule is supplied.
std::vector<int> stride_two_schedule(int count);
void validate_schedule(const std::vector<int>& schedule);

std::vector<SolutionCertificate> ladder_walk(const NonlinearitySpec& spec, const Grid& grid,
                                             int count, Sign sign,
                                             const MinimizeOptions& opts = {},
                                             const std::vector<int>& schedule = {});

}  // namespace ladder
