#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ladder/grid.hpp"
#include "ladder/nonlinearity.hpp"
#include "ladder/variational.hpp"

namespace ladder {

struct AlphaGate {
  int n = 0;
  double alpha = 0.0;        ///< min_{i <= 2n} inf_t F(t, beta_i) / beta_i^2
  double alpha_gamma = 0.0;  ///< the same over the negative witnesses gamma_i
  double b2 = 0.0;
  bool passed = false;       ///< b2 < alpha and b2 < alpha_gamma
  std::string inequality;    ///< human-readable comparison
};

/// Throws HypothesisError if some sampled F(t, beta_i) or F(t, gamma_i) is <= 0.
AlphaGate alpha_threshold(const HamiltonianSpec& spec, int n, int t_samples = 1024);

struct PeriodicOptions {
  int cells_per_period = 256;
  int t_samples = 1024;     ///< per-period sampling for inf/sup scans
  double fd_slack = 0.05;   ///< relative slack on the second-derivative bound
  int u_samples = 2001;     ///< u-sampling for the derivative bound c
};

/// Minimizes the truncated periodic energy on [-kT, kT]; both window bounds
/// and energy <= constant-witness trial energy < 0 are asserted.
SolutionCertificate solve_periodic_window(const HamiltonianSpec& spec, int k, int n, Sign sign,
                                          const PeriodicOptions& popts = {},
                                          const MinimizeOptions& opts = {},
                                          const std::optional<GridFunction>& seed = std::nullopt);

struct HamiltonianFamily {
  AlphaGate gate;
  std::vector<SolutionCertificate> positive;
  std::vector<SolutionCertificate> negative;
};

/// Windows 0, 2, ..., 2n of both signs after the alpha_n gate.
HamiltonianFamily family_solve(const HamiltonianSpec& spec, int n, int k,
                               const PeriodicOptions& popts = {},
                               const MinimizeOptions& opts = {});

/// One family member followed across k.
struct MemberStudy {
  int member = 0;  ///< i; the window index is 2i
  Sign sign = Sign::plus;
  std::vector<int> k_list;  ///< stable prefix actually studied
  std::vector<SolutionCertificate> certificates;
  std::vector<double> sup_norms;
  std::vector<double> max_du;   ///< max |u'| by central differences
  std::vector<double> max_ddu;  ///< max |u''| by the 3-point stencil
  double bound_M = 0.0;         ///< window ceiling of this member
  double derivative_bound_c = 0.0;  ///< max |K_u - F_u| on [0,T] x [-M, M]
  bool uniform_bound_ok = true;
  bool derivative_bound_ok = true;
  std::vector<double> c1_distances;  ///< consecutive k pairs, on the compact window
  bool stable = true;
  std::string instability;
  std::vector<double> limit_t;  ///< compact-window nodes
  std::vector<double> limit_candidate;
  double limit_residual = 0.0;              ///< sup |u'' + V_u(t, u)| on the compact window
  double integral_identity_discrepancy = 0.0;  ///< sup |u'(t) - u'(a) - int_a^t (K_u - F_u)|
};

struct ConvergenceReport {
  std::vector<int> k_list;
  double compact_a = 0.0;
  double compact_b = 0.0;
  int cells_per_period = 0;
  double uniform_bound_M = 0.0;      ///< max window ceiling over the family
  double derivative_bound_c = 0.0;   ///< c on [0,T] x [-M, M]
  double fd_slack = 0.0;
  AlphaGate gate;
  /// Members of different k are matched by seeding each solve with the
  /// previous k's solution extended by periodicity.
  std::string matching = "seeded-periodic-extension";
  std::vector<MemberStudy> members;
};

/// max |K_u(t,u) - F_u(t,u)| over t in [0,T], |u| <= M.
double derivative_bound(const HamiltonianSpec& spec, double M, int t_samples, int u_samples);

/// Periodic extension of u from [-kT, kT] onto the grid for k' >= k.
GridFunction extend_periodically(const GridFunction& u, const Grid& target);

ConvergenceReport limit_study(const HamiltonianSpec& spec, int n, const std::vector<int>& k_list,
                              double a, double b, const PeriodicOptions& popts = {},
                              const MinimizeOptions& opts = {},
                              const std::vector<Sign>& signs = {Sign::plus, Sign::minus});

}  // namespace ladder
