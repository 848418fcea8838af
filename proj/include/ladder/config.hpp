#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ladder/grid.hpp"
#include "ladder/nonlinearity.hpp"
#include "ladder/terms.hpp"
#include "ladder/verify.hpp"

namespace ladder {

/// Inline nonlinearity given as term sums. For Hamiltonian problems `f` is
/// unused; `K` and `F` are given and their u-derivatives are exact.
struct InlineSpec {
  std::string name = "inline";
  TermSum f;
  TermSum F;  ///< empty -> quadrature (elliptic / convection)
  TermSum K;
  std::vector<double> mu, eta, beta, gamma;
  double growth_c = 1.0;
  double growth_r = 1.0;
  double L1 = 0.0;
  double L2 = 0.0;
  double c1 = 0.25;
  double s = 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double a = 1.0;
  double p = 3.0;

  friend bool operator==(const InlineSpec&, const InlineSpec&) = default;
};

struct SpecConfig {
  std::string builtin;  ///< empty for inline specs
  Parameters params;
  bool empirical = false;
  double zero_tol = 1e-10;
  bool is_inline = false;
  InlineSpec inline_spec;

  friend bool operator==(const SpecConfig&, const SpecConfig&) = default;
};

struct GridConfig {
  GridKind kind = GridKind::dirichlet_1d;
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
  int cells_x = 64;
  int cells_y = 64;
  std::vector<int> k_list;  ///< periodic: intervals [-kT, kT] to solve on
  double period = 1.0;
  int cells_per_period = 256;
  double compact_a = -1.0;
  double compact_b = 1.0;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

enum class SignChoice { plus, minus, both };
std::string to_string(SignChoice s);
std::vector<Sign> signs_of(SignChoice s);

struct WindowConfig {
  int count = 1;
  std::vector<int> schedule;  ///< overrides the stride-2 schedule when nonempty

  friend bool operator==(const WindowConfig&, const WindowConfig&) = default;
};

struct Tolerances {
  double grad_tol = 1e-9;
  int max_iters = 50000;
  double initial_step = 1.0;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_halvings = 60;
  double plateau_ramp_fraction = 0.1;
  int memory = 8;
  double window_tol_factor = 1e-6;
  double nontrivial_tol_factor = 1e-6;
  double picard_tol = 1e-8;
  int max_outer = 50;
  double ratio_slack = 1e-6;
  int t_samples = 1024;
  double fd_slack = 0.05;
  int validation_samples = 64;
  int validation_depth = 6;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct OracleConfig {
  double slope_lo = 0.0;
  double slope_hi = 20.0;
  int slope_samples = 2001;
  int steps = 100000;
  OracleIntegrator integrator = OracleIntegrator::rk4;
  double oracle_tol = 1e-10;
  double match_tol = 1e-4;

  friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats{"report", "table"};

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  ProblemClass problem = ProblemClass::elliptic;
  SpecConfig spec;
  GridConfig grid;
  WindowConfig windows;
  SignChoice sign = SignChoice::plus;
  SeedProfile seed_profile = SeedProfile::plateau;
  Tolerances tolerances;
  OracleConfig oracle;
  OutputConfig output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Strict parse: unknown keys, wrong types and out-of-range values raise
/// ConfigError naming the field (and line/column for syntax errors).
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_string(const std::string& text);

/// Cross-field validation (also run by the parsers).
void validate_config(const RunConfig& config);

/// Fully expanded JSON form; parse_config_string accepts it back unchanged.
std::string config_echo(const RunConfig& config);

MinimizeOptions minimize_options(const RunConfig& config);

/// Builds the grid for Dirichlet problems (periodic grids depend on k).
Grid dirichlet_grid(const RunConfig& config);

NonlinearitySpec build_elliptic_spec(const RunConfig& config);
ConvectionSpec build_convection_spec(const RunConfig& config);
HamiltonianSpec build_hamiltonian_spec(const RunConfig& config);

}  // namespace ladder
