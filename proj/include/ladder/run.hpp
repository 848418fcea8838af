#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ladder/config.hpp"
#include "ladder/convection.hpp"
#include "ladder/hamiltonian.hpp"
#include "ladder/nonlinearity.hpp"
#include "ladder/variational.hpp"
#include "ladder/verify.hpp"

namespace ladder {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.3.0";

enum class Command { solve, validate, oracle };
std::string to_string(Command c);

struct RunOptions {
  Command command = Command::solve;
  int threads = 1;  ///< windows are distributed over this many workers
};

/// A solver failure confined to one window (or to the whole family for
/// Hamiltonian runs, where n is the family index).
struct WindowError {
  std::string kind;  ///< "numeric" or "hypothesis"
  std::string message;
  int n = 0;
  std::optional<Sign> sign;
};

/// Distinctness among the certificates of one sign.
struct SignedDistinctness {
  Sign sign = Sign::plus;
  DistinctnessReport report;
};

/// Oracle comparison for one certificate (1D Dirichlet runs).
struct OracleMatch {
  int n = 0;
  Sign sign = Sign::plus;
  std::size_t certificate = 0;  ///< index into RunReport::certificates
  std::vector<OracleSolution> solutions;
  double best_distance = 0.0;   ///< L-infinity on the solver grid; infinite if no solution
  double match_tol = 0.0;
  bool matched = false;
};

struct RunReport {
  RunConfig config;
  Command command = Command::solve;
  std::optional<HypothesisReport> hypotheses;
  std::vector<SolutionCertificate> certificates;
  std::vector<IterationTrace> traces;
  std::optional<AlphaGate> gate;
  std::optional<ConvergenceReport> convergence;
  std::vector<SignedDistinctness> distinctness;
  std::vector<OracleMatch> oracle;
  std::vector<WindowError> errors;
  std::vector<std::pair<std::string, double>> timings;  ///< seconds per phase
  int exit_code = 0;
};

/// 0 when every asserted check passes, 1 on an assertion or hypothesis
/// failure, 3 when some window hit a numeric failure.
int exit_code_of(const RunReport& report);

/// Runs the pipeline for the config's problem class. Configuration problems
/// raise ConfigError; solver failures are recorded per window.
RunReport run(const RunConfig& config, const RunOptions& options = {});

/// Report as JSON; without timings the output is byte-stable across runs.
std::string report_json(const RunReport& report, bool with_timings = true);

/// Writes report.json (format "report") and, for format "table",
/// certificates.csv plus one profile CSV per certificate.
std::vector<std::filesystem::path> emit(const RunReport& report,
                                        const std::filesystem::path& directory);

/// File name of the profile table of certificate `index`.
std::string profile_file_name(const SolutionCertificate& cert, std::size_t index);

}  // namespace ladder
