#include "ladder/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

#include <json.hpp>

#include "ladder/errors.hpp"

namespace ladder {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::solve: return "solve";
    case Command::validate: return "validate";
    case Command::oracle: return "oracle";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Runs body(i) for i in [0, count); results must be written by index so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct Job {
  int n = 0;
  Sign sign = Sign::plus;
  std::optional<SolutionCertificate> cert;
  std::optional<IterationTrace> trace;
  std::optional<WindowError> error;
};

template <class Solve>
void run_guarded(Job& job, const Solve& solve) {
  try {
    solve(job);
  } catch (const NumericError& e) {
    job.error = WindowError{"numeric", e.what(), job.n, job.sign};
  } catch (const HypothesisError& e) {
    job.error = WindowError{"hypothesis", e.what(), job.n, job.sign};
  }
}

std::vector<Job> make_jobs(const RunConfig& c) {
  const std::vector<int> windows =
      c.windows.schedule.empty() ? stride_two_schedule(c.windows.count) : c.windows.schedule;
  std::vector<Job> jobs;
  for (Sign s : signs_of(c.sign)) {
    for (int n : windows) {
      Job j;
      j.n = n;
      j.sign = s;
      jobs.push_back(std::move(j));
    }
  }
  return jobs;
}

void collect(RunReport& r, std::vector<Job>& jobs) {
  for (auto& j : jobs) {
    if (j.cert) r.certificates.push_back(std::move(*j.cert));
    if (j.trace) r.traces.push_back(std::move(*j.trace));
    if (j.error) r.errors.push_back(std::move(*j.error));
  }
}

void add_distinctness(RunReport& r) {
  for (Sign s : signs_of(r.config.sign)) {
    std::vector<SolutionCertificate> same;
    for (const auto& c : r.certificates) {
      if (c.window.sign == s) same.push_back(c);
    }
    if (same.size() >= 2) r.distinctness.push_back({s, distinctness_report(same)});
  }
}

ValidationOptions validation_options(const RunConfig& c) {
  ValidationOptions v;
  v.samples = c.tolerances.validation_samples;
  v.ladder_depth = c.tolerances.validation_depth;
  v.t_samples = c.tolerances.t_samples;
  return v;
}

PicardOptions picard_options(const RunConfig& c) {
  PicardOptions p;
  p.picard_tol = c.tolerances.picard_tol;
  p.max_outer = c.tolerances.max_outer;
  p.ratio_slack = c.tolerances.ratio_slack;
  return p;
}

PeriodicOptions periodic_options(const RunConfig& c) {
  PeriodicOptions p;
  p.cells_per_period = c.grid.cells_per_period;
  p.t_samples = c.tolerances.t_samples;
  p.fd_slack = c.tolerances.fd_slack;
  return p;
}

OracleOptions oracle_options(const RunConfig& c) {
  OracleOptions o;
  o.integrator = c.oracle.integrator;
  o.steps = c.oracle.steps;
  o.slope_samples = c.oracle.slope_samples;
  o.oracle_tol = c.oracle.oracle_tol;
  return o;
}

void run_oracle(RunReport& r, const NonlinearitySpec& spec, const Grid& grid, int threads) {
  const RunConfig& c = r.config;
  r.oracle.resize(r.certificates.size());
  const OracleOptions oo = oracle_options(c);
  parallel_for(r.certificates.size(), threads, [&](std::size_t i) {
    const SolutionCertificate& cert = r.certificates[i];
    OracleMatch& m = r.oracle[i];
    m.n = cert.window.n;
    m.sign = cert.window.sign;
    m.certificate = i;
    m.match_tol = c.oracle.match_tol;
    const TruncatedNonlinearity tr = truncate(spec, cert.window.n, cert.window.sign);
    const double x0 = grid.x_lo();
    auto f = [&tr, x0](double x, double u) { return tr.value(Point{x0 + x, 0.0}, u); };
    const SlopeRange slopes = cert.window.sign == Sign::plus
                                  ? SlopeRange{c.oracle.slope_lo, c.oracle.slope_hi}
                                  : SlopeRange{-c.oracle.slope_hi, -c.oracle.slope_lo};
    m.solutions = shooting_oracle_1d(f, grid.length_x(), slopes,
                                     {OracleWindow{tr.window().lo, tr.window().hi}}, oo);
    m.best_distance = std::numeric_limits<double>::infinity();
    for (const auto& s : m.solutions) {
      const GridFunction g = restrict_to_grid(s, grid);
      double d = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k) d = std::max(d, std::abs(g[k] - cert.solution[k]));
      m.best_distance = std::min(m.best_distance, d);
    }
    m.matched = m.best_distance <= m.match_tol;
  });
}

void run_elliptic(RunReport& r, const RunOptions& o) {
  const RunConfig& c = r.config;
  const NonlinearitySpec spec = build_elliptic_spec(c);
  const Grid grid = dirichlet_grid(c);
  const MinimizeOptions opts = minimize_options(c);

  auto t0 = Clock::now();
  r.hypotheses = validate_hypotheses(spec, grid, validation_options(c));
  r.timings.emplace_back("validate", seconds_since(t0));
  if (o.command == Command::validate) return;

  t0 = Clock::now();
  std::vector<Job> jobs = make_jobs(c);
  parallel_for(jobs.size(), o.threads, [&](std::size_t i) {
    run_guarded(jobs[i], [&](Job& j) { j.cert = solve_window(spec, grid, j.n, j.sign, opts); });
  });
  collect(r, jobs);
  r.timings.emplace_back("solve", seconds_since(t0));
  add_distinctness(r);

  if (o.command == Command::oracle) {
    t0 = Clock::now();
    run_oracle(r, spec, grid, o.threads);
    r.timings.emplace_back("oracle", seconds_since(t0));
  }
}

void run_convection(RunReport& r, const RunOptions& o) {
  const RunConfig& c = r.config;
  const ConvectionSpec spec = build_convection_spec(c);
  const Grid grid = dirichlet_grid(c);
  const MinimizeOptions opts = minimize_options(c);
  const PicardOptions popts = picard_options(c);

  auto t0 = Clock::now();
  r.hypotheses = validate_hypotheses(spec, grid, validation_options(c));
  r.timings.emplace_back("validate", seconds_since(t0));
  if (o.command == Command::validate) return;

  t0 = Clock::now();
  std::vector<Job> jobs = make_jobs(c);
  parallel_for(jobs.size(), o.threads, [&](std::size_t i) {
    run_guarded(jobs[i], [&](Job& j) {
      auto [cert, trace] = picard_iterate(spec, grid, j.n, j.sign, std::nullopt, popts, opts);
      j.cert = std::move(cert);
      j.trace = std::move(trace);
    });
  });
  collect(r, jobs);
  r.timings.emplace_back("solve", seconds_since(t0));
  add_distinctness(r);

  if (o.command == Command::oracle) {
    if (grid.kind() != GridKind::dirichlet_1d) throw ConfigError("oracle needs a dirichlet-1d grid");
    t0 = Clock::now();
    run_oracle(r, zero_gradient_slice(spec), grid, o.threads);
    r.timings.emplace_back("oracle", seconds_since(t0));
  }
}

void run_hamiltonian(RunReport& r, const RunOptions& o) {
  const RunConfig& c = r.config;
  if (o.command == Command::oracle) throw ConfigError("oracle needs a dirichlet-1d grid");
  const HamiltonianSpec spec = build_hamiltonian_spec(c);
  const Grid grid = Grid::periodic_1d(c.grid.k_list.front(), c.grid.period, c.grid.cells_per_period);
  const MinimizeOptions opts = minimize_options(c);
  const PeriodicOptions popts = periodic_options(c);

  auto t0 = Clock::now();
  r.hypotheses = validate_hypotheses(spec, grid, validation_options(c));
  r.timings.emplace_back("validate", seconds_since(t0));

  const int n = c.windows.count - 1;
  t0 = Clock::now();
  try {
    r.gate = alpha_threshold(spec, n, popts.t_samples);
  } catch (const HypothesisError& e) {
    r.errors.push_back({"hypothesis", e.what(), n, std::nullopt});
  }
  r.timings.emplace_back("gate", seconds_since(t0));
  if (o.command == Command::validate || !r.gate) return;
  if (!r.gate->passed) {
    r.errors.push_back({"hypothesis", spec.name + ": coercivity gate fails: " + r.gate->inequality, n,
                        std::nullopt});
    return;
  }

  // Each sign is an independent limit study; run them on separate workers.
  const std::vector<Sign> signs = signs_of(c.sign);
  std::vector<std::optional<ConvergenceReport>> parts(signs.size());
  std::vector<std::optional<WindowError>> failures(signs.size());
  t0 = Clock::now();
  parallel_for(signs.size(), o.threads, [&](std::size_t i) {
    try {
      parts[i] = limit_study(spec, n, c.grid.k_list, c.grid.compact_a, c.grid.compact_b, popts,
                             opts, {signs[i]});
    } catch (const NumericError& e) {
      failures[i] = WindowError{"numeric", e.what(), n, signs[i]};
    } catch (const HypothesisError& e) {
      failures[i] = WindowError{"hypothesis", e.what(), n, signs[i]};
    }
  });
  r.timings.emplace_back("limit_study", seconds_since(t0));

  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (failures[i]) r.errors.push_back(*failures[i]);
    if (!parts[i]) continue;
    if (!r.convergence) {
      r.convergence = *parts[i];
      r.convergence->members.clear();
    }
    r.convergence->uniform_bound_M = std::max(r.convergence->uniform_bound_M, parts[i]->uniform_bound_M);
    r.convergence->derivative_bound_c =
        std::max(r.convergence->derivative_bound_c, parts[i]->derivative_bound_c);
    for (auto& m : parts[i]->members) r.convergence->members.push_back(std::move(m));
  }
  if (r.convergence) {
    for (const auto& m : r.convergence->members) {
      for (const auto& cert : m.certificates) r.certificates.push_back(cert);
    }
  }
  // Members live on different grids; only the Dirichlet ladders get a distinctness report.
}

json check_json(const HypothesisCheck& c) {
  return {{"name", c.name},
          {"hypothesis", c.hypothesis},
          {"passed", c.passed},
          {"worst_violation", c.worst_violation},
          {"location", c.location},
          {"detail", c.detail}};
}

json window_json(const Window& w) {
  return {{"n", w.n}, {"sign", to_string(w.sign)}, {"lo", w.lo}, {"hi", w.hi}, {"witness", w.witness}};
}

json certificate_json(const SolutionCertificate& c) {
  const Grid& g = c.solution.grid();
  json grid = {{"kind", to_string(g.kind())}, {"x_lo", g.x_lo()}, {"x_hi", g.x_hi()}};
  if (g.is_2d()) {
    grid["y_lo"] = g.y_lo();
    grid["y_hi"] = g.y_hi();
    grid["cells_x"] = g.cells_x();
    grid["cells_y"] = g.cells_y();
  } else if (g.is_dirichlet()) {
    grid["cells_x"] = g.cells_x();
  } else {
    grid["k"] = g.k();
    grid["period"] = g.period();
    grid["cells_per_period"] = g.cells_per_period();
  }
  json j = {{"problem", to_string(c.problem)},
            {"spec_name", c.spec_name},
            {"window", window_json(c.window)},
            {"grid", grid},
            {"energy", c.energy},
            {"energy_negative", c.energy_negative},
            {"seed_energy", c.seed_energy},
            {"trial_energy", c.trial_energy ? json(*c.trial_energy) : json(nullptr)},
            {"window_check",
             {{"lower_ok", c.window_check.lower_ok},
              {"upper_ok", c.window_check.upper_ok},
              {"worst_low", c.window_check.worst_low},
              {"worst_high", c.window_check.worst_high},
              {"min_value", c.window_check.min_value},
              {"max_value", c.window_check.max_value}}},
            {"window_tol", c.window_tol},
            {"policy",
             {{"lower_asserted", c.policy.lower_asserted},
              {"upper_asserted", c.policy.upper_asserted},
              {"energy_asserted", c.policy.energy_asserted}}},
            {"truncated_residual", c.truncated_residual},
            {"original_residual", c.original_residual},
            {"residual_tol", c.residual_tol},
            {"sup_norm", c.sup_norm},
            {"nontrivial_tol", c.nontrivial_tol},
            {"nontrivial", c.nontrivial},
            {"converged", c.converged},
            {"iterations", c.iterations},
            {"empirical", c.empirical},
            {"failed_assertions", c.failed_assertions()},
            {"passed", c.passed()},
            {"solution", c.solution.vector()}};
  return j;
}

json trace_json(const IterationTrace& t) {
  return {{"n", t.n},
          {"sign", to_string(t.sign)},
          {"increments", t.increments},
          {"ratios", t.ratios},
          {"theoretical_k", t.theoretical_k ? json(*t.theoretical_k) : json(nullptr)},
          {"empirical", t.empirical},
          {"converged", t.converged},
          {"iterations", t.iterations},
          {"ratio_slack", t.ratio_slack},
          {"ratios_within_bound", t.ratios_within_bound},
          {"geometric_decay", t.geometric_decay},
          {"fixed_point_residual", t.fixed_point_residual},
          {"c_residual", t.c_residual},
          {"residual_bound", t.residual_bound}};
}

json gate_json(const AlphaGate& g) {
  return {{"n", g.n},
          {"alpha", g.alpha},
          {"alpha_gamma", g.alpha_gamma},
          {"b2", g.b2},
          {"passed", g.passed},
          {"inequality", g.inequality}};
}

json member_json(const MemberStudy& m) {
  return {{"member", m.member},
          {"window", 2 * m.member},
          {"sign", to_string(m.sign)},
          {"k_list", m.k_list},
          {"sup_norms", m.sup_norms},
          {"max_du", m.max_du},
          {"max_ddu", m.max_ddu},
          {"bound_M", m.bound_M},
          {"derivative_bound_c", m.derivative_bound_c},
          {"uniform_bound_ok", m.uniform_bound_ok},
          {"derivative_bound_ok", m.derivative_bound_ok},
          {"c1_distances", m.c1_distances},
          {"stable", m.stable},
          {"instability", m.instability},
          {"limit_t", m.limit_t},
          {"limit_candidate", m.limit_candidate},
          {"limit_residual", m.limit_residual},
          {"integral_identity_discrepancy", m.integral_identity_discrepancy}};
}

json convergence_json(const ConvergenceReport& c) {
  json members = json::array();
  for (const auto& m : c.members) members.push_back(member_json(m));
  return {{"k_list", c.k_list},
          {"compact_a", c.compact_a},
          {"compact_b", c.compact_b},
          {"cells_per_period", c.cells_per_period},
          {"uniform_bound_M", c.uniform_bound_M},
          {"derivative_bound_c", c.derivative_bound_c},
          {"fd_slack", c.fd_slack},
          {"gate", gate_json(c.gate)},
          {"matching", c.matching},
          {"members", members}};
}

json distinctness_json(const SignedDistinctness& s) {
  return {{"sign", to_string(s.sign)},
          {"linf_distance", s.report.linf_distance},
          {"separated", s.report.separated},
          {"min_distance", s.report.min_distance},
          {"sup_norms_increasing", s.report.sup_norms_increasing},
          {"has_duplicates", s.report.has_duplicates}};
}

json oracle_json(const OracleMatch& m) {
  json sols = json::array();
  for (const auto& s : m.solutions) {
    sols.push_back({{"initial_slope", s.initial_slope},
                    {"boundary_miss", s.boundary_miss},
                    {"polished", s.polished},
                    {"min_value", s.min_value},
                    {"max_value", s.max_value}});
  }
  return {{"n", m.n},
          {"sign", to_string(m.sign)},
          {"certificate", m.certificate},
          {"solutions", sols},
          {"best_distance", std::isfinite(m.best_distance) ? json(m.best_distance) : json(nullptr)},
          {"match_tol", m.match_tol},
          {"matched", m.matched}};
}

bool trace_ok(const IterationTrace& t) {
  if (!t.converged) return false;
  if (!t.theoretical_k) return true;
  return t.ratios_within_bound && t.geometric_decay && t.fixed_point_residual <= t.residual_bound;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
  if (!out) throw Error("write failed for " + p.string());
}

/// Truncated nonlinearity evaluated along a certificate's profile.
std::vector<double> profile_f(const RunConfig& cfg, const SolutionCertificate& cert) {
  const Grid& g = cert.solution.grid();
  const int n = cert.window.n;
  const Sign s = cert.window.sign;
  std::vector<double> out(g.dof());
  if (cfg.problem == ProblemClass::elliptic) {
    const TruncatedNonlinearity tr = truncate(build_elliptic_spec(cfg), n, s);
    for (std::size_t i = 0; i < g.dof(); ++i) out[i] = tr.value(g.node(i), cert.solution[i]);
  } else if (cfg.problem == ProblemClass::convection) {
    const TruncatedNonlinearity tr = truncate(build_convection_spec(cfg), n, s);
    const auto xi = node_gradient_magnitudes(g, cert.solution);
    for (std::size_t i = 0; i < g.dof(); ++i) out[i] = tr.value(g.node(i), cert.solution[i], xi[i]);
  } else {
    const TruncatedNonlinearity tr = truncate(build_hamiltonian_spec(cfg), n, s);
    for (std::size_t i = 0; i < g.dof(); ++i) out[i] = tr.value(g.node(i), cert.solution[i]);
  }
  return out;
}

}  // namespace

int exit_code_of(const RunReport& r) {
  for (const auto& e : r.errors) {
    if (e.kind == "numeric") return 3;
  }
  if (!r.errors.empty()) return 1;
  const bool lenient = r.config.spec.empirical;
  if (r.hypotheses && !r.hypotheses->passed() && !lenient) return 1;
  if (r.gate && !r.gate->passed) return 1;
  for (const auto& c : r.certificates) {
    if (!c.passed()) return 1;
  }
  for (const auto& t : r.traces) {
    if (!trace_ok(t)) return 1;
  }
  if (r.convergence) {
    for (const auto& m : r.convergence->members) {
      if (!m.uniform_bound_ok || !m.derivative_bound_ok) return 1;
    }
  }
  for (const auto& m : r.oracle) {
    if (!m.matched) return 1;
  }
  return 0;
}

RunReport run(const RunConfig& config, const RunOptions& options) {
  if (options.threads < 1) throw ConfigError("--threads must be positive");
  validate_config(config);
  RunReport r;
  r.config = config;
  r.command = options.command;
  const auto t0 = Clock::now();
  if (options.command == Command::oracle && config.grid.kind != GridKind::dirichlet_1d) {
    throw ConfigError("oracle needs a dirichlet-1d grid");
  }
  switch (config.problem) {
    case ProblemClass::elliptic: run_elliptic(r, options); break;
    case ProblemClass::convection: run_convection(r, options); break;
    case ProblemClass::hamiltonian: run_hamiltonian(r, options); break;
  }
  r.timings.emplace_back("total", seconds_since(t0));
  r.exit_code = exit_code_of(r);
  return r;
}

std::string report_json(const RunReport& r, bool with_timings) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["artifact_version"] = kArtifactVersion;
  j["command"] = to_string(r.command);
  j["config_echo"] = json::parse(config_echo(r.config));
  if (r.hypotheses) {
    json checks = json::array();
    for (const auto& c : r.hypotheses->checks) checks.push_back(check_json(c));
    j["hypothesis_report"] = {
        {"spec_name", r.hypotheses->spec_name}, {"passed", r.hypotheses->passed()}, {"checks", checks}};
  } else {
    j["hypothesis_report"] = nullptr;
  }
  j["certificates"] = json::array();
  for (const auto& c : r.certificates) j["certificates"].push_back(certificate_json(c));
  j["iteration_traces"] = json::array();
  for (const auto& t : r.traces) j["iteration_traces"].push_back(trace_json(t));
  j["gate"] = r.gate ? gate_json(*r.gate) : json(nullptr);
  j["convergence_report"] = r.convergence ? convergence_json(*r.convergence) : json(nullptr);
  j["distinctness"] = json::array();
  for (const auto& d : r.distinctness) j["distinctness"].push_back(distinctness_json(d));
  j["oracle"] = json::array();
  for (const auto& m : r.oracle) j["oracle"].push_back(oracle_json(m));
  j["errors"] = json::array();
  for (const auto& e : r.errors) {
    j["errors"].push_back({{"kind", e.kind},
                           {"message", e.message},
                           {"n", e.n},
                           {"sign", e.sign ? json(to_string(*e.sign)) : json(nullptr)}});
  }
  if (with_timings) {
    j["timings"] = json::object();
    for (const auto& [name, secs] : r.timings) j["timings"][name] = secs;
  }
  j["exit_code"] = r.exit_code;
  return j.dump(2) + "\n";
}

std::string profile_file_name(const SolutionCertificate& cert, std::size_t index) {
  std::string name = "profile_" + std::to_string(index) + "_n" + std::to_string(cert.window.n) + "_" +
                     to_string(cert.window.sign);
  const Grid& g = cert.solution.grid();
  if (!g.is_dirichlet()) name += "_k" + std::to_string(g.k());
  return name + ".csv";
}

std::vector<std::filesystem::path> emit(const RunReport& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto& formats = r.config.output.formats;
  const auto wants = [&](const char* f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };
  std::vector<std::filesystem::path> written;

  if (wants("report")) {
    written.push_back(dir / "report.json");
    write_file(written.back(), report_json(r));
  }
  if (!wants("table")) return written;

  std::string summary =
      "index,problem,spec,n,sign,k,energy,trial_energy,truncated_residual,original_residual,"
      "sup_norm,min_value,max_value,window_lo,window_hi,lower_ok,upper_ok,converged,iterations,"
      "empirical,passed,profile\n";
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    const auto& c = r.certificates[i];
    const Grid& g = c.solution.grid();
    const std::string file = profile_file_name(c, i);
    summary += std::to_string(i) + "," + to_string(c.problem) + "," + c.spec_name + "," +
               std::to_string(c.window.n) + "," + to_string(c.window.sign) + "," +
               (g.is_dirichlet() ? "" : std::to_string(g.k())) + "," + format_double(c.energy) + "," +
               (c.trial_energy ? format_double(*c.trial_energy) : "") + "," +
               format_double(c.truncated_residual) + "," + format_double(c.original_residual) + "," +
               format_double(c.sup_norm) + "," + format_double(c.window_check.min_value) + "," +
               format_double(c.window_check.max_value) + "," + format_double(c.window.lo) + "," +
               format_double(c.window.hi) + "," + (c.window_check.lower_ok ? "1" : "0") + "," +
               (c.window_check.upper_ok ? "1" : "0") + "," + (c.converged ? "1" : "0") + "," +
               std::to_string(c.iterations) + "," + (c.empirical ? "1" : "0") + "," +
               (c.passed() ? "1" : "0") + "," + file + "\n";

    std::string table;
    if (g.is_2d()) {
      table = "x,y,u\n";
      for (std::size_t k = 0; k < g.dof(); ++k) {
        const Point p = g.node(k);
        table += format_double(p.x) + "," + format_double(p.y) + "," + format_double(c.solution[k]) + "\n";
      }
    } else {
      table = "x,u,du,f\n";
      const std::vector<double> du = central_derivative(g, c.solution);
      const std::vector<double> f = profile_f(r.config, c);
      for (std::size_t k = 0; k < g.dof(); ++k) {
        table += format_double(g.node(k).x) + "," + format_double(c.solution[k]) + "," +
                 format_double(du[k]) + "," + format_double(f[k]) + "\n";
      }
    }
    written.push_back(dir / file);
    write_file(written.back(), table);
  }
  written.push_back(dir / "certificates.csv");
  write_file(written.back(), summary);
  return written;
}

}  // namespace ladder
