#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ladder/config.hpp"
#include "ladder/run.hpp"

using namespace ladder;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

const char* kSine = R"(
problem: elliptic
spec:
  builtin: sine-elliptic
  params: {a: 50}
grid:
  kind: dirichlet-1d
  x_hi: 20
  cells_x: 256
windows: {count: 3}
sign: both
)";

const char* kInlineSine = R"(
problem: elliptic
spec:
  inline:
    f:
      - coeff: 50
        factors: [{fn: sin, var: u}]
    F:
      - coeff: 50
        factors: []
      - coeff: -50
        factors: [{fn: cos, var: u}]
    ladder:
      mu: [0, 6.283185307179586]
      eta: [0, -6.283185307179586]
      beta: [3.141592653589793]
      gamma: [-3.141592653589793]
    growth_c: 50
grid:
  kind: dirichlet-1d
  x_hi: 20
  cells_x: 256
)";

const char* kGateFail = R"(
problem: hamiltonian
spec:
  builtin: sinusoidal-hamiltonian
  params: {a: 150}
grid:
  kind: periodic-1d
  k_list: [1]
  cells_per_period: 64
windows: {count: 2}
sign: both
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ladder_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("run") {
  TEST_CASE("sine ladder run with both signs") {
    const RunConfig c = parse_config_string(kSine);
    const RunReport r = run(c);
    REQUIRE(r.certificates.size() == 6);
    CHECK(r.exit_code == 0);
    CHECK(r.errors.empty());
    REQUIRE(r.hypotheses.has_value());
    CHECK(r.hypotheses->passed());
    REQUIRE(r.distinctness.size() == 2);
    for (const auto& d : r.distinctness) {
      CHECK(d.report.sup_norms_increasing);
      CHECK(d.report.min_distance >= 2 * pi - 0.01);
    }
    for (const auto& cert : r.certificates) CHECK(cert.energy_negative);
  }

  TEST_CASE("inline terms reproduce the builtin") {
    RunConfig builtin = parse_config_string(kSine);
    builtin.windows.count = 1;
    builtin.sign = SignChoice::plus;
    const RunReport a = run(builtin);
    const RunReport b = run(parse_config_string(kInlineSine));
    REQUIRE(a.certificates.size() == 1);
    REQUIRE(b.certificates.size() == 1);
    for (std::size_t i = 0; i < a.certificates[0].solution.size(); ++i) {
      CHECK(b.certificates[0].solution[i] == doctest::Approx(a.certificates[0].solution[i]).epsilon(1e-9));
    }
  }

  TEST_CASE("failing gate") {
    const RunReport r = run(parse_config_string(kGateFail));
    CHECK(r.exit_code == 1);
    CHECK(r.certificates.empty());
    REQUIRE(r.gate.has_value());
    CHECK_FALSE(r.gate->passed);
    const auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["gate"]["inequality"].get<std::string>().find(">=") != std::string::npos);
    CHECK(j["errors"].size() == 1);
  }

  TEST_CASE("determinism across repeats and thread counts") {
    RunConfig c = parse_config_string(kSine);
    c.windows.count = 2;
    const std::string a = report_json(run(c, {Command::solve, 1}), false);
    const std::string b = report_json(run(c, {Command::solve, 1}), false);
    const std::string t = report_json(run(c, {Command::solve, 3}), false);
    CHECK(a == b);
    CHECK(a == t);
  }

  TEST_CASE("emission formats") {
    RunConfig c = parse_config_string(kSine);
    c.windows.count = 1;
    c.output.formats = {"table"};
    const RunReport r = run(c);
    const fs::path dir = scratch("table");
    const auto files = emit(r, dir);
    CHECK(files.size() == r.certificates.size() + 1);
    CHECK_FALSE(fs::exists(dir / "report.json"));
    const std::string profile = slurp(dir / profile_file_name(r.certificates[0], 0));
    CHECK(profile.rfind("x,u,du,f\n", 0) == 0);
    const std::string summary = slurp(dir / "certificates.csv");
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);

    c.output.formats = {"report"};
    const RunReport r2 = run(c);
    const fs::path dir2 = scratch("report");
    CHECK(emit(r2, dir2).size() == 1);
    const auto j = nlohmann::json::parse(slurp(dir2 / "report.json"));
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["certificates"].size() == 2);
    for (const char* key : {"config_echo", "hypothesis_report", "iteration_traces", "convergence_report", "timings",
                            "artifact_version"}) {
      CHECK(j.contains(key));
    }
    // The echoed configuration parses back to the original.
    CHECK(parse_config_string(j["config_echo"].dump()) == c);
  }

  TEST_CASE("empty report gives header-only tables") {
    const RunReport r = run(parse_config_string(kSine), {Command::validate, 1});
    CHECK(r.exit_code == 0);
    CHECK(r.certificates.empty());
    const fs::path dir = scratch("empty");
    emit(r, dir);
    const std::string summary = slurp(dir / "certificates.csv");
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 1);
    CHECK(summary.rfind("index,", 0) == 0);
  }

  TEST_CASE("oracle command on a 1D grid") {
    RunConfig c = parse_config_string(kSine);
    c.windows.count = 1;
    c.oracle.integrator = OracleIntegrator::stencil;
    c.oracle.steps = 256;
    const RunReport r = run(c, {Command::oracle, 1});
    REQUIRE(r.oracle.size() == 2);
    for (const auto& m : r.oracle) {
      CHECK(m.matched);
      CHECK(m.best_distance <= 1e-7);
    }
    CHECK(r.exit_code == 0);
  }

  TEST_CASE("hamiltonian run flattens member certificates") {
    const RunConfig c = parse_config_string(R"(
problem: hamiltonian
spec: {builtin: sinusoidal-hamiltonian, params: {a: 250}}
grid: {kind: periodic-1d, k_list: [1, 2], cells_per_period: 64}
windows: {count: 1}
sign: both
)");
    const RunReport r = run(c);
    CHECK(r.exit_code == 0);
    REQUIRE(r.convergence.has_value());
    CHECK(r.convergence->members.size() == 2);
    CHECK(r.certificates.size() == 4);
  }
}
