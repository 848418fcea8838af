#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "ladder/config.hpp"
#include "ladder/errors.hpp"
#include "ladder/run.hpp"

namespace {

void print_summary(const ladder::RunReport& r) {
  if (r.hypotheses) {
    for (const auto& c : r.hypotheses->checks) {
      std::printf("check %-24s %s  %s\n", c.name.c_str(), c.passed ? "ok  " : "FAIL", c.detail.c_str());
    }
  }
  if (r.gate) std::printf("gate: %s\n", r.gate->inequality.c_str());
  for (const auto& c : r.certificates) {
    const auto& g = c.solution.grid();
    std::printf("window %d %-5s", c.window.n, ladder::to_string(c.window.sign).c_str());
    if (!g.is_dirichlet()) std::printf(" k=%d", g.k());
    std::printf(" energy=% .10g sup=%.10g residual=%.3e %s\n", c.energy, c.sup_norm, c.truncated_residual,
                c.passed() ? "pass" : "FAIL");
  }
  for (const auto& t : r.traces) {
    std::printf("picard %d %-5s iterations=%d", t.n, ladder::to_string(t.sign).c_str(), t.iterations);
    if (t.theoretical_k) std::printf(" k=%.6g", *t.theoretical_k);
    std::printf("%s\n", t.empirical ? " (empirical)" : "");
  }
  for (const auto& m : r.oracle) {
    std::printf("oracle %d %-5s solutions=%zu distance=%.3e %s\n", m.n, ladder::to_string(m.sign).c_str(),
                m.solutions.size(), m.best_distance, m.matched ? "match" : "NO MATCH");
  }
  for (const auto& e : r.errors) std::printf("error (%s): %s\n", e.kind.c_str(), e.message.c_str());
  std::printf("exit code %d\n", r.exit_code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-solution ladder solver"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 1;
  std::string out_dir;
  ladder::Command command = ladder::Command::solve;

  auto add = [&](const char* name, const char* help, ladder::Command cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "YAML run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
    sub->callback([&command, cmd] { command = cmd; });
  };
  add("solve", "solve every configured window and write the report", ladder::Command::solve);
  add("validate", "check the nonlinearity hypotheses only", ladder::Command::validate);
  add("oracle", "solve 1D windows and compare against the shooting oracle", ladder::Command::oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    ladder::RunConfig config = ladder::parse_config(config_path);
    if (!out_dir.empty()) config.output.directory = out_dir;
    const ladder::RunReport report = ladder::run(config, {command, threads});
    const auto files = ladder::emit(report, config.output.directory);
    print_summary(report);
    for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
    return report.exit_code;
  } catch (const ladder::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ladder::UsageError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ladder::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
