#include <dirac_fields/convergence.hpp>
#include <dirac_fields/runner.hpp>
#include <dirac_fields/verify.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

std::string output_directory(const dirac_fields::RunConfig& config) {
  if (const char* env = std::getenv("DIRAC_FIELDS_OUT"); env && *env) return env;
  return config.output.directory;
}

int cmd_run(const std::string& path) {
  dirac_fields::RunConfig config;
  try {
    config = dirac_fields::load_config(path);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  }
  const std::string dir = output_directory(config);
  try {
    const dirac_fields::RunSummary s = dirac_fields::write_run(config, dir);
    fmt::print("{} steps, {} records written to {}\n", s.steps, s.samples, dir);
    fmt::print("max dirac residual {:.3e}, max |balance residual| {:.3e}, boundary drift {:.3e}\n",
               s.max_dirac_residual, s.max_abs_balance_residual, s.alpha_boundary_drift);
  } catch (const dirac_fields::NumericalFailure& e) {
    fmt::print(stderr, "numerical failure at step {} ({} iterations, residual {:.3e}): {}\n", e.step(),
               e.iterations(), e.residual(), e.what());
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  }
  return kOk;
}

int cmd_verify(const std::vector<std::string>& suites, std::uint64_t seed) {
  std::vector<dirac_fields::CheckResult> results;
  try {
    results = dirac_fields::run_verify(suites, seed);
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  } catch (const dirac_fields::NumericalFailure& e) {
    fmt::print(stderr, "numerical failure at step {}: {}\n", e.step(), e.what());
    return kNumericalError;
  }
  fmt::print("seed {}\n", seed);
  fmt::print("{:<12} {:<62} {:>11} {:>11}  {}\n", "suite", "check", "measured", "tolerance", "result");
  bool all = true;
  for (const auto& r : results) {
    fmt::print("{:<12} {:<62} {:>11.3e} {:>11.3e}  {}\n", r.suite, r.name, r.measured, r.tolerance,
               r.pass ? "PASS" : "FAIL");
    all = all && r.pass;
  }
  fmt::print("{} checks, {}\n", results.size(), all ? "all passed" : "FAILURES");
  return all ? kOk : kFailed;
}

int cmd_convergence(const std::string& path, int levels, int jobs) {
  dirac_fields::RunConfig config;
  try {
    config = dirac_fields::load_config(path);
    dirac_fields::require(levels >= 3, "--levels must be at least 3");
    dirac_fields::require(config.oracle.has_value(), "no analytic oracle configured for this system");
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  }
  const std::string dir = output_directory(config);
  try {
    const dirac_fields::ConvergenceResult r = dirac_fields::convergence_study(config, levels, jobs);
    std::filesystem::create_directories(dir);
    dirac_fields::write_convergence_csv((std::filesystem::path(dir) / "convergence.csv").string(), r);
    fmt::print("{:>5} {:>12} {:>12} {:>8} {:>12} {:>12} {:>8} {:>8}\n", "level", "h", "dt", "steps", "L2 error",
               "max error", "L2 ord", "max ord");
    for (std::size_t l = 0; l < r.levels.size(); ++l) {
      const auto& e = r.levels[l];
      const std::string o2 = l ? fmt::format("{:.3f}", r.order_l2[l - 1]) : "";
      const std::string om = l ? fmt::format("{:.3f}", r.order_max[l - 1]) : "";
      fmt::print("{:>5} {:>12.5e} {:>12.5e} {:>8} {:>12.5e} {:>12.5e} {:>8} {:>8}\n", e.level, e.h, e.dt, e.steps,
                 e.error_l2, e.error_max, o2, om);
    }
  } catch (const dirac_fields::NumericalFailure& e) {
    fmt::print(stderr, "numerical failure at step {}: {}\n", e.step(), e.what());
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving simulation of Lagrange-Dirac field systems with boundary energy flow"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run a configured system and write energy.csv, fields and run_meta.json");
  run->add_option("config", run_config, "JSON configuration")->required();

  std::vector<std::string> suites;
  std::uint64_t seed = 20240601;
  auto* verify = app.add_subcommand("verify", "Run property suites (all if none named)");
  verify->add_option("suites", suites, "sbp pairing dirac lemma38 lemma46 energy maxwell equivalence");
  verify->add_option("--seed", seed, "Seed for the randomized draws");

  std::string conv_config;
  int levels = 3;
  int jobs = 1;
  auto* conv = app.add_subcommand("convergence", "Refinement study against the configured analytic oracle");
  conv->add_option("config", conv_config, "JSON configuration with an oracle section")->required();
  conv->add_option("--levels", levels, "Number of refinement levels (at least 3)");
  conv->add_option("--jobs", jobs, "Levels run concurrently")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*run) return cmd_run(run_config);
  if (*verify) return cmd_verify(suites, seed);
  return cmd_convergence(conv_config, levels, jobs);
}
