#include <dirac_fields/runner.hpp>

#include <fmt/format.h>

#include <Eigen/Core>

#include <filesystem>
#include <fstream>

namespace dirac_fields {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write '" + path.string() + "'");
  return out;
}

void write_scalar_fields(const std::filesystem::path& path, const ScalarLagrangian& lag, const TrajectorySample& s) {
  std::ofstream out = open_output(path);
  out << fmt::format("# t={:.17g}\n", s.t);
  out << "x,y,z,phi,nu\n";
  const Grid& g = lag.grid();
  for (Index i = 0; i < g.size(); ++i) {
    const Eigen::Vector3d x = g.coordinate(i);
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", x[0], x[1], x[2], s.state.phi[i], s.state.nu[i]);
  }
}

void write_edge_fields(const std::filesystem::path& path, const MaxwellLagrangian& lag, const TrajectorySample& s) {
  std::ofstream out = open_output(path);
  out << fmt::format("# t={:.17g}\n", s.t);
  out << "x,y,z,axis,A,E\n";
  const CubicalComplex& cx = lag.complex();
  for (Index e = 0; e < cx.count(1); ++e) {
    const Eigen::Vector3d x = cx.center(1, e);
    const Cell c = cx.cell(1, e);
    const int axis = c.axes == 1u ? 0 : (c.axes == 2u ? 1 : 2);
    out << fmt::format("{:.17g},{:.17g},{:.17g},{},{:.17g},{:.17g}\n", x[0], x[1], x[2], axis, s.state.phi[e],
                       -s.state.nu[e]);
  }
}

template <typename Sys, typename FieldWriter>
RunSummary run_system(const RunConfig& config, const Sys& sys, const std::filesystem::path& dir, FieldWriter fields) {
  std::ofstream energy = open_output(dir / "energy.csv");
  energy << "t,total_energy,body_power,boundary_power,balance_residual,dirac_residual,alpha_boundary_drift\n";

  RunSummary summary;
  RunOptions opts;
  opts.stride = config.output.stride;
  opts.keep_states = false;
  opts.on_sample = [&](const TrajectorySample& s) {
    const EnergyReport& e = s.energy;
    energy << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.t, e.total_energy,
                          e.body_power, e.boundary_power, e.balance_residual, s.dirac_residual,
                          s.alpha_boundary_drift);
    if (config.output.fields) fields(dir / fmt::format("fields_{:04d}.csv", summary.samples), s);
    summary.samples += 1;
    summary.final_time = s.t;
    summary.max_dirac_residual = std::max(summary.max_dirac_residual, s.dirac_residual);
    summary.max_abs_balance_residual = std::max(summary.max_abs_balance_residual, std::abs(e.balance_residual));
    summary.alpha_boundary_drift = s.alpha_boundary_drift;
  };
  const TrajectoryRecord rec = run(sys.lagrangian, sys.force, sys.initial, config.integrator, config.duration, opts);
  summary.steps = rec.steps;
  return summary;
}

}  // namespace

RunSummary write_run(const RunConfig& config, const std::string& directory) {
  validate(config);
  const std::filesystem::path dir(directory);
  std::filesystem::create_directories(dir);
  const System sys = build(config.system);

  RunSummary summary;
  if (const auto* s = std::get_if<ScalarSystem>(&sys)) {
    summary = run_system(config, *s, dir, [&](const std::filesystem::path& p, const TrajectorySample& smp) {
      write_scalar_fields(p, s->lagrangian, smp);
    });
  } else {
    const auto& m = std::get<MaxwellSystem>(sys);
    summary = run_system(config, m, dir, [&](const std::filesystem::path& p, const TrajectorySample& smp) {
      write_edge_fields(p, m.lagrangian, smp);
    });
  }
  std::ofstream meta = open_output(dir / "run_meta.json");
  meta << run_metadata(config, summary).dump(2) << "\n";
  return summary;
}

nlohmann::json run_metadata(const RunConfig& config, const RunSummary& s) {
  nlohmann::json j;
  j["config"] = to_json(config);
  j["versions"] = {
      {"dirac_fields", kVersion},
      {"eigen", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
      {"fmt", fmt::format("{}.{}.{}", FMT_VERSION / 10000, FMT_VERSION / 100 % 100, FMT_VERSION % 100)},
      {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                    NLOHMANN_JSON_VERSION_PATCH)},
  };
  j["seed"] = config.seed;
  j["summary"] = {{"steps", s.steps},
                  {"samples", s.samples},
                  {"final_time", s.final_time},
                  {"max_dirac_residual", s.max_dirac_residual},
                  {"max_abs_balance_residual", s.max_abs_balance_residual},
                  {"alpha_boundary_drift", s.alpha_boundary_drift}};
  return j;
}

}  // namespace dirac_fields
