#ifndef DIRAC_FIELDS_RUNNER_HPP
#define DIRAC_FIELDS_RUNNER_HPP

// Batch runs with file output:
//   energy.csv      t,total_energy,body_power,boundary_power,balance_residual,dirac_residual,alpha_boundary_drift
//   fields_NNNN.csv one per recorded sample when output.fields is set
//   run_meta.json   resolved configuration, versions and a run summary
// Numbers are written with 17 significant digits so that reruns of the same
// configuration produce identical bytes.

#include <dirac_fields/config.hpp>

#include <string>

namespace dirac_fields {

inline constexpr const char* kVersion = "0.1.0";

struct RunSummary {
  Index steps = 0;
  Index samples = 0;
  double final_time = 0.0;
  double max_dirac_residual = 0.0;
  double max_abs_balance_residual = 0.0;
  double alpha_boundary_drift = 0.0;
};

/// Builds and runs the configured system, writing the output files into
/// `directory` (created if missing). Numerical failures propagate as
/// NumericalFailure after the rows recorded so far have been flushed.
RunSummary write_run(const RunConfig& config, const std::string& directory);

nlohmann::json run_metadata(const RunConfig& config, const RunSummary& summary);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_RUNNER_HPP
