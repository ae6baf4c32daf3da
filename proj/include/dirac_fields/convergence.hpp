#ifndef DIRAC_FIELDS_CONVERGENCE_HPP
#define DIRAC_FIELDS_CONVERGENCE_HPP

// Refinement studies against the closed-form oracles. Level l halves the
// mesh spacing and the time step l times relative to the configured run.

#include <dirac_fields/config.hpp>

#include <string>
#include <vector>

namespace dirac_fields {

struct LevelError {
  int level = 0;
  double h = 0.0;
  double dt = 0.0;
  Index steps = 0;
  double t_final = 0.0;
  /// Quadrature-weighted L2 error of phi (or A) at the final time.
  double error_l2 = 0.0;
  double error_max = 0.0;
};

struct ConvergenceResult {
  std::vector<LevelError> levels;
  /// log2(e_l / e_{l+1}); one entry fewer than levels.
  std::vector<double> order_l2;
  std::vector<double> order_max;
};

/// Configuration refined `level` times in space and time.
RunConfig refine(const RunConfig& base, int level, bool space = true, bool time = true);

/// Runs the configuration from the oracle's initial data and measures the
/// error at the final time. Requires config.oracle.
LevelError measure_error(const RunConfig& config);

double observed_order(double coarse, double fine);

/// levels >= 3; `jobs` runs levels concurrently.
ConvergenceResult convergence_study(const RunConfig& base, int levels, int jobs = 1);

void write_convergence_csv(const std::string& path, const ConvergenceResult& result);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_CONVERGENCE_HPP
