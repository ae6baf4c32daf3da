#ifndef DIRAC_FIELDS_CONFIG_HPP
#define DIRAC_FIELDS_CONFIG_HPP

// JSON run configuration. Unknown keys are rejected so that typos surface as
// parse errors instead of silently falling back to defaults.

#include <dirac_fields/dynamics.hpp>
#include <dirac_fields/oracle.hpp>
#include <dirac_fields/systems.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace dirac_fields {

struct OutputSpec {
  std::string directory = "out";
  Index stride = 1;
  bool fields = false;
};

/// Closed-form reference for convergence studies. When present, the initial
/// data of the run is taken from it.
struct OracleSpec {
  oracle::AnalyticKind kind = oracle::AnalyticKind::standing_wave;
  oracle::AnalyticParams params;
};

struct RunConfig {
  SystemSpec system;
  IntegratorSpec integrator;
  double duration = 1.0;
  OutputSpec output;
  std::uint64_t seed = 0;
  std::optional<OracleSpec> oracle;
};

/// Throws std::invalid_argument (or nlohmann::json::exception) on schema errors.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Fully resolved configuration with every default filled in.
nlohmann::json to_json(const RunConfig& config);

void validate(const RunConfig& config);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_CONFIG_HPP
