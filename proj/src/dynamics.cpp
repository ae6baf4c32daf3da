#include <dirac_fields/dynamics.hpp>

#include <cmath>

namespace dirac_fields {

std::string to_string(Scheme scheme) {
  return scheme == Scheme::implicit_midpoint ? "implicit_midpoint" : "stormer_verlet";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "implicit_midpoint") return Scheme::implicit_midpoint;
  if (name == "stormer_verlet") return Scheme::stormer_verlet;
  throw std::invalid_argument("unknown integration scheme '" + name + "'");
}

void validate(const IntegratorSpec& spec) {
  require(spec.dt > 0.0 && std::isfinite(spec.dt), "time step dt must be positive");
  require(spec.newton_tol > 0.0, "newton_tol must be positive");
  require(spec.newton_max_iter >= 1, "newton_max_iter must be at least 1");
}

Index step_count(double T, double dt) {
  require(dt > 0.0, "time step dt must be positive");
  return static_cast<Index>(std::llround(T / dt));
}

}  // namespace dirac_fields
