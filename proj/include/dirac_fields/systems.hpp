#ifndef DIRAC_FIELDS_SYSTEMS_HPP
#define DIRAC_FIELDS_SYSTEMS_HPP

// Ready-made systems: vibrating membrane (linear wave), Klein-Gordon and
// sine-Gordon fields, the telegraph line driven by a boundary voltage, and
// the Maxwell cavity driven by currents.

#include <dirac_fields/expression.hpp>
#include <dirac_fields/maxwell.hpp>
#include <dirac_fields/scalar_lagrangian.hpp>

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dirac_fields {

enum class SystemKind { membrane, klein_gordon, sine_gordon, telegraph, maxwell };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& name);

/// Time signal given in closed form or as samples (linear interpolation,
/// held constant outside the sampled range).
struct Signal {
  Expression expression;
  std::vector<double> times;
  std::vector<double> values;

  bool sampled() const { return !times.empty(); }
  double operator()(double t) const;
};

struct SystemSpec {
  SystemKind kind = SystemKind::membrane;

  // Scalar systems: grid on a box.
  int dim = 1;
  std::vector<Interval> extents{Interval{0.0, 1.0}};
  std::vector<Index> nodes{65};
  // Maxwell: cubical complex.
  std::array<Index, 3> cells{8, 8, 8};
  std::array<Interval, 3> box{Interval{0, 1}, Interval{0, 1}, Interval{0, 1}};

  // Density parameters (subset used per kind).
  double rho0 = 1.0;
  double tau = 1.0;
  double m = 0.0;
  double lambda = 0.0;
  int p = 3;
  double ell = 1.0;
  double c = 1.0;

  // Scalar forcing: expressions in (x, y, z, t); empty means zero. The body
  // force is reduced by damping * nu.
  std::string body_force;
  std::string boundary_force;
  double damping = 0.0;
  // Telegraph: voltage applied at x = upper end.
  std::optional<Signal> voltage;

  // Maxwell forcing: current density and surface current components.
  std::array<std::string, 3> current;
  std::array<std::string, 3> surface_current;

  // Initial data.
  std::string phi0 = "0";
  std::string nu0 = "0";
  std::array<std::string, 3> A0{"0", "0", "0"};
  std::array<std::string, 3> A_dot0{"0", "0", "0"};

  /// Fold constant forces into the Lagrangian instead of applying them.
  bool fold_constant_force = false;
};

void validate(const SystemSpec& spec);

DensitySpec density_of(const SystemSpec& spec);

struct ScalarSystem {
  ScalarLagrangian lagrangian;
  ForceModel force;
  PontryaginPoint<> initial;
};

struct MaxwellSystem {
  MaxwellLagrangian lagrangian;
  ForceModel force;
  PontryaginPoint<> initial;
};

using System = std::variant<ScalarSystem, MaxwellSystem>;

/// Builds Lagrangian, forces and the initial state (momentum from the
/// Legendre transform, zero boundary momentum).
System build(const SystemSpec& spec);

/// Edge values of a vector field given per component: midpoint value of the
/// tangential component times the edge length.
Vector sample_edges(const CubicalComplex& cx, const std::array<Expression, 3>& field, double t);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_SYSTEMS_HPP
