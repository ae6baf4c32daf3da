#ifndef DIRAC_FIELDS_DENSITIES_HPP
#define DIRAC_FIELDS_DENSITIES_HPP

// Pointwise Lagrangian densities L(phi, nu, grad phi) with analytic partial
// derivatives, and external force models.

#include <dirac_fields/types.hpp>

#include <functional>
#include <memory>
#include <string>

namespace dirac_fields {

enum class DensityKind { wave, klein_gordon, sine_gordon, telegraph, custom };

std::string to_string(DensityKind kind);
DensityKind density_kind_from_string(const std::string& name);

struct DensityEval {
  double value = 0.0;
  double d_phi = 0.0;
  double d_nu = 0.0;
  /// Unused axes are zero.
  Eigen::Vector3d d_grad = Eigen::Vector3d::Zero();
};

/// User density: evaluated at position x with analytic partials.
struct CustomDensity {
  std::function<DensityEval(const Eigen::Vector3d& x, double phi, double nu, const Eigen::Vector3d& grad)> eval;
  /// Quadratic in nu with constant coefficient `mass`, no phi/nu coupling.
  bool separable = false;
  double mass = 1.0;
  /// Quadratic in (phi, nu, grad phi) jointly.
  bool quadratic = false;
};

/// Constant linear term <(F0, F0_b), phi> added to the discrete Lagrangian.
struct LinearTerm {
  Vector interior;
  Vector boundary;
};

struct DensitySpec {
  DensityKind kind = DensityKind::wave;
  double rho0 = 1.0;
  double tau = 1.0;
  double m = 0.0;
  double lambda = 0.0;
  int p = 3;
  double ell = 1.0;
  double c = 1.0;
  std::shared_ptr<const CustomDensity> custom;
  std::shared_ptr<const LinearTerm> linear;
};

DensitySpec wave_density(double rho0, double tau);
DensitySpec klein_gordon_density(double rho0, double tau, double m, double lambda, int p);
DensitySpec sine_gordon_density(double rho0, double tau);
DensitySpec telegraph_density(double ell, double c);

/// Registers a custom density. The analytic partials are checked against
/// central differences at a few deterministic points of dimension `dim`;
/// throws std::invalid_argument if they disagree by more than 1e-6.
DensitySpec custom_density(CustomDensity density, int dim);

/// Throws std::invalid_argument on non-positive rho0, tau, ell, c or p < 2.
void validate(const DensitySpec& spec);

DensityEval eval_density(const DensitySpec& spec, double phi, double nu, const Eigen::Vector3d& grad,
                         const Eigen::Vector3d& x = Eigen::Vector3d::Zero());

/// E = (dL/dnu) nu - L.
double energy_density(const DensitySpec& spec, double phi, double nu, const Eigen::Vector3d& grad,
                      const Eigen::Vector3d& x = Eigen::Vector3d::Zero());

struct DensityPoint {
  double phi = 0.0;
  double nu = 0.0;
  Eigen::Vector3d grad = Eigen::Vector3d::Zero();
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
};

/// Max over (d_phi, d_nu, d_grad) of |analytic - central difference| / max(1, |analytic|).
double fd_check(const DensitySpec& spec, const DensityPoint& point, double eps, int dim = 3);

/// Hessian of the density in the variables (phi, nu, grad_0 .. grad_{dim-1}),
/// by central differences (step eps) of the analytic first partials.
Matrix density_hessian(const DensitySpec& spec, const DensityPoint& point, int dim, double eps = 1e-7);

bool is_separable(const DensitySpec& spec);
bool is_quadratic(const DensitySpec& spec);
/// Coefficient of nu^2 / 2 for separable densities.
double kinetic_mass(const DensitySpec& spec);

/// Body force on configuration entries and boundary force on boundary
/// locations. Empty functions mean zero force.
struct ForceModel {
  std::function<Vector(double t, const Vector& phi, const Vector& nu)> body;
  std::function<Vector(double t, const Vector& phi, const Vector& nu)> boundary;

  bool empty() const { return !body && !boundary; }
  Vector body_at(double t, const Vector& phi, const Vector& nu, Index size) const;
  Vector boundary_at(double t, const Vector& phi, const Vector& nu, Index boundary_size) const;
};

ForceModel constant_force(Vector body, Vector boundary);

/// Folds constant forces into the Lagrangian as a linear term so that the
/// interior and boundary functional derivatives gain exactly (F0, F0_b).
DensitySpec constant_force_fold(const DensitySpec& spec, const Vector& body, const Vector& boundary);

/// Same, probing `force` for time and state dependence first; throws
/// std::invalid_argument if it is not constant.
DensitySpec constant_force_fold(const DensitySpec& spec, const ForceModel& force, Index size, Index boundary_size);

/// Returns (F0, F0_b) if `force` is constant in time and state, else throws.
std::pair<Vector, Vector> constant_force_values(const ForceModel& force, Index size, Index boundary_size);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_DENSITIES_HPP
