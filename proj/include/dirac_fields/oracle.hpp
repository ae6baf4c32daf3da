#ifndef DIRAC_FIELDS_ORACLE_HPP
#define DIRAC_FIELDS_ORACLE_HPP

// Brute-force references for the tests: dense finite-difference functional
// derivatives, a direct second-order integrator, a rank computation for the
// canonical Dirac structure, and closed-form solutions. Dense arithmetic
// throughout; the difference and quadrature matrices are rebuilt here from
// the grid geometry rather than taken from the SBP module.

#include <dirac_fields/densities.hpp>
#include <dirac_fields/grid.hpp>
#include <dirac_fields/lagrangian.hpp>
#include <dirac_fields/systems.hpp>

#include <array>
#include <vector>

namespace dirac_fields::oracle {

/// Dense second-order SBP pieces rebuilt from the grid's node counts and spacings.
struct DenseOperators {
  std::vector<Matrix> D;  // per axis, N x N
  Vector H;
  std::vector<Index> boundary_nodes;
  Vector boundary_weights;
};

DenseOperators dense_operators(const Grid& grid);

/// L_h evaluated densely, including a folded linear term if present.
double dense_lagrangian(const Grid& grid, const DenseOperators& ops, const DensitySpec& spec, const Vector& phi,
                        const Vector& nu);

/// Chain-rule directional derivative of L_h at (phi, nu) along (dphi, dnu).
double directional_derivative(const Grid& grid, const DensitySpec& spec, const Vector& phi, const Vector& nu,
                              const Vector& dphi, const Vector& dnu);
double directional_derivative(const Grid& grid, const DenseOperators& ops, const DensitySpec& spec,
                              const Vector& phi, const Vector& nu, const Vector& dphi, const Vector& dnu);

/// Central differences of L_h in every nodal direction, converted to the
/// restricted representation: interior entries divided by H at non-boundary
/// nodes; at boundary nodes the interior part comes from the dense formula
/// dL/dphi - sum_a D_a (dL/dgrad_a), and the boundary part is the remainder
/// divided by the boundary weight.
FunctionalDerivatives fd_functional_derivative(const Grid& grid, const DensitySpec& spec, const Vector& phi,
                                               const Vector& nu, double eps);

/// Midpoint rule applied to the second-order Lagrange-d'Alembert form
///   d/dt (H dL/dnu) = H dL/dphi + sum_a D_a^T H dL/dgrad_a + H F + lift(F_b)
/// with unknowns (phi, phi_dot), dense finite-difference Newton Jacobian.
/// Returns phi at every step (step 0 included).
std::vector<Vector> direct_el_integrator(const ScalarSystem& system, double dt, double T, double tol = 1e-13,
                                         int max_iter = 50);

struct DiracRankReport {
  Index fiber_dim = 0;
  Index dim_D = 0;
  Index dim_perp = 0;
  /// Largest principal angle between D and its orthogonal (pi/2 if dimensions differ).
  double max_angle = 0.0;
  bool equal = false;
};

/// Brute-force D versus its orthogonal complement on a 1D grid with n nodes
/// (n <= 6). The fiber T(T*V) (+) T*(T*V) is taken with efforts in the
/// algebraic dual of the tangent coordinates, and D is the graph of
/// dz -> Omega(dz, .) with Omega from the phase module. With drop > 0 the
/// first `drop` generators of D are discarded, giving a strict isotropic
/// subspace.
DiracRankReport dirac_rank_check(Index n, Index drop = 0);

/// Dimension of the null space of the Dirac pairing written with restricted
/// covectors, which is degenerate on a grid: a restricted covector has n + 2
/// entries but acts on the n nodal values only.
Index restricted_pairing_radical(Index n);

enum class AnalyticKind { standing_wave, sine_gordon_kink, cavity_mode };

std::string to_string(AnalyticKind kind);
AnalyticKind analytic_kind_from_string(const std::string& name);

struct AnalyticParams {
  // Standing wave cos(k pi x / length) cos(k pi c t / length), c = sqrt(tau / rho0).
  int k = 1;
  double length = 1.0;
  double rho0 = 1.0;
  double tau = 1.0;
  // Sine-Gordon kink 4 atan(exp((x - x0 - v t) / sqrt(1 - v^2))), unit rho0 and tau.
  double v = 0.0;
  double x0 = 0.0;
  // Cavity mode (1, 1, 0) on [0, Lx] x [0, Ly] x [0, Lz].
  std::array<double, 3> box{1.0, 1.0, 1.0};
  double amplitude = 1.0;
};

class AnalyticSolution {
public:
  AnalyticSolution(AnalyticKind kind, AnalyticParams params);

  AnalyticKind kind() const { return kind_; }
  const AnalyticParams& params() const { return params_; }

  /// Scalar solutions: field and time derivative at (t, x).
  double phi(double t, const Eigen::Vector3d& x) const;
  double nu(double t, const Eigen::Vector3d& x) const;
  /// Outward normal flux tau dphi/dx * n on a 1D boundary point (n = -1 or +1).
  double boundary_flux(double t, double x, double n) const;

  /// Cavity mode: vector potential and its time derivative.
  Eigen::Vector3d A(double t, const Eigen::Vector3d& x) const;
  Eigen::Vector3d A_dot(double t, const Eigen::Vector3d& x) const;
  double omega() const;

private:
  AnalyticKind kind_;
  AnalyticParams params_;
};

AnalyticSolution analytic(AnalyticKind kind, const AnalyticParams& params);

}  // namespace dirac_fields::oracle

#endif  // DIRAC_FIELDS_ORACLE_HPP
