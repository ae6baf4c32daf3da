#include <dirac_fields/energy.hpp>
#include <dirac_fields/scalar_lagrangian.hpp>

namespace dirac_fields {

Vector local_balance_residual(const ScalarLagrangian& lag, const ForceModel& force, double t, const Vector& phi,
                              const Vector& nu, const Vector& phi_dot, const Vector& nu_dot) {
  const Grid& grid = lag.grid();
  const Index n = grid.size();
  require_size(phi_dot.size(), n, "phi_dot");
  require_size(nu_dot.size(), n, "nu_dot");
  const int dim = grid.dim();
  const auto e = lag.evaluate(phi, nu);
  const VectorField g = gradient(grid, lag.ops(), phi);
  const VectorField g_dot = gradient(grid, lag.ops(), phi_dot);
  const bool positional = lag.spec().kind == DensityKind::custom;

  Vector dE_dt(n);
  VectorField flux(n, dim);
  for (Index i = 0; i < n; ++i) {
    const DensityEval& ei = e[static_cast<std::size_t>(i)];
    DensityPoint pt;
    pt.phi = phi[i];
    pt.nu = nu[i];
    for (int a = 0; a < dim; ++a) pt.grad[a] = g(i, a);
    if (positional) pt.x = grid.coordinate(i);
    const Matrix h = density_hessian(lag.spec(), pt, dim);
    // E = L_nu nu - L, so dE = (L_nu,phi nu - L_phi) dphi + L_nu,nu nu dnu + (L_nu,g nu - L_g) dg.
    double s = (h(1, 0) * nu[i] - ei.d_phi) * phi_dot[i] + h(1, 1) * nu[i] * nu_dot[i];
    for (int a = 0; a < dim; ++a) {
      s += (h(1, 2 + a) * nu[i] - ei.d_grad[a]) * g_dot(i, a);
      flux(i, a) = ei.d_grad[a] * nu[i];
    }
    dE_dt[i] = s;
  }
  const Vector body = force.body_at(t, phi, nu, n);
  return dE_dt + divergence(grid, lag.ops(), flux) - body.cwiseProduct(nu);
}

}  // namespace dirac_fields
