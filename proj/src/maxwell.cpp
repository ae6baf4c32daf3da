#include <dirac_fields/maxwell.hpp>

namespace dirac_fields {

MaxwellLagrangian::MaxwellLagrangian(CubicalComplex complex, std::shared_ptr<const LinearTerm> linear)
    : complex_(std::move(complex)), linear_(std::move(linear)) {
  if (linear_) {
    require_size(linear_->interior.size(), complex_.count(1), "folded current");
    require_size(linear_->boundary.size(), duality().boundary_size(), "folded surface current");
  }
  const SparseMatrix& d1 = complex_.coboundary(1);
  curl_curl_ = SparseMatrix(d1.transpose()) * complex_.hodge(2).asDiagonal() * d1;
}

void MaxwellLagrangian::check(const Vector& A, const Vector& nu) const {
  require_size(A.size(), size(), "A");
  require_size(nu.size(), size(), "nu");
}

double MaxwellLagrangian::value(const Vector& A, const Vector& nu) const {
  check(A, nu);
  const Vector B = complex_.coboundary(1) * A;
  double v = 0.5 * nu.dot(complex_.hodge(1).cwiseProduct(nu)) - 0.5 * B.dot(complex_.hodge(2).cwiseProduct(B));
  if (linear_) v += pair(duality(), RestrictedCovector<>{linear_->interior, linear_->boundary}, A);
  return v;
}

FunctionalDerivatives MaxwellLagrangian::functional_derivatives(const Vector& A, const Vector& nu) const {
  check(A, nu);
  const Vector H = complex_.hodge(2).cwiseProduct(complex_.coboundary(1) * A);
  FunctionalDerivatives fd;
  fd.d_phi = -split_coboundary_adjoint(complex_, 1, H);
  if (linear_) fd.d_phi += RestrictedCovector<>{linear_->interior, linear_->boundary};
  fd.d_nu.interior = complex_.hodge(1).cwiseProduct(nu);
  fd.d_nu.boundary = Vector::Zero(duality().boundary_size());
  return fd;
}

double MaxwellLagrangian::energy(const Vector& A, const Vector& nu) const {
  check(A, nu);
  const Vector B = complex_.coboundary(1) * A;
  double e = 0.5 * nu.dot(complex_.hodge(1).cwiseProduct(nu)) + 0.5 * B.dot(complex_.hodge(2).cwiseProduct(B));
  if (linear_) e -= pair(duality(), RestrictedCovector<>{linear_->interior, linear_->boundary}, A);
  return e;
}

SecondVariation MaxwellLagrangian::second_variation(const Vector& A, const Vector& nu) const {
  check(A, nu);
  SecondVariation sv;
  sv.phi_phi = -curl_curl_;
  sv.phi_nu.resize(size(), size());
  sv.nu_nu.resize(size(), size());
  std::vector<Eigen::Triplet<double>> t;
  for (Index i = 0; i < size(); ++i) t.emplace_back(i, i, complex_.hodge(1)[i]);
  sv.nu_nu.setFromTriplets(t.begin(), t.end());
  return sv;
}

MaxwellLagrangian fold_constant_current(const MaxwellLagrangian& lag, const Vector& body, const Vector& boundary) {
  auto term = std::make_shared<LinearTerm>();
  term->interior = body;
  term->boundary = boundary;
  if (lag.linear_term()) {
    require_size(body.size(), lag.linear_term()->interior.size(), "fold_constant_current");
    require_size(boundary.size(), lag.linear_term()->boundary.size(), "fold_constant_current");
    term->interior += lag.linear_term()->interior;
    term->boundary += lag.linear_term()->boundary;
  }
  return MaxwellLagrangian(lag.complex(), std::move(term));
}

MaxwellLagrangian fold_constant_current(const MaxwellLagrangian& lag, const ForceModel& force) {
  const auto [body, bnd] = constant_force_values(force, lag.size(), lag.duality().boundary_size());
  return fold_constant_current(lag, body, bnd);
}

Vector dual_divergence(const CubicalComplex& cx, const Vector& j) {
  require_size(j.size(), cx.count(1), "dual_divergence");
  return -(SparseMatrix(cx.coboundary(0).transpose()) * j).cwiseQuotient(cx.hodge(0));
}

MaxwellFields maxwell_step_quantities(const CubicalComplex& cx, const Vector& A, const Vector& nu) {
  require_size(A.size(), cx.count(1), "A");
  require_size(nu.size(), cx.count(1), "nu");
  MaxwellFields f;
  f.E = -nu;
  f.B = cx.coboundary(1) * A;
  f.rho = dual_divergence(cx, cx.hodge(1).cwiseProduct(f.E));
  return f;
}

ChargeAudit charge_conservation_residual(const CubicalComplex& cx, const Vector& nu0, const Vector& nu1, double dt,
                                         const Vector& body_current) {
  require(dt > 0.0, "charge audit needs a positive time step");
  const Vector rho0 = dual_divergence(cx, cx.hodge(1).cwiseProduct(-nu0));
  const Vector rho1 = dual_divergence(cx, cx.hodge(1).cwiseProduct(-nu1));
  const Vector rho_dot = (rho1 - rho0) / dt;
  const Vector div_j = dual_divergence(cx, body_current);
  ChargeAudit a;
  for (Index v : cx.interior_vertices()) {
    a.residual = std::max(a.residual, std::abs(rho_dot[v] + div_j[v]));
    a.scale = std::max({a.scale, (std::abs(rho0[v]) + std::abs(rho1[v])) / dt, std::abs(div_j[v])});
  }
  return a;
}

EnergyReport poynting_audit(const MaxwellLagrangian& lag, const ForceModel& force, std::span<const TimedState> window,
                            PowerQuadrature q) {
  return global_balance_audit(lag, force, window, q);
}

Vector perfect_conductor_residual(const MaxwellLagrangian& lag, const ForceModel& force, double t, const Vector& A,
                                  const Vector& nu) {
  const FunctionalDerivatives fd = lag.functional_derivatives(A, nu);
  return fd.d_phi.boundary + force.boundary_at(t, A, nu, lag.duality().boundary_size());
}

}  // namespace dirac_fields
