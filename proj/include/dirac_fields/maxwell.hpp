#ifndef DIRAC_FIELDS_MAXWELL_HPP
#define DIRAC_FIELDS_MAXWELL_HPP

// Maxwell's equations in the temporal (Weyl) gauge on a cubical complex:
// the potential A and its velocity nu are edge cochains, E = -nu, B = d A,
// and
//   L_h(A, nu) = 1/2 nu^T *1 nu - 1/2 (dA)^T *2 (dA) + <(J0, J0_b), A>
// with the last term present only after folding a constant current.

#include <dirac_fields/dec.hpp>
#include <dirac_fields/densities.hpp>
#include <dirac_fields/energy.hpp>
#include <dirac_fields/lagrangian.hpp>

#include <memory>
#include <span>

namespace dirac_fields {

class MaxwellLagrangian {
public:
  explicit MaxwellLagrangian(CubicalComplex complex, std::shared_ptr<const LinearTerm> linear = nullptr);

  const CubicalComplex& complex() const { return complex_; }
  const Duality& duality() const { return complex_.duality(1); }
  Index size() const { return complex_.count(1); }
  const std::shared_ptr<const LinearTerm>& linear_term() const { return linear_; }

  double value(const Vector& A, const Vector& nu) const;
  FunctionalDerivatives functional_derivatives(const Vector& A, const Vector& nu) const;
  /// 1/2 (E, *1 E) + 1/2 (B, *2 B), minus the folded linear term.
  double energy(const Vector& A, const Vector& nu) const;
  SecondVariation second_variation(const Vector& A, const Vector& nu) const;

  bool separable() const { return true; }
  bool quadratic() const { return true; }
  Vector mass_diagonal() const { return complex_.hodge(1); }

private:
  void check(const Vector& A, const Vector& nu) const;

  CubicalComplex complex_;
  std::shared_ptr<const LinearTerm> linear_;
  SparseMatrix curl_curl_;
};

/// Same complex, with constant currents folded into the Lagrangian.
MaxwellLagrangian fold_constant_current(const MaxwellLagrangian& lag, const Vector& body, const Vector& boundary);
MaxwellLagrangian fold_constant_current(const MaxwellLagrangian& lag, const ForceModel& force);

struct MaxwellFields {
  Vector E;    // edges
  Vector B;    // faces
  Vector rho;  // vertices
};

/// E = -nu, B = d1 A, rho = -(d0^T *1 E) / *0.
MaxwellFields maxwell_step_quantities(const CubicalComplex& cx, const Vector& A, const Vector& nu);

/// Discrete divergence at vertices of an edge flux given as integrated dual
/// values (for example the body current as a force): -(d0^T j) / *0.
Vector dual_divergence(const CubicalComplex& cx, const Vector& j);

struct ChargeAudit {
  double residual = 0.0;  // infinity norm over interior vertices
  double scale = 1.0;     // max(1, (|rho0| + |rho1|) / dt, |div J|)
};

/// rho_dot + div J over interior vertices, with rho_dot = (rho1 - rho0) / dt
/// and J the body current used across the interval.
ChargeAudit charge_conservation_residual(const CubicalComplex& cx, const Vector& nu0, const Vector& nu1, double dt,
                                         const Vector& body_current);

/// Poynting balance over a window: energy 1/2 (E,*E) + 1/2 (B,*B), body power
/// -<E, J>, boundary power from the trace of E against the surface current.
EnergyReport poynting_audit(const MaxwellLagrangian& lag, const ForceModel& force, std::span<const TimedState> window,
                            PowerQuadrature q = PowerQuadrature::midpoint);

/// Tangential boundary residual *2 B on boundary edges (the boundary part of
/// -dL/dA) plus the surface current, i.e. the boundary momentum rate.
Vector perfect_conductor_residual(const MaxwellLagrangian& lag, const ForceModel& force, double t, const Vector& A,
                                  const Vector& nu);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_MAXWELL_HPP
