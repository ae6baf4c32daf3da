#ifndef DIRAC_FIELDS_ENERGY_HPP
#define DIRAC_FIELDS_ENERGY_HPP

// Energy, power and balance audits. The balance residual of an interval is
//   (E(t1) - E(t0)) / (t1 - t0) - body_power - boundary_power
// with body power <(F, 0), nu> and boundary power <(0, F_b), nu>.

#include <dirac_fields/densities.hpp>
#include <dirac_fields/lagrangian.hpp>

#include <span>

namespace dirac_fields {

class ScalarLagrangian;

struct EnergyReport {
  double time = 0.0;
  double total_energy = 0.0;
  double body_power = 0.0;
  double boundary_power = 0.0;
  double balance_residual = 0.0;
};

/// Where the power of an interval is sampled: at the averaged state and mid
/// time (consistent with the implicit midpoint rule), or as the mean of the
/// endpoint powers.
enum class PowerQuadrature { midpoint, trapezoidal };

struct TimedState {
  double t = 0.0;
  Vector phi;
  Vector nu;
};

struct Power {
  double body = 0.0;
  double boundary = 0.0;
};

template <FieldLagrangian L>
double total_energy(const L& lag, const Vector& phi, const Vector& nu) {
  return lag.energy(phi, nu);
}

/// Power delivered by the forces `body`, `boundary` against velocity nu.
inline Power force_power(const Duality& d, const Vector& body, const Vector& boundary, const Vector& nu) {
  Power p;
  p.body = pair(d, RestrictedCovector<>{body, Vector::Zero(d.boundary_size())}, nu);
  p.boundary = pair(d, RestrictedCovector<>{Vector::Zero(d.size()), boundary}, nu);
  return p;
}

template <FieldLagrangian L>
Power force_power(const L& lag, const ForceModel& force, double t, const Vector& phi, const Vector& nu) {
  const Duality& d = lag.duality();
  return force_power(d, force.body_at(t, phi, nu, d.size()), force.boundary_at(t, phi, nu, d.boundary_size()), nu);
}

template <FieldLagrangian L>
Power interval_power(const L& lag, const ForceModel& force, const TimedState& a, const TimedState& b,
                     PowerQuadrature q) {
  if (q == PowerQuadrature::midpoint) {
    const Vector phi = 0.5 * (a.phi + b.phi);
    const Vector nu = 0.5 * (a.nu + b.nu);
    return force_power(lag, force, 0.5 * (a.t + b.t), phi, nu);
  }
  const Power pa = force_power(lag, force, a.t, a.phi, a.nu);
  const Power pb = force_power(lag, force, b.t, b.phi, b.nu);
  return {0.5 * (pa.body + pb.body), 0.5 * (pa.boundary + pb.boundary)};
}

/// Audit over a window of consecutive states: the energy change across the
/// window against the time-averaged power of its intervals. The report is
/// stamped with the last time and energy of the window.
template <FieldLagrangian L>
EnergyReport global_balance_audit(const L& lag, const ForceModel& force, std::span<const TimedState> window,
                                  PowerQuadrature q = PowerQuadrature::midpoint) {
  require(window.size() >= 2, "energy balance audit needs at least two states");
  const double e0 = total_energy(lag, window.front().phi, window.front().nu);
  const double e1 = total_energy(lag, window.back().phi, window.back().nu);
  const double span_t = window.back().t - window.front().t;
  require(span_t > 0.0, "energy balance audit window must advance in time");
  double work_body = 0.0, work_boundary = 0.0;
  for (std::size_t k = 1; k < window.size(); ++k) {
    const double dt = window[k].t - window[k - 1].t;
    const Power p = interval_power(lag, force, window[k - 1], window[k], q);
    work_body += dt * p.body;
    work_boundary += dt * p.boundary;
  }
  EnergyReport r;
  r.time = window.back().t;
  r.total_energy = e1;
  r.body_power = work_body / span_t;
  r.boundary_power = work_boundary / span_t;
  r.balance_residual = (e1 - e0) / span_t - r.body_power - r.boundary_power;
  return r;
}

/// Pointwise residual of the local balance law
///   d/dt E = -div((dL/dgrad phi) nu) + F nu
/// with d/dt E expanded by the chain rule from (phi_dot, nu_dot).
Vector local_balance_residual(const ScalarLagrangian& lag, const ForceModel& force, double t, const Vector& phi,
                              const Vector& nu, const Vector& phi_dot, const Vector& nu_dot);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_ENERGY_HPP
