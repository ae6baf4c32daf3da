#ifndef DIRAC_FIELDS_DYNAMICS_HPP
#define DIRAC_FIELDS_DYNAMICS_HPP

// Dirac differential, Legendre transform, the forced Lagrange-Dirac system
// and its time integration.
//
// The steppers work with the coordinate form of the momentum equation,
//   d/dt grad_nu L_h = grad_phi L_h + <(F, F_b), .>,
// in which the boundary part of the functional derivative and the boundary
// force enter through the boundary rows of the pairing (weak enforcement of
// the natural boundary condition). The momentum boundary part is kept at the
// Legendre value 0; the time integral of (dL/dphi)_b + F_b is accumulated
// separately and reported as the boundary drift.

#include <dirac_fields/densities.hpp>
#include <dirac_fields/energy.hpp>
#include <dirac_fields/lagrangian.hpp>
#include <dirac_fields/phase.hpp>

#include <Eigen/SparseLU>

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace dirac_fields {

enum class Scheme { implicit_midpoint, stormer_verlet };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct IntegratorSpec {
  Scheme scheme = Scheme::implicit_midpoint;
  double dt = 1e-3;
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
};

void validate(const IntegratorSpec& spec);

/// (phi, dL/dnu) together with the covector (-dL/dphi, nu).
struct DiracDifferentialValue {
  Vector base_phi;
  RestrictedCovector<> momentum_slot;
  PhaseCovector<> covector;
};

template <FieldLagrangian L>
PhasePoint<> legendre(const L& lag, const Vector& phi, const Vector& nu) {
  return {phi, lag.functional_derivatives(phi, nu).d_nu};
}

template <FieldLagrangian L>
DiracDifferentialValue dirac_differential(const L& lag, const Vector& phi, const Vector& nu) {
  const FunctionalDerivatives fd = lag.functional_derivatives(phi, nu);
  return {phi, fd.d_nu, PhaseCovector<>{-fd.d_phi, nu}};
}

/// State with momentum := legendre(phi, nu) and zero boundary momentum.
template <FieldLagrangian L>
PontryaginPoint<> initial_state(const L& lag, const Vector& phi, const Vector& nu) {
  require_size(phi.size(), lag.size(), "initial phi");
  require_size(nu.size(), lag.size(), "initial nu");
  require(phi.allFinite() && nu.allFinite(), "initial data must be finite");
  PontryaginPoint<> s{phi, nu, lag.functional_derivatives(phi, nu).d_nu};
  s.momentum.boundary.setZero();
  return s;
}

namespace detail {

inline double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

inline double relative(const Vector& residual, std::initializer_list<const Vector*> terms) {
  double scale = 1.0;
  for (const Vector* t : terms) scale = std::max(scale, max_abs(*t));
  return max_abs(residual) / scale;
}

}  // namespace detail

/// Residual of the forced Lagrange-Dirac system at (t, state) for the given
/// rates: phi_dot - nu, alpha - dL/dnu, alpha_b, alpha_dot - (dL/dphi + F),
/// alpha_b_dot - ((dL/dphi)_b + F_b). Each is measured in the infinity norm
/// relative to max(1, magnitude of its terms); the maximum is returned.
template <FieldLagrangian L>
double dirac_residual(const L& lag, const ForceModel& force, double t, const PontryaginPoint<>& s,
                      const PhaseTangent<>& rates) {
  const Duality& d = lag.duality();
  check_shapes(d, s.momentum.interior.size(), s.momentum.boundary.size(), "dirac_residual state");
  check_shapes(d, rates.dmomentum.interior.size(), rates.dmomentum.boundary.size(), "dirac_residual rates");
  require_size(rates.dphi.size(), d.size(), "dirac_residual rates");
  const FunctionalDerivatives fd = lag.functional_derivatives(s.phi, s.nu);
  const Vector F = force.body_at(t, s.phi, s.nu, d.size());
  const Vector Fb = force.boundary_at(t, s.phi, s.nu, d.boundary_size());

  const Vector rhs = fd.d_phi.interior + F;
  const Vector rhs_b = fd.d_phi.boundary + Fb;
  double r = detail::relative(rates.dphi - s.nu, {&rates.dphi, &s.nu});
  r = std::max(r, detail::relative(s.momentum.interior - fd.d_nu.interior, {&s.momentum.interior, &fd.d_nu.interior}));
  r = std::max(r, detail::relative(s.momentum.boundary - fd.d_nu.boundary, {&s.momentum.boundary}));
  r = std::max(r, detail::relative(rates.dmomentum.interior - rhs,
                                   {&rates.dmomentum.interior, &fd.d_phi.interior, &F}));
  r = std::max(r, detail::relative(rates.dmomentum.boundary - rhs_b,
                                   {&rates.dmomentum.boundary, &fd.d_phi.boundary, &Fb}));
  return r;
}

/// Rates that satisfy the evolution equations at (t, state), used where no
/// step is available (initial record).
template <FieldLagrangian L>
PhaseTangent<> system_rates(const L& lag, const ForceModel& force, double t, const PontryaginPoint<>& s) {
  const Duality& d = lag.duality();
  const FunctionalDerivatives fd = lag.functional_derivatives(s.phi, s.nu);
  PhaseTangent<> r;
  r.dphi = s.nu;
  r.dmomentum.interior = fd.d_phi.interior + force.body_at(t, s.phi, s.nu, d.size());
  r.dmomentum.boundary = fd.d_phi.boundary + force.boundary_at(t, s.phi, s.nu, d.boundary_size());
  return r;
}

/// (rates, dirac differential minus the force lift) as an element of the
/// Pontryagin fiber; it lies on the canonical Dirac structure iff the
/// kinematic and momentum equations hold.
template <FieldLagrangian L>
DiracElement<> dirac_graph_element(const L& lag, const ForceModel& force, double t, const PontryaginPoint<>& s,
                                   const PhaseTangent<>& rates) {
  const Duality& d = lag.duality();
  DiracDifferentialValue dd = dirac_differential(lag, s.phi, s.nu);
  dd.covector.pair_with_dphi.interior -= force.body_at(t, s.phi, s.nu, d.size());
  dd.covector.pair_with_dphi.boundary -= force.boundary_at(t, s.phi, s.nu, d.boundary_size());
  return {rates, dd.covector};
}

struct StepResult {
  PontryaginPoint<> state;
  /// State at the scheme's evaluation point (average of the endpoints).
  PontryaginPoint<> midpoint;
  double t_mid = 0.0;
  PhaseTangent<> rates;
  /// dt * ((dL/dphi)_b + F_b) at the evaluation point.
  Vector boundary_increment;
  /// Forces used by the step, at the evaluation point.
  Vector body_force;
  Vector boundary_force;
  int iterations = 0;
  double newton_residual = 0.0;
};

/// Time stepper bound to a Lagrangian and a force model. For quadratic
/// Lagrangians the midpoint Jacobian is factorized once and reused.
template <FieldLagrangian L>
class Stepper {
public:
  Stepper(const L& lag, const ForceModel& force, IntegratorSpec spec) : lag_(lag), force_(force), spec_(spec) {
    validate(spec_);
    if (spec_.scheme == Scheme::stormer_verlet)
      require(lag_.separable(), "stormer_verlet requires a density separable in nu with constant mass");
  }

  const IntegratorSpec& spec() const { return spec_; }

  StepResult step(double t, const PontryaginPoint<>& s, Index step_index = 0) {
    require_size(s.phi.size(), lag_.size(), "state phi");
    require_size(s.nu.size(), lag_.size(), "state nu");
    StepResult r = spec_.scheme == Scheme::implicit_midpoint ? midpoint_step(t, s, step_index) : verlet_step(t, s);
    if (!r.state.phi.allFinite() || !r.state.nu.allFinite())
      throw NumericalFailure("non-finite state after step " + std::to_string(step_index), step_index, r.iterations,
                             r.newton_residual);
    return r;
  }

private:
  Vector lin(const RestrictedCovector<>& c) const { return as_linear_form(lag_.duality(), c); }

  SparseMatrix jacobian(const Vector& phi1, const Vector& nu1, const Vector& phim, const Vector& num) const {
    const double dt = spec_.dt;
    const SecondVariation s1 = lag_.second_variation(phi1, nu1);
    const SecondVariation sm = lag_.second_variation(phim, num);
    SparseMatrix a = SparseMatrix(s1.phi_nu.transpose()) * 0.5 + s1.nu_nu * (1.0 / dt);
    SparseMatrix b = sm.phi_phi * (0.25 * dt) + sm.phi_nu * 0.5;
    SparseMatrix J = a - b;
    J.makeCompressed();
    return J;
  }

  void factorize(const SparseMatrix& J, Index step_index, int it) {
    lu_ = std::make_unique<Eigen::SparseLU<SparseMatrix>>();
    lu_->analyzePattern(J);
    lu_->factorize(J);
    if (lu_->info() != Eigen::Success) {
      lu_.reset();
      throw NumericalFailure("singular Newton Jacobian at step " + std::to_string(step_index), step_index, it,
                             std::nan(""));
    }
  }

  void finish(StepResult& r, const PontryaginPoint<>& s, double t, const Vector& phi1, const Vector& nu1,
              const FunctionalDerivatives& fd1, const FunctionalDerivatives& fdm, const Vector& Fm,
              const Vector& Fbm) const {
    const Duality& d = lag_.duality();
    const double dt = spec_.dt;
    r.state.phi = phi1;
    r.state.nu = nu1;
    r.state.momentum = {fd1.d_nu.interior, Vector::Zero(d.boundary_size())};
    r.midpoint.phi = 0.5 * (s.phi + phi1);
    r.midpoint.nu = 0.5 * (s.nu + nu1);
    r.midpoint.momentum = 0.5 * (s.momentum + r.state.momentum);
    r.t_mid = t + 0.5 * dt;
    r.body_force = Fm;
    r.boundary_force = Fbm;
    r.rates.dphi = (phi1 - s.phi) / dt;
    r.rates.dmomentum.boundary = fdm.d_phi.boundary + Fbm;
    r.rates.dmomentum.interior = (r.state.momentum.interior - s.momentum.interior) / dt -
                                 d.lift(r.rates.dmomentum.boundary).cwiseQuotient(d.interior_weight);
    r.boundary_increment = dt * r.rates.dmomentum.boundary;
  }

  StepResult midpoint_step(double t, const PontryaginPoint<>& s, Index step_index) {
    const Duality& d = lag_.duality();
    const double dt = spec_.dt;
    const double tm = t + 0.5 * dt;
    const Vector p0 = lin(lag_.functional_derivatives(s.phi, s.nu).d_nu);
    const bool reuse = lag_.quadratic();

    Vector nu1 = s.nu;
    StepResult r;
    for (int it = 1; it <= spec_.newton_max_iter; ++it) {
      const Vector phi1 = s.phi + (0.5 * dt) * (s.nu + nu1);
      const Vector phim = 0.5 * (s.phi + phi1);
      const Vector num = 0.5 * (s.nu + nu1);
      const FunctionalDerivatives fd1 = lag_.functional_derivatives(phi1, nu1);
      const FunctionalDerivatives fdm = lag_.functional_derivatives(phim, num);
      const Vector Fm = force_.body_at(tm, phim, num, d.size());
      const Vector Fbm = force_.boundary_at(tm, phim, num, d.boundary_size());
      const Vector R = (lin(fd1.d_nu) - p0) / dt - lin(fdm.d_phi) - lin(RestrictedCovector<>{Fm, Fbm});
      if (!R.allFinite())
        throw NumericalFailure("non-finite Newton residual at step " + std::to_string(step_index), step_index, it,
                               std::nan(""));
      if (!reuse || !lu_) factorize(jacobian(phi1, nu1, phim, num), step_index, it);
      const Vector delta = -lu_->solve(R);
      nu1 += delta;
      const double size = delta.cwiseAbs().maxCoeff() / std::max(1.0, nu1.cwiseAbs().maxCoeff());
      r.iterations = it;
      r.newton_residual = size;
      if (!(size <= spec_.newton_tol)) continue;

      const Vector phi1f = s.phi + (0.5 * dt) * (s.nu + nu1);
      const Vector phimf = 0.5 * (s.phi + phi1f);
      const Vector numf = 0.5 * (s.nu + nu1);
      const Vector Fmf = force_.body_at(tm, phimf, numf, d.size());
      const Vector Fbmf = force_.boundary_at(tm, phimf, numf, d.boundary_size());
      finish(r, s, t, phi1f, nu1, lag_.functional_derivatives(phi1f, nu1), lag_.functional_derivatives(phimf, numf),
             Fmf, Fbmf);
      return r;
    }
    throw NumericalFailure("Newton iteration did not converge at step " + std::to_string(step_index) + " after " +
                               std::to_string(r.iterations) + " iterations (last relative update " +
                               std::to_string(r.newton_residual) + ")",
                           step_index, r.iterations, r.newton_residual);
  }

  StepResult verlet_step(double t, const PontryaginPoint<>& s) {
    const Duality& d = lag_.duality();
    const double dt = spec_.dt;
    if (mass_.size() == 0) mass_ = lag_.mass_diagonal();

    const FunctionalDerivatives fd0 = lag_.functional_derivatives(s.phi, s.nu);
    const Vector F0 = force_.body_at(t, s.phi, s.nu, d.size());
    const Vector Fb0 = force_.boundary_at(t, s.phi, s.nu, d.boundary_size());
    const Vector nuh = s.nu + (0.5 * dt) * (lin(fd0.d_phi) + lin(RestrictedCovector<>{F0, Fb0})).cwiseQuotient(mass_);
    const Vector phi1 = s.phi + dt * nuh;
    const FunctionalDerivatives fdh = lag_.functional_derivatives(phi1, nuh);
    const Vector F1 = force_.body_at(t + dt, phi1, nuh, d.size());
    const Vector Fb1 = force_.boundary_at(t + dt, phi1, nuh, d.boundary_size());
    const Vector nu1 = nuh + (0.5 * dt) * (lin(fdh.d_phi) + lin(RestrictedCovector<>{F1, Fb1})).cwiseQuotient(mass_);

    StepResult r;
    FunctionalDerivatives avg;
    avg.d_phi = 0.5 * (fd0.d_phi + fdh.d_phi);
    finish(r, s, t, phi1, nu1, lag_.functional_derivatives(phi1, nu1), avg, 0.5 * (F0 + F1), 0.5 * (Fb0 + Fb1));
    return r;
  }

  const L& lag_;
  const ForceModel& force_;
  IntegratorSpec spec_;
  std::unique_ptr<Eigen::SparseLU<SparseMatrix>> lu_;
  Vector mass_;
};

template <FieldLagrangian L>
StepResult step(const L& lag, const ForceModel& force, double t, const PontryaginPoint<>& s,
                const IntegratorSpec& spec) {
  Stepper<L> stepper(lag, force, spec);
  return stepper.step(t, s);
}

struct TrajectorySample {
  Index step = 0;
  double t = 0.0;
  PontryaginPoint<> state;
  EnergyReport energy;
  double dirac_residual = 0.0;
  double alpha_boundary_drift = 0.0;
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;
  /// Accumulated boundary momentum drift at the final time.
  Vector alpha_boundary;
  Index steps = 0;
};

struct RunOptions {
  Index stride = 1;
  double t0 = 0.0;
  /// Drop states from stored samples (energy rows are kept).
  bool keep_states = true;
  std::function<void(const TrajectorySample&)> on_sample;
  /// Called after every step, recorded or not.
  std::function<void(Index step, double t, const StepResult&)> on_step;
};

/// Number of steps for duration T (T / dt rounded to the nearest integer).
Index step_count(double T, double dt);

/// Fixed-step integration over [t0, t0 + T]. Each step's record holds the
/// energy report of the last interval (midpoint power for both schemes) and
/// the Dirac residual at the step's evaluation point.
template <FieldLagrangian L>
TrajectoryRecord run(const L& lag, const ForceModel& force, const PontryaginPoint<>& initial,
                     const IntegratorSpec& spec, double T, const RunOptions& opts = {}) {
  require(T >= 0.0 && std::isfinite(T), "duration T must be non-negative");
  require(opts.stride >= 1, "record stride must be at least 1");
  const Duality& d = lag.duality();
  Stepper<L> stepper(lag, force, spec);
  const Index n_steps = step_count(T, spec.dt);

  TrajectoryRecord rec;
  rec.steps = n_steps;
  rec.alpha_boundary = Vector::Zero(d.boundary_size());
  auto emit = [&](TrajectorySample&& s) {
    if (opts.on_sample) opts.on_sample(s);
    if (!opts.keep_states) s.state = {};
    rec.samples.push_back(std::move(s));
  };

  PontryaginPoint<> state = initial;
  double energy = total_energy(lag, state.phi, state.nu);
  {
    TrajectorySample s0;
    s0.step = 0;
    s0.t = opts.t0;
    s0.state = state;
    const Power p = force_power(lag, force, opts.t0, state.phi, state.nu);
    s0.energy = {opts.t0, energy, p.body, p.boundary, 0.0};
    s0.dirac_residual = dirac_residual(lag, force, opts.t0, state, system_rates(lag, force, opts.t0, state));
    emit(std::move(s0));
  }
  for (Index k = 1; k <= n_steps; ++k) {
    const double t = opts.t0 + static_cast<double>(k - 1) * spec.dt;
    StepResult r = stepper.step(t, state, k);
    rec.alpha_boundary += r.boundary_increment;
    if (opts.on_step) opts.on_step(k, t + spec.dt, r);
    const double e1 = total_energy(lag, r.state.phi, r.state.nu);
    if (k % opts.stride == 0 || k == n_steps) {
      TrajectorySample s;
      s.step = k;
      s.t = opts.t0 + static_cast<double>(k) * spec.dt;
      const Power p = force_power(d, r.body_force, r.boundary_force, r.midpoint.nu);
      s.energy = {s.t, e1, p.body, p.boundary, (e1 - energy) / spec.dt - p.body - p.boundary};
      s.dirac_residual = dirac_residual(lag, force, r.t_mid, r.midpoint, r.rates);
      s.alpha_boundary_drift = rec.alpha_boundary.size() ? rec.alpha_boundary.cwiseAbs().maxCoeff() : 0.0;
      s.state = r.state;
      emit(std::move(s));
    }
    energy = e1;
    state = std::move(r.state);
  }
  return rec;
}

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_DYNAMICS_HPP
