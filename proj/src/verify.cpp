#include <dirac_fields/verify.hpp>

#include <dirac_fields/dynamics.hpp>
#include <dirac_fields/maxwell.hpp>
#include <dirac_fields/oracle.hpp>
#include <dirac_fields/systems.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace dirac_fields {

namespace {

using Rng = std::mt19937_64;

Vector random_vector(Rng& rng, Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

RestrictedCovector<> random_covector(Rng& rng, const Duality& d) {
  return {random_vector(rng, d.size()), random_vector(rng, d.boundary_size())};
}

PhaseTangent<> random_tangent(Rng& rng, const Duality& d) {
  return {random_vector(rng, d.size()), random_covector(rng, d)};
}

/// Sum of absolute pairing terms, the natural scale of pair(c, v).
double abs_pair(const Duality& d, const RestrictedCovector<>& c, const Vector& v) {
  double s = (d.interior_weight.array() * c.interior.array() * v.array()).abs().sum();
  for (Index b = 0; b < d.boundary_size(); ++b)
    s += std::abs(d.boundary_weight[b] * c.boundary[b] * v[d.trace_index[static_cast<std::size_t>(b)]]);
  return s;
}

class Suite {
public:
  Suite(std::string name, std::vector<CheckResult>& out) : name_(std::move(name)), out_(out) {}

  void check(const std::string& what, double measured, double tolerance) {
    out_.push_back({name_, what, measured, tolerance, std::isfinite(measured) && measured <= tolerance});
  }
  void check_true(const std::string& what, bool ok) { out_.push_back({name_, what, ok ? 0.0 : 1.0, 0.0, ok}); }

private:
  std::string name_;
  std::vector<CheckResult>& out_;
};

void suite_sbp(Suite& s, Rng& rng) {
  const std::vector<Grid> grids = {
      make_grid(1, {Interval{0.0, 2.0}}, {33}),
      make_grid(2, {Interval{0.0, 1.0}, Interval{-1.0, 0.5}}, {17, 13}),
      make_grid(3, {Interval{0.0, 1.0}, Interval{0.0, 0.7}, Interval{0.0, 1.2}}, {9, 8, 7}),
  };
  for (const Grid& g : grids) {
    const SbpOperators ops = sbp_operators(g);
    double identity = 0.0, linear = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const SparseMatrix& D = ops.derivative[static_cast<std::size_t>(a)];
      for (int draw = 0; draw < 10; ++draw) {
        const Vector u = random_vector(rng, g.size()), v = random_vector(rng, g.size());
        const Vector Du = D * u, Dv = D * v;
        const double lhs = u.dot(ops.norm.cwiseProduct(Dv)) + Du.dot(ops.norm.cwiseProduct(v));
        const double rhs = u.dot(ops.boundary[static_cast<std::size_t>(a)].cwiseProduct(v));
        const double scale = std::max(1.0, (u.cwiseProduct(ops.norm).cwiseProduct(Dv)).cwiseAbs().sum() +
                                               (Du.cwiseProduct(ops.norm).cwiseProduct(v)).cwiseAbs().sum());
        identity = std::max(identity, std::abs(lhs - rhs) / scale);
      }
      const Vector x = g.sample([a](const Eigen::Vector3d& p) { return 2.0 * p[a] - 0.5; });
      linear = std::max(linear, (D * x - Vector::Constant(g.size(), 2.0)).cwiseAbs().maxCoeff());
    }
    double volume = 1.0;
    for (int a = 0; a < g.dim(); ++a) volume *= g.extent(a).upper - g.extent(a).lower;
    const std::string tag = std::to_string(g.dim()) + "D";
    s.check(tag + " H D + D^T H = B (relative)", identity, 1e-13);
    s.check(tag + " D exact on linear fields", linear, 1e-12);
    s.check(tag + " H integrates constants", std::abs(ops.norm.sum() - volume), 1e-13);
  }
}

void suite_pairing(Suite& s, Rng& rng) {
  const Grid g = make_grid(2, {Interval{0.0, 1.0}, Interval{0.0, 1.0}}, {7, 6});
  const Duality d = g.duality();
  double form = 0.0, antisym = 0.0, tulczyjew = 0.0, flat = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const RestrictedCovector<> c = random_covector(rng, d);
    const Vector phi = random_vector(rng, d.size());
    form = std::max(form, std::abs(pair(d, c, phi) - as_linear_form(d, c).dot(phi)) /
                              std::max(1.0, abs_pair(d, c, phi)));
    const PhaseTangent<> a = random_tangent(rng, d), b = random_tangent(rng, d);
    antisym = std::max(antisym, std::abs(omega(d, a, b) + omega(d, b, a)));
    const VelocityCovector<> w{random_vector(rng, d.size()), random_vector(rng, d.size()), random_covector(rng, d),
                               random_covector(rng, d)};
    const auto [base, cov] = gamma(w);
    const auto [z, dz] = kappa_inverse(w);
    tulczyjew = std::max(tulczyjew, (cov - omega_flat(z, dz)).inf_norm());
    const PhaseTangent<> back = omega_flat_inverse(omega_flat(a));
    flat = std::max(flat, std::max((back.dphi - a.dphi).cwiseAbs().maxCoeff(),
                                   (back.dmomentum - a.dmomentum).inf_norm()));
  }
  s.check("pair equals its linear-form representation", form, 1e-14);
  s.check("Omega antisymmetric", antisym, 1e-13);
  s.check("gamma = Omega_flat o kappa^-1", tulczyjew, 0.0);
  s.check("Omega_flat inverse round trip", flat, 0.0);
}

void suite_dirac(Suite& s, Rng& rng) {
  const Grid g = make_grid(1, {Interval{0.0, 1.0}}, {16});
  const Duality d = g.duality();
  double iso = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const PhaseTangent<> a = random_tangent(rng, d), b = random_tangent(rng, d);
    const DiracElement<> ea{a, omega_flat(a)}, eb{b, omega_flat(b)};
    const double scale = std::max({1.0, a.inf_norm() * b.inf_norm() * d.interior_weight.sum()});
    iso = std::max(iso, std::abs(dirac_pairing(d, ea, eb)) / scale);
  }
  s.check("isotropy on 100 graph pairs", iso, 1e-12);
  for (Index n : {3, 4, 5}) {
    const oracle::DiracRankReport r = oracle::dirac_rank_check(n);
    const bool dims = r.dim_D == 2 * n + 2 && r.dim_perp == r.dim_D && r.fiber_dim == 2 * (2 * n + 2);
    s.check_true("n=" + std::to_string(n) + " dim D = dim D_perp = 2n+2", dims);
    s.check("n=" + std::to_string(n) + " principal angle D vs D_perp", r.max_angle, 1e-10);
  }
  const oracle::DiracRankReport strict = oracle::dirac_rank_check(4, 1);
  s.check_true("strict isotropic subspace has a larger complement", !strict.equal && strict.dim_perp > strict.dim_D);
}

struct NamedDensity {
  const char* name;
  DensitySpec spec;
};

std::vector<NamedDensity> test_densities() {
  return {{"wave", wave_density(1.1, 0.9)},
          {"klein_gordon", klein_gordon_density(1.3, 0.7, 0.9, 0.5, 3)},
          {"sine_gordon", sine_gordon_density(1.0, 1.0)},
          {"telegraph", telegraph_density(1.2, 0.8)}};
}

void suite_lemma38(Suite& s, Rng& rng) {
  const std::vector<Grid> grids = {make_grid(1, {Interval{0.0, 1.0}}, {64}),
                                   make_grid(2, {Interval{0.0, 1.0}, Interval{0.0, 1.0}}, {32, 32})};
  for (const Grid& g : grids) {
    const oracle::DenseOperators dense = oracle::dense_operators(g);
    for (const NamedDensity& nd : test_densities()) {
      const ScalarLagrangian lag(g, nd.spec);
      const Duality& d = lag.duality();
      double worst = 0.0;
      for (int draw = 0; draw < 100; ++draw) {
        const Vector phi = random_vector(rng, g.size()), nu = random_vector(rng, g.size());
        const Vector dphi = random_vector(rng, g.size()), dnu = random_vector(rng, g.size());
        const double exact = oracle::directional_derivative(g, dense, nd.spec, phi, nu, dphi, dnu);
        const FunctionalDerivatives fd = lag.functional_derivatives(phi, nu);
        const double paired = pair(d, fd.d_phi, dphi) + pair(d, fd.d_nu, dnu);
        const double scale = std::max({1.0, std::abs(exact), abs_pair(d, fd.d_phi, dphi) + abs_pair(d, fd.d_nu, dnu)});
        worst = std::max(worst, std::abs(exact - paired) / scale);
      }
      s.check(std::to_string(g.dim()) + "D " + nd.name + " directional derivative = pairing", worst, 1e-12);
    }
  }
}

void suite_lemma46(Suite& s, Rng& rng) {
  const CubicalComplex cx({8, 8, 8}, {Interval{0.0, 1.0}, Interval{0.0, 1.5}, Interval{-0.4, 0.4}});
  const MaxwellLagrangian lag(cx);
  const SparseMatrix& d1 = cx.coboundary(1);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const Vector A = random_vector(rng, lag.size()), nu = random_vector(rng, lag.size());
    const Vector dA = random_vector(rng, lag.size()), dnu = random_vector(rng, lag.size());
    const Vector B = d1 * A;
    const double exact = nu.dot(cx.hodge(1).cwiseProduct(dnu)) - B.dot(cx.hodge(2).cwiseProduct(d1 * dA));
    const FunctionalDerivatives fd = lag.functional_derivatives(A, nu);
    const double paired = wedge_pair(cx, 1, dA, fd.d_phi) + wedge_pair(cx, 1, dnu, fd.d_nu);
    const double scale =
        std::max({1.0, std::abs(exact), abs_pair(lag.duality(), fd.d_phi, dA) + abs_pair(lag.duality(), fd.d_nu, dnu)});
    worst = std::max(worst, std::abs(exact - paired) / scale);
  }
  s.check("Maxwell directional derivative = wedge pairing (8x8x8)", worst, 1e-12);

  for (int k = 0; k <= 2; ++k) {
    double stokes = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
      const Vector a = random_vector(rng, cx.count(k)), b = random_vector(rng, cx.count(k + 1));
      const RestrictedCovector<> split = split_coboundary_adjoint(cx, k, b);
      const double lhs = b.dot(cx.coboundary(k) * a);
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      const double interior = sign * a.dot(codifferential(cx, k, b));
      const double boundary =
          wedge_pair(cx, k, a, RestrictedCovector<>{Vector::Zero(cx.count(k)), split.boundary});
      const double scale = std::max(1.0, (b.cwiseProduct(cx.coboundary(k) * a)).cwiseAbs().sum());
      stokes = std::max(stokes, std::abs(lhs - interior - boundary) / scale);
    }
    s.check("discrete Stokes k=" + std::to_string(k), stokes, 1e-13);
  }
}

void suite_energy(Suite& s, Rng&) {
  {
    SystemSpec spec;
    spec.kind = SystemKind::membrane;
    spec.nodes = {65};
    spec.phi0 = "cos(pi*x) + 0.3*cos(3*pi*x)";
    spec.nu0 = "0.5*sin(2*pi*x)";
    ScalarSystem sys = std::get<ScalarSystem>(build(spec));
    IntegratorSpec integ;
    integ.dt = 1e-3;
    const TrajectoryRecord rec = run(sys.lagrangian, sys.force, sys.initial, integ, 1.0);
    const double e0 = rec.samples.front().energy.total_energy;
    double step_drift = 0.0, total = 0.0, dirac = 0.0;
    for (std::size_t k = 1; k < rec.samples.size(); ++k) {
      step_drift = std::max(step_drift, std::abs(rec.samples[k].energy.total_energy -
                                                 rec.samples[k - 1].energy.total_energy) / e0);
      total = std::max(total, std::abs(rec.samples[k].energy.total_energy - e0) / e0);
      dirac = std::max(dirac, rec.samples[k].dirac_residual);
    }
    s.check("unforced wave, 1000 midpoint steps: per-step relative drift", step_drift, 1e-12);
    s.check("unforced wave, 1000 midpoint steps: total relative drift", total, 1e-12);
    s.check("unforced wave: Dirac residual along the run", dirac, integ.newton_tol);
  }
  {
    SystemSpec spec;
    spec.kind = SystemKind::telegraph;
    spec.nodes = {101};
    spec.voltage = Signal{Expression("sin(t)"), {}, {}};
    ScalarSystem sys = std::get<ScalarSystem>(build(spec));
    IntegratorSpec integ;
    integ.dt = 1e-3;
    RunOptions opts;
    double nu_right = 0.0, t_mid = 0.0, port = 0.0;
    const Index right = sys.lagrangian.size() - 1;
    opts.on_step = [&](Index, double, const StepResult& r) {
      nu_right = r.midpoint.nu[right];
      t_mid = r.t_mid;
    };
    opts.on_sample = [&](const TrajectorySample& smp) {
      if (smp.step == 0) return;
      port = std::max(port, std::abs(smp.energy.boundary_power - std::sin(t_mid) * nu_right));
    };
    run(sys.lagrangian, sys.force, sys.initial, integ, 0.5, opts);
    s.check("telegraph boundary power = V(t) nu(t, 1)", port, 1e-15);
  }
}

void suite_maxwell(Suite& s, Rng& rng) {
  const CubicalComplex cx = make_complex({6, 6, 6});
  const double dd1 = SparseMatrix(cx.coboundary(1) * cx.coboundary(0)).cwiseAbs().sum();
  const double dd2 = SparseMatrix(cx.coboundary(2) * cx.coboundary(1)).cwiseAbs().sum();
  s.check("d1 d0 = 0 exactly", dd1, 0.0);
  s.check("d2 d1 = 0 exactly", dd2, 0.0);

  const MaxwellLagrangian lag(cx);
  const ForceModel none;
  const PontryaginPoint<> init =
      initial_state(lag, random_vector(rng, lag.size()), random_vector(rng, lag.size()));
  IntegratorSpec integ;
  integ.dt = 1e-2;
  double charge = 0.0;
  Vector prev_nu = init.nu;
  const Vector zero = Vector::Zero(lag.size());
  RunOptions opts;
  opts.keep_states = false;
  opts.on_step = [&](Index, double, const StepResult& r) {
    const ChargeAudit a = charge_conservation_residual(cx, prev_nu, r.state.nu, integ.dt, zero);
    charge = std::max(charge, a.residual / a.scale);
    prev_nu = r.state.nu;
  };
  const TrajectoryRecord rec = run(lag, none, init, integ, 2.0, opts);
  const double e0 = rec.samples.front().energy.total_energy;
  double drift = 0.0;
  for (const TrajectorySample& smp : rec.samples) drift = std::max(drift, std::abs(smp.energy.total_energy - e0) / e0);
  s.check("unforced charge conservation residual (relative)", charge, 1e-12);
  s.check("unforced cavity, 200 steps: relative energy drift", drift, 1e-12);
}

double max_trajectory_gap(const SystemSpec& spec, double dt, Index steps) {
  ScalarSystem sys = std::get<ScalarSystem>(build(spec));
  IntegratorSpec integ;
  integ.dt = dt;
  integ.newton_tol = 1e-14;
  integ.newton_max_iter = 50;
  std::vector<Vector> dirac{sys.initial.phi};
  RunOptions opts;
  opts.keep_states = false;
  opts.on_step = [&](Index, double, const StepResult& r) { dirac.push_back(r.state.phi); };
  const double T = static_cast<double>(steps) * dt;
  run(sys.lagrangian, sys.force, sys.initial, integ, T, opts);
  const std::vector<Vector> direct = oracle::direct_el_integrator(sys, dt, T);
  double gap = 0.0;
  for (std::size_t k = 0; k < std::min(dirac.size(), direct.size()); ++k)
    gap = std::max(gap, (dirac[k] - direct[k]).cwiseAbs().maxCoeff());
  return dirac.size() == direct.size() ? gap : INFINITY;
}

void suite_equivalence(Suite& s, Rng&) {
  SystemSpec spec;
  spec.nodes = {64};
  spec.phi0 = "cos(pi*x) + 0.2*sin(2*pi*x)";
  spec.nu0 = "0.3*cos(2*pi*x)";
  spec.body_force = "sin(3*x)*cos(t)";
  spec.boundary_force = "0.5*cos(2*t)*(1 + x)";
  spec.kind = SystemKind::membrane;
  s.check("wave: Dirac system vs direct Lagrange-d'Alembert, 100 steps", max_trajectory_gap(spec, 1e-3, 100), 1e-10);
  spec.kind = SystemKind::sine_gordon;
  spec.phi0 = "4*atan(exp(4*(x - 0.5)))";
  s.check("sine-Gordon: Dirac system vs direct Lagrange-d'Alembert, 100 steps", max_trajectory_gap(spec, 1e-3, 100),
          1e-8);
}

using SuiteFn = void (*)(Suite&, Rng&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table = {
      {"sbp", suite_sbp},           {"pairing", suite_pairing}, {"dirac", suite_dirac},
      {"lemma38", suite_lemma38},   {"lemma46", suite_lemma46}, {"energy", suite_energy},
      {"maxwell", suite_maxwell},   {"equivalence", suite_equivalence},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"sbp",     "pairing", "dirac",   "lemma38",
                                                 "lemma46", "energy",  "maxwell", "equivalence"};
  return names;
}

std::vector<CheckResult> run_verify(const std::vector<std::string>& suites, std::uint64_t seed) {
  const std::vector<std::string>& selected = suites.empty() ? verify_suite_names() : suites;
  for (const std::string& name : selected)
    require(suite_table().count(name) != 0, "unknown verification suite '" + name + "'");
  std::vector<CheckResult> out;
  Rng rng(seed);
  for (const std::string& name : selected) {
    Suite s(name, out);
    suite_table().at(name)(s, rng);
  }
  return out;
}

}  // namespace dirac_fields
