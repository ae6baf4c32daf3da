#include "support.hpp"

#include <dirac_fields/dynamics.hpp>
#include <dirac_fields/oracle.hpp>
#include <dirac_fields/scalar_lagrangian.hpp>

#include <doctest.h>

#include <cmath>

using namespace dirac_fields;

TEST_SUITE("dynamics") {

TEST_CASE("functional derivatives of the wave Lagrangian at x^2") {
  for (Index n : {41, 81}) {
    const Grid g = test::line(n);
    const ScalarLagrangian lag(g, wave_density(1.0, 1.0));
    const Vector phi = g.sample([](const Eigen::Vector3d& x) { return x[0] * x[0]; });
    const FunctionalDerivatives fd = lag.functional_derivatives(phi, Vector::Zero(n));
    // -div(dL/dgrad) = phi'' = 2 away from the one-sided closures.
    CHECK((fd.d_phi.interior.segment(2, n - 4).array() - 2.0).abs().maxCoeff() < 1e-10);
    // (dL/dgrad) . n = -phi' n tends to (0, -2); the closure is first order.
    const double h = g.spacing(0);
    CHECK(std::abs(fd.d_phi.boundary[0]) <= 1.01 * h);
    CHECK(std::abs(fd.d_phi.boundary[1] + 2.0) <= 1.01 * h);
  }
}

TEST_CASE("constant fields have no force") {
  const Grid g = make_grid(2, {{0, 1}, {0, 1}}, {6, 5});
  const ScalarLagrangian lag(g, wave_density(2.0, 3.0));
  const FunctionalDerivatives fd = lag.functional_derivatives(Vector::Constant(30, 0.7), Vector::Constant(30, -1.0));
  CHECK(fd.d_phi.inf_norm() < 1e-13);
}

TEST_CASE("directional derivative equals the pairing") {
  const std::vector<DensitySpec> specs{wave_density(1.0, 2.0), klein_gordon_density(1.0, 1.0, 1.0, 0.5, 3),
                                       sine_gordon_density(1.0, 1.0), telegraph_density(2.0, 0.5)};
  const Grid g = make_grid(2, {{0, 1}, {0, 1.5}}, {7, 6});
  const oracle::DenseOperators dense = oracle::dense_operators(g);
  for (const DensitySpec& s : specs) {
    const ScalarLagrangian lag(g, s);
    for (int trial = 0; trial < 10; ++trial) {
      const Vector phi = test::random_vector(g.size()), nu = test::random_vector(g.size());
      const Vector dphi = test::random_vector(g.size()), dnu = test::random_vector(g.size());
      const FunctionalDerivatives fd = lag.functional_derivatives(phi, nu);
      const double via_pairing = pair(lag.duality(), fd.d_phi, dphi) + pair(lag.duality(), fd.d_nu, dnu);
      const double direct = oracle::directional_derivative(g, dense, s, phi, nu, dphi, dnu);
      CHECK(std::abs(via_pairing - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("Legendre transform") {
  const Grid g = test::line(9);
  const ScalarLagrangian wave(g, wave_density(2.0, 1.0));
  const PhasePoint<> z = legendre(wave, Vector::Zero(9), Vector::Constant(9, 3.0));
  CHECK((z.momentum.interior.array() - 6.0).abs().maxCoeff() < 1e-14);
  CHECK(z.momentum.boundary.isZero(0.0));

  const ScalarLagrangian tel(g, telegraph_density(2.0, 1.0));
  CHECK((legendre(tel, Vector::Zero(9), Vector::Ones(9)).momentum.interior.array() - 2.0).abs().maxCoeff() < 1e-14);
  CHECK(legendre(tel, test::random_vector(9), Vector::Zero(9)).momentum.inf_norm() == 0.0);
}

TEST_CASE("Dirac differential") {
  const Grid g = test::line(41);
  const ScalarLagrangian lag(g, wave_density(1.0, 1.0));
  const DiracDifferentialValue zero = dirac_differential(lag, Vector::Zero(41), Vector::Zero(41));
  CHECK(zero.covector.inf_norm() == 0.0);
  CHECK(zero.momentum_slot.inf_norm() == 0.0);

  const Vector phi = g.sample([](const Eigen::Vector3d& x) { return x[0] * x[0]; });
  const Vector nu = test::random_vector(41);
  const DiracDifferentialValue dd = dirac_differential(lag, phi, nu);
  const FunctionalDerivatives fd = lag.functional_derivatives(phi, nu);
  // Same as gamma applied to dL = (phi, nu, dL/dphi, dL/dnu).
  const auto [base, cov] = gamma(VelocityCovector<>{phi, nu, fd.d_phi, fd.d_nu});
  CHECK((cov - dd.covector).inf_norm() == 0.0);
  CHECK((base.momentum - dd.momentum_slot).inf_norm() == 0.0);
  CHECK((dd.covector.pair_with_dphi.interior.segment(2, 37).array() + 2.0).abs().maxCoeff() < 1e-10);
  CHECK(dd.covector.pair_with_dphi.boundary[1] == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("Dirac residual") {
  const Grid g = test::line(11);
  const ScalarLagrangian lag(g, wave_density(1.0, 1.0));
  const ForceModel none;
  const PontryaginPoint<> s = initial_state(lag, Vector::Constant(11, 0.4), Vector::Zero(11));
  PhaseTangent<> rates = PhaseTangent<>::Zero(lag.duality());
  CHECK(dirac_residual(lag, none, 0.0, s, rates) < 1e-14);
  rates.dmomentum.interior[4] += 1.0;
  CHECK(dirac_residual(lag, none, 0.0, s, rates) >= 1.0);
}

TEST_CASE("one midpoint step of the spatially constant Klein-Gordon field") {
  const Grid g = test::line(5);
  const ScalarLagrangian lag(g, klein_gordon_density(1.0, 0.7, 1.0, 0.0, 3));
  const ForceModel none;
  IntegratorSpec integ;
  integ.dt = 0.1;
  const StepResult r = step(lag, none, 0.0, initial_state(lag, Vector::Ones(5), Vector::Zero(5)), integ);
  // (1 - dt^2/4) / (1 + dt^2/4) and -dt / (1 + dt^2/4).
  CHECK((r.state.phi.array() - 0.9975 / 1.0025).abs().maxCoeff() < 1e-13);
  CHECK((r.state.nu.array() + 0.1 / 1.0025).abs().maxCoeff() < 1e-13);
  CHECK(r.state.phi[0] == doctest::Approx(0.99501247).epsilon(1e-8));

  // Verlet: kick, drift, kick.
  integ.scheme = Scheme::stormer_verlet;
  const StepResult v = step(lag, none, 0.0, initial_state(lag, Vector::Ones(5), Vector::Zero(5)), integ);
  const double nuh = -0.05, phi1 = 1.0 + 0.1 * nuh;
  CHECK((v.state.phi.array() - phi1).abs().maxCoeff() < 1e-14);
  CHECK((v.state.nu.array() - (nuh - 0.05 * phi1)).abs().maxCoeff() < 1e-14);
}

TEST_CASE("zero data stays zero") {
  const Grid g = make_grid(2, {{0, 1}, {0, 1}}, {5, 5});
  const ScalarLagrangian lag(g, sine_gordon_density(1.0, 1.0));
  const ForceModel none;
  const StepResult r = step(lag, none, 0.0, initial_state(lag, Vector::Zero(25), Vector::Zero(25)), IntegratorSpec{});
  CHECK(r.state.inf_norm() == 0.0);
}

TEST_CASE("accepted steps lie on the Dirac structure") {
  const Grid g = test::line(33);
  const ScalarLagrangian lag(g, sine_gordon_density(1.0, 1.0));
  ForceModel force;
  force.body = [](double t, const Vector& phi, const Vector& nu) {
    return Vector(0.3 * std::sin(t) * Vector::Ones(phi.size()) - 0.1 * nu);
  };
  force.boundary = [](double t, const Vector&, const Vector&) { return Vector((Vector(2) << std::cos(t), 0.5).finished()); };
  const Vector phi0 = g.sample([](const Eigen::Vector3d& x) { return std::sin(M_PI * x[0]); });
  IntegratorSpec integ;
  integ.dt = 0.02;
  Stepper<ScalarLagrangian> stepper(lag, force, integ);
  PontryaginPoint<> s = initial_state(lag, phi0, Vector::Zero(33));
  for (Index k = 0; k < 20; ++k) {
    const StepResult r = stepper.step(k * integ.dt, s, k + 1);
    CHECK(dirac_residual(lag, force, r.t_mid, r.midpoint, r.rates) <= integ.newton_tol);
    CHECK(dirac_contains(dirac_graph_element(lag, force, r.t_mid, r.midpoint, r.rates), integ.newton_tol));
    s = r.state;
  }
}

TEST_CASE("run records") {
  const Grid g = test::line(21);
  const ScalarLagrangian lag(g, wave_density(1.0, 1.0));
  const ForceModel none;
  const Vector phi0 = g.sample([](const Eigen::Vector3d& x) { return std::cos(M_PI * x[0]); });
  const PontryaginPoint<> s0 = initial_state(lag, phi0, Vector::Zero(21));
  IntegratorSpec integ;
  integ.dt = 0.01;

  const TrajectoryRecord empty = run(lag, none, s0, integ, 0.0);
  CHECK(empty.samples.size() == 1);
  CHECK(empty.steps == 0);

  const TrajectoryRecord rec = run(lag, none, s0, integ, 0.1);
  REQUIRE(rec.samples.size() == 11);
  for (const TrajectorySample& smp : rec.samples) CHECK(smp.dirac_residual <= integ.newton_tol);

  RunOptions strided;
  strided.stride = 4;
  const TrajectoryRecord sparse = run(lag, none, s0, integ, 0.1, strided);
  REQUIRE(sparse.samples.size() == 4);
  CHECK(sparse.samples.back().step == 10);
  CHECK(test::inf(sparse.samples.back().state.phi - rec.samples.back().state.phi) == 0.0);

  CHECK_THROWS_AS(run(lag, none, s0, integ, -1.0), std::invalid_argument);
}

TEST_CASE("step failures are reported") {
  const Grid g = test::line(9);
  const ScalarLagrangian lag(g, klein_gordon_density(1.0, 1.0, 1.0, 1.0, 3));
  const ForceModel none;
  IntegratorSpec integ;
  integ.dt = 5.0;
  integ.newton_max_iter = 3;
  const PontryaginPoint<> s0 = initial_state(lag, Vector::Constant(9, 4.0), Vector::Zero(9));
  CHECK_THROWS_AS(run(lag, none, s0, integ, 50.0), NumericalFailure);

  IntegratorSpec bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  CHECK_THROWS_AS(scheme_from_string("rk4"), std::invalid_argument);
}

}
