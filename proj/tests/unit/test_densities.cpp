#include "support.hpp"

#include <dirac_fields/densities.hpp>
#include <dirac_fields/dynamics.hpp>
#include <dirac_fields/scalar_lagrangian.hpp>

#include <doctest.h>

#include <cmath>

using namespace dirac_fields;

namespace {

DensityPoint random_point(int dim) {
  DensityPoint p;
  const Vector v = test::random_vector(2 + dim, 1.5);
  p.phi = v[0];
  p.nu = v[1];
  for (int a = 0; a < dim; ++a) p.grad[a] = v[2 + a];
  return p;
}

std::vector<DensitySpec> families() {
  return {wave_density(1.3, 0.7), klein_gordon_density(1.0, 2.0, 1.5, 0.3, 3), klein_gordon_density(0.5, 1.0, 1.0, 0.2, 4),
          sine_gordon_density(1.0, 1.0), telegraph_density(2.0, 0.5)};
}

}  // namespace

TEST_SUITE("densities") {

TEST_CASE("wave partials") {
  const DensityEval e = eval_density(wave_density(1, 1), 0.0, 2.0, Eigen::Vector3d(3, 0, 0));
  CHECK(e.value == doctest::Approx(-2.5));
  CHECK(e.d_nu == doctest::Approx(2.0));
  CHECK(e.d_grad[0] == doctest::Approx(-3.0));
  CHECK(e.d_phi == 0.0);
}

TEST_CASE("telegraph partials") {
  const DensityEval e = eval_density(telegraph_density(2.0, 0.5), 0.3, 1.0, Eigen::Vector3d(1, 0, 0));
  CHECK(e.d_nu == doctest::Approx(2.0));
  CHECK(e.d_grad[0] == doctest::Approx(-2.0));
}

TEST_CASE("sine-Gordon at rest") {
  const DensityEval e = eval_density(sine_gordon_density(1, 1), 0.0, 0.0, Eigen::Vector3d::Zero());
  CHECK(e.value == 0.0);
  CHECK(e.d_phi == 0.0);
  CHECK(e.d_nu == 0.0);
  CHECK(e.d_grad.isZero(0.0));
}

TEST_CASE("analytic partials agree with central differences") {
  for (const DensitySpec& s : families())
    for (int trial = 0; trial < 100; ++trial) CHECK(fd_check(s, random_point(3), 1e-6) <= 1e-6);
  // Central differences are exact on quadratics, so only roundoff remains.
  for (int trial = 0; trial < 20; ++trial) CHECK(fd_check(wave_density(2.0, 3.0), random_point(2), 1e-3) <= 1e-9);
}

TEST_CASE("energy density of the wave family") {
  for (int trial = 0; trial < 50; ++trial) {
    const DensityPoint p = random_point(3);
    const double expected = 0.5 * 1.3 * p.nu * p.nu + 0.5 * 0.7 * p.grad.squaredNorm();
    CHECK(std::abs(energy_density(wave_density(1.3, 0.7), p.phi, p.nu, p.grad) - expected) <= 1e-12);
  }
}

TEST_CASE("Klein-Gordon energy adds the potential") {
  const DensitySpec kg = klein_gordon_density(1.0, 2.0, 1.5, 0.3, 3), w = wave_density(1.0, 2.0);
  const Eigen::Vector3d z = Eigen::Vector3d::Zero();
  for (int trial = 0; trial < 20; ++trial) {
    const DensityPoint p = random_point(1);
    // The potential is -L at rest.
    const double U = -eval_density(kg, p.phi, 0.0, z).value;
    const double diff = energy_density(kg, p.phi, p.nu, p.grad) - energy_density(w, p.phi, p.nu, p.grad);
    CHECK(diff == doctest::Approx(U).epsilon(1e-12));
  }
}

TEST_CASE("position-dependent custom density") {
  CustomDensity c;
  c.eval = [](const Eigen::Vector3d& x, double phi, double nu, const Eigen::Vector3d& g) {
    const double k = 1.0 + 0.5 * x[0] * x[0];
    DensityEval e;
    e.value = 0.5 * nu * nu - 0.5 * k * g.squaredNorm() - 0.25 * phi * phi * phi * phi;
    e.d_phi = -phi * phi * phi;
    e.d_nu = nu;
    e.d_grad = -k * g;
    return e;
  };
  const DensitySpec s = custom_density(c, 2);
  for (int trial = 0; trial < 20; ++trial) {
    DensityPoint p = random_point(2);
    p.x = Eigen::Vector3d(test::random_vector(3));
    CHECK(fd_check(s, p, 1e-6, 2) <= 1e-6);
  }

  CustomDensity wrong = c;
  wrong.eval = [](const Eigen::Vector3d&, double phi, double nu, const Eigen::Vector3d& g) {
    DensityEval e;
    e.value = 0.5 * nu * nu - 0.5 * g.squaredNorm() + phi;
    e.d_nu = nu;
    e.d_grad = -g;
    return e;
  };
  CHECK_THROWS_AS(custom_density(wrong, 1), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(wave_density(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(wave_density(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(telegraph_density(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(klein_gordon_density(1, 1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(density_kind_from_string("heat"), std::invalid_argument);
}

TEST_CASE("constant force folding") {
  const Grid g = test::line(11);
  const DensitySpec w = wave_density(1.0, 1.0);
  const Vector phi = test::random_vector(11), nu = test::random_vector(11);

  const ScalarLagrangian plain(g, w);
  const ScalarLagrangian same(g, constant_force_fold(w, Vector::Zero(11), Vector::Zero(2)));
  CHECK(same.value(phi, nu) == plain.value(phi, nu));

  const ScalarLagrangian folded(g, constant_force_fold(w, Vector::Ones(11), Vector::Zero(2)));
  const FunctionalDerivatives a = plain.functional_derivatives(phi, nu), b = folded.functional_derivatives(phi, nu);
  CHECK(((b.d_phi.interior - a.d_phi.interior).array() - 1.0).abs().maxCoeff() < 1e-12);
  CHECK((b.d_phi.boundary - a.d_phi.boundary).cwiseAbs().maxCoeff() < 1e-12);

  ForceModel varying;
  varying.body = [](double t, const Vector& p, const Vector&) { return Vector(Vector::Constant(p.size(), t)); };
  CHECK_THROWS_AS(constant_force_fold(w, varying, 11, 2), std::invalid_argument);
}

TEST_CASE("folded and forced trajectories coincide") {
  const Grid g = test::line(17);
  const Vector F = g.sample([](const Eigen::Vector3d& x) { return std::sin(3.0 * x[0]); });
  const Vector Fb = (Vector(2) << 0.4, -0.7).finished();
  const ScalarLagrangian forced_lag(g, wave_density(1.0, 1.0));
  const ScalarLagrangian folded_lag(g, constant_force_fold(wave_density(1.0, 1.0), F, Fb));
  const ForceModel forced = constant_force(F, Fb), none;

  const Vector phi0 = g.sample([](const Eigen::Vector3d& x) { return x[0] * (1 - x[0]); });
  const Vector nu0 = Vector::Zero(17);
  IntegratorSpec integ;
  integ.dt = 0.01;
  RunOptions opts;
  const auto a = run(forced_lag, forced, initial_state(forced_lag, phi0, nu0), integ, 0.1, opts);
  const auto b = run(folded_lag, none, initial_state(folded_lag, phi0, nu0), integ, 0.1, opts);
  REQUIRE(a.samples.size() == 11);
  REQUIRE(b.samples.size() == 11);
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    CHECK(test::inf(a.samples[k].state.phi - b.samples[k].state.phi) <= 1e-12);
    CHECK(test::inf(a.samples[k].state.nu - b.samples[k].state.nu) <= 1e-12);
  }
}

}
