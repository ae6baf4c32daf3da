#include "support.hpp"

#include <dirac_fields/dec.hpp>
#include <dirac_fields/maxwell.hpp>

#include <doctest.h>

#include <cmath>

using namespace dirac_fields;

namespace {

Vector vertex_function(const CubicalComplex& cx, double (*f)(const Eigen::Vector3d&)) {
  Vector v(cx.count(0));
  for (Index i = 0; i < v.size(); ++i) v[i] = f(cx.center(0, i));
  return v;
}

}  // namespace

TEST_SUITE("dec") {

TEST_CASE("cell counts") {
  const CubicalComplex cx = make_complex({2, 3, 4});
  CHECK(cx.count(0) == 3 * 4 * 5);
  CHECK(cx.count(1) == 2 * 4 * 5 + 3 * 3 * 5 + 3 * 4 * 4);
  CHECK(cx.count(2) == 3 * 3 * 4 + 2 * 4 * 4 + 2 * 3 * 5);
  CHECK(cx.count(3) == 24);
  for (int k = 0; k <= 3; ++k)
    for (Index id = 0; id < cx.count(k); id += 7) CHECK(cx.index(cx.cell(k, id)) == id);
  CHECK_THROWS_AS(cx.coboundary(3), std::invalid_argument);
  CHECK_THROWS_AS(cx.hodge(4), std::invalid_argument);
}

TEST_CASE("dd = 0 exactly") {
  for (const auto& n : {std::array<Index, 3>{2, 2, 2}, std::array<Index, 3>{3, 2, 4}}) {
    const CubicalComplex cx = make_complex(n);
    const SparseMatrix dd0 = cx.coboundary(1) * cx.coboundary(0);
    const SparseMatrix dd1 = cx.coboundary(2) * cx.coboundary(1);
    CHECK(Matrix(dd0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(Matrix(dd1).cwiseAbs().maxCoeff() == 0.0);
    for (int k = 0; k < 3; ++k) {
      const Matrix d = cx.coboundary(k);
      CHECK((d.array() == d.array().round()).all());
    }
  }
}

TEST_CASE("gradient of x") {
  const CubicalComplex cx = make_complex({4, 3, 2}, {Interval{0, 2}, Interval{0, 1}, Interval{0, 1}});
  const Vector f = vertex_function(cx, [](const Eigen::Vector3d& x) { return x[0]; });
  const Vector e = cx.coboundary(0) * f;
  for (Index id = 0; id < cx.count(1); ++id) {
    const double expected = cx.cell(1, id).axes == 1u ? 0.5 : 0.0;
    CHECK(e[id] == doctest::Approx(expected));
  }
  CHECK(test::inf(cx.coboundary(1) * e) < 1e-15);
}

TEST_CASE("Hodge stars") {
  const double h = 0.25;
  const CubicalComplex cx = make_complex({4, 4, 4});
  for (Index id = 0; id < cx.count(1); ++id) {
    const Eigen::Vector3d c = cx.center(1, id);
    const bool interior = (c.array() > 1e-12).all() && (c.array() < 1 - 1e-12).all();
    if (interior) CHECK(cx.hodge(1)[id] == doctest::Approx(h));
  }
  for (int k = 0; k <= 3; ++k) {
    CHECK(cx.hodge(k).minCoeff() > 0.0);
    const Vector v = test::random_vector(cx.count(k));
    CHECK(test::inf(cx.hodge(k).cwiseInverse().cwiseProduct(cx.hodge(k).cwiseProduct(v)) - v) < 1e-14);
  }
  // Truncated dual volumes tile the box.
  CHECK(cx.hodge(0).sum() == doctest::Approx(1.0));
}

TEST_CASE("trace of an interior face is zero") {
  const CubicalComplex cx = make_complex({3, 3, 3});
  Index interior_face = -1;
  for (Index id = 0; id < cx.count(2) && interior_face < 0; ++id) {
    const Eigen::Vector3d c = cx.center(2, id);
    if ((c.array() > 1e-12).all() && (c.array() < 1 - 1e-12).all()) interior_face = id;
  }
  REQUIRE(interior_face >= 0);
  Vector f = Vector::Zero(cx.count(2));
  f[interior_face] = 1.0;
  CHECK(test::inf(cx.trace(2, f)) == 0.0);
}

TEST_CASE("wedge pairing") {
  const CubicalComplex cx = make_complex({3, 4, 2});
  const RestrictedCovector<> a{test::random_vector(cx.count(0)), test::random_vector(cx.boundary(0).size())};
  CHECK(wedge_pair(cx, 0, Vector::Zero(cx.count(0)), a) == 0.0);

  // Unit total mass in each slot, constant vertex cochain 1.
  const Index nb = static_cast<Index>(cx.boundary(0).size());
  const RestrictedCovector<> m{Vector::Constant(cx.count(0), 1.0 / cx.count(0)), Vector::Constant(nb, 1.0 / nb)};
  CHECK(wedge_pair(cx, 0, Vector::Ones(cx.count(0)), m) == doctest::Approx(2.0));
}

TEST_CASE("discrete Stokes") {
  const CubicalComplex cx = make_complex({3, 2, 4}, {Interval{0, 1}, Interval{-1, 1}, Interval{0, 3}});
  for (int k = 0; k < 3; ++k) {
    const Duality& dk = cx.duality(k);
    const Duality& dk1 = cx.duality(k + 1);
    for (int trial = 0; trial < 100; ++trial) {
      const Vector a = test::random_vector(cx.count(k));
      const Vector b = test::random_vector(cx.count(k + 1));
      const RestrictedCovector<> split = split_coboundary_adjoint(cx, k, b);
      const double lhs = pair(dk1, RestrictedCovector<>{b, Vector::Zero(dk1.boundary_size())}, Vector(cx.coboundary(k) * a));
      const double sign = k % 2 ? -1.0 : 1.0;
      const double interior = pair(dk, RestrictedCovector<>{codifferential(cx, k, b), Vector::Zero(dk.boundary_size())}, a);
      const double boundary = pair(dk, RestrictedCovector<>{Vector::Zero(dk.size()), split.boundary}, a);
      CHECK(std::abs(lhs - sign * interior - boundary) <= 1e-12 * std::max(1.0, std::abs(lhs)));
      CHECK(test::inf(as_linear_form(dk, split) - Vector(cx.coboundary(k).transpose() * b)) < 1e-12);
    }
  }
}

TEST_CASE("Maxwell functional derivatives") {
  const MaxwellLagrangian lag(make_complex({3, 3, 2}));
  const Index n = lag.size();
  const FunctionalDerivatives zero = lag.functional_derivatives(Vector::Zero(n), Vector::Zero(n));
  CHECK(zero.d_phi.inf_norm() == 0.0);
  CHECK(zero.d_nu.inf_norm() == 0.0);

  const Vector f = test::random_vector(lag.complex().count(0));
  const Vector exact = lag.complex().coboundary(0) * f;
  CHECK(lag.functional_derivatives(exact, test::random_vector(n)).d_phi.inf_norm() < 1e-13);

  for (int trial = 0; trial < 20; ++trial) {
    const Vector A = test::random_vector(n), nu = test::random_vector(n);
    const Vector dA = test::random_vector(n), dnu = test::random_vector(n);
    const FunctionalDerivatives fd = lag.functional_derivatives(A, nu);
    const double via_pairing = pair(lag.duality(), fd.d_phi, dA) + pair(lag.duality(), fd.d_nu, dnu);
    // L is quadratic, so the symmetric difference quotient is exact up to roundoff.
    const double s = 1e-3;
    const double direct = (lag.value(A + s * dA, nu + s * dnu) - lag.value(A - s * dA, nu - s * dnu)) / (2 * s);
    CHECK(std::abs(via_pairing - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
    CHECK(test::inf(fd.d_nu.interior - lag.complex().hodge(1).cwiseProduct(nu).cwiseQuotient(lag.duality().interior_weight)) < 1e-12);
  }
}

}
