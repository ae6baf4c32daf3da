#include <dirac_fields/scalar_lagrangian.hpp>

namespace dirac_fields {

ScalarLagrangian::ScalarLagrangian(Grid grid, DensitySpec spec, int order)
    : grid_(std::move(grid)), ops_(sbp_operators(grid_, order)), spec_(std::move(spec)), duality_(grid_.duality()) {
  validate(spec_);
  if (spec_.linear) {
    require_size(spec_.linear->interior.size(), grid_.size(), "folded body term");
    require_size(spec_.linear->boundary.size(), grid_.boundary_size(), "folded boundary term");
  }
}

void ScalarLagrangian::check(const Vector& phi, const Vector& nu) const {
  require_size(phi.size(), grid_.size(), "phi");
  require_size(nu.size(), grid_.size(), "nu");
}

std::vector<DensityEval> ScalarLagrangian::evaluate(const Vector& phi, const Vector& nu) const {
  check(phi, nu);
  const VectorField g = gradient(grid_, ops_, phi);
  const bool positional = spec_.kind == DensityKind::custom;
  std::vector<DensityEval> out(static_cast<std::size_t>(size()));
  for (Index i = 0; i < size(); ++i) {
    Eigen::Vector3d gi = Eigen::Vector3d::Zero();
    for (int a = 0; a < grid_.dim(); ++a) gi[a] = g(i, a);
    out[static_cast<std::size_t>(i)] =
        eval_density(spec_, phi[i], nu[i], gi, positional ? grid_.coordinate(i) : Eigen::Vector3d::Zero());
  }
  return out;
}

double ScalarLagrangian::value(const Vector& phi, const Vector& nu) const {
  const auto e = evaluate(phi, nu);
  double s = 0.0;
  for (Index i = 0; i < size(); ++i) s += ops_.norm[i] * e[static_cast<std::size_t>(i)].value;
  if (spec_.linear) s += pair(duality_, RestrictedCovector<>{spec_.linear->interior, spec_.linear->boundary}, phi);
  return s;
}

FunctionalDerivatives ScalarLagrangian::functional_derivatives(const Vector& phi, const Vector& nu) const {
  const auto e = evaluate(phi, nu);
  const Index n = size();
  Vector d_phi(n), d_nu(n);
  VectorField G(n, grid_.dim());
  for (Index i = 0; i < n; ++i) {
    const DensityEval& ei = e[static_cast<std::size_t>(i)];
    d_phi[i] = ei.d_phi;
    d_nu[i] = ei.d_nu;
    for (int a = 0; a < grid_.dim(); ++a) G(i, a) = ei.d_grad[a];
  }
  // H D_a + D_a^T H = B_a splits sum_a D_a^T H G_a into -H div G plus a
  // boundary term carried by the boundary nodes.
  FunctionalDerivatives fd;
  fd.d_phi.interior = d_phi - divergence(grid_, ops_, G);
  fd.d_phi.boundary = normal_component(grid_, G);
  if (spec_.linear) {
    fd.d_phi.interior += spec_.linear->interior;
    fd.d_phi.boundary += spec_.linear->boundary;
  }
  fd.d_nu.interior = d_nu;
  fd.d_nu.boundary = Vector::Zero(grid_.boundary_size());
  return fd;
}

Vector ScalarLagrangian::energy_density(const Vector& phi, const Vector& nu) const {
  const auto e = evaluate(phi, nu);
  Vector out(size());
  for (Index i = 0; i < size(); ++i) out[i] = e[static_cast<std::size_t>(i)].d_nu * nu[i] - e[static_cast<std::size_t>(i)].value;
  return out;
}

double ScalarLagrangian::energy(const Vector& phi, const Vector& nu) const {
  double s = ops_.norm.dot(energy_density(phi, nu));
  if (spec_.linear) s -= pair(duality_, RestrictedCovector<>{spec_.linear->interior, spec_.linear->boundary}, phi);
  return s;
}

SecondVariation ScalarLagrangian::second_variation(const Vector& phi, const Vector& nu) const {
  check(phi, nu);
  const int dim = grid_.dim();
  const Index n = size();
  const int nv = 2 + dim;
  const VectorField g = gradient(grid_, ops_, phi);
  const bool positional = spec_.kind == DensityKind::custom;

  // Weighted local Hessians, one diagonal per pair of local variables.
  std::vector<Vector> h(static_cast<std::size_t>(nv * nv), Vector::Zero(n));
  for (Index i = 0; i < n; ++i) {
    DensityPoint pt;
    pt.phi = phi[i];
    pt.nu = nu[i];
    for (int a = 0; a < dim; ++a) pt.grad[a] = g(i, a);
    if (positional) pt.x = grid_.coordinate(i);
    const Matrix hi = density_hessian(spec_, pt, dim);
    for (int r = 0; r < nv; ++r)
      for (int c = 0; c < nv; ++c) h[static_cast<std::size_t>(r * nv + c)][i] = ops_.norm[i] * hi(r, c);
  }
  auto diag = [&](int r, int c) {
    SparseMatrix m(n, n);
    const Vector& v = h[static_cast<std::size_t>(r * nv + c)];
    std::vector<Eigen::Triplet<double>> t;
    for (Index i = 0; i < n; ++i)
      if (v[i] != 0.0) t.emplace_back(i, i, v[i]);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  };
  // Local variable r maps to the nodal vector through S_r: S_phi = I,
  // S_nu = I (for the nu block), S_{g_a} = D_a.
  auto S = [&](int r) -> SparseMatrix {
    if (r < 2) {
      SparseMatrix I(n, n);
      I.setIdentity();
      return I;
    }
    return ops_.derivative[static_cast<std::size_t>(r - 2)];
  };
  std::vector<int> phi_vars{0};
  for (int a = 0; a < dim; ++a) phi_vars.push_back(2 + a);

  SecondVariation sv;
  sv.phi_phi.resize(n, n);
  sv.phi_nu.resize(n, n);
  for (int r : phi_vars) {
    const SparseMatrix Sr = S(r);
    const SparseMatrix SrT = Sr.transpose();
    for (int c : phi_vars) {
      if (h[static_cast<std::size_t>(r * nv + c)].isZero(0.0)) continue;
      sv.phi_phi += SparseMatrix(SrT * diag(r, c) * S(c));
    }
    if (!h[static_cast<std::size_t>(r * nv + 1)].isZero(0.0)) sv.phi_nu += SparseMatrix(SrT * diag(r, 1));
  }
  sv.nu_nu = diag(1, 1);
  return sv;
}

Vector ScalarLagrangian::mass_diagonal() const {
  require(separable(), "Lagrangian is not separable in nu");
  return ops_.norm * kinetic_mass(spec_);
}

}  // namespace dirac_fields
