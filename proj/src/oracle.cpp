#include <dirac_fields/oracle.hpp>

#include <Eigen/Dense>

#include <cmath>

namespace dirac_fields::oracle {

namespace {

Matrix dense_d1(Index n, double h) {
  Matrix D = Matrix::Zero(n, n);
  D(0, 0) = -1.0 / h;
  D(0, 1) = 1.0 / h;
  for (Index i = 1; i + 1 < n; ++i) {
    D(i, i - 1) = -0.5 / h;
    D(i, i + 1) = 0.5 / h;
  }
  D(n - 1, n - 2) = -1.0 / h;
  D(n - 1, n - 1) = 1.0 / h;
  return D;
}

Vector dense_h1(Index n, double h) {
  Vector H = Vector::Constant(n, h);
  H[0] = H[n - 1] = 0.5 * h;
  return H;
}

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

struct Pointwise {
  Vector d_phi, d_nu, value;
  Matrix G;  // N x dim
};

Pointwise pointwise(const Grid& grid, const DenseOperators& ops, const DensitySpec& spec, const Vector& phi,
                    const Vector& nu) {
  const Index N = grid.size();
  const int dim = grid.dim();
  Matrix g(N, dim);
  for (int a = 0; a < dim; ++a) g.col(a) = ops.D[static_cast<std::size_t>(a)] * phi;
  Pointwise p{Vector(N), Vector(N), Vector(N), Matrix(N, dim)};
  for (Index i = 0; i < N; ++i) {
    Eigen::Vector3d gi = Eigen::Vector3d::Zero();
    for (int a = 0; a < dim; ++a) gi[a] = g(i, a);
    const DensityEval e = eval_density(spec, phi[i], nu[i], gi, grid.coordinate(i));
    p.value[i] = e.value;
    p.d_phi[i] = e.d_phi;
    p.d_nu[i] = e.d_nu;
    for (int a = 0; a < dim; ++a) p.G(i, a) = e.d_grad[a];
  }
  return p;
}

Vector boundary_lift(const DenseOperators& ops, Index N, const Vector& values) {
  Vector out = Vector::Zero(N);
  for (std::size_t b = 0; b < ops.boundary_nodes.size(); ++b)
    out[ops.boundary_nodes[b]] += ops.boundary_weights[static_cast<Index>(b)] * values[static_cast<Index>(b)];
  return out;
}

}  // namespace

DenseOperators dense_operators(const Grid& grid) {
  const int dim = grid.dim();
  std::vector<Matrix> D1, I1;
  std::vector<Vector> H1;
  for (int a = 0; a < dim; ++a) {
    D1.push_back(dense_d1(grid.nodes(a), grid.spacing(a)));
    H1.push_back(dense_h1(grid.nodes(a), grid.spacing(a)));
    I1.push_back(Matrix::Identity(grid.nodes(a), grid.nodes(a)));
  }
  DenseOperators ops;
  for (int a = 0; a < dim; ++a) {
    Matrix K = Matrix::Ones(1, 1);
    for (int b = 0; b < dim; ++b) K = kron(K, b == a ? D1[static_cast<std::size_t>(b)] : I1[static_cast<std::size_t>(b)]);
    ops.D.push_back(K);
  }
  Matrix Hk = Matrix::Ones(1, 1);
  for (int a = 0; a < dim; ++a) Hk = kron(Hk, Matrix(H1[static_cast<std::size_t>(a)]));
  ops.H = Hk.col(0);

  std::vector<double> weights;
  for (Index p = 0; p < grid.size(); ++p) {
    const auto ijk = grid.multi_index(p);
    double w = 0.0;
    for (int a = 0; a < dim; ++a) {
      if (ijk[a] != 0 && ijk[a] != grid.nodes(a) - 1) continue;
      double f = 1.0;
      for (int b = 0; b < dim; ++b)
        if (b != a) f *= H1[static_cast<std::size_t>(b)][ijk[b]];
      w += f;
    }
    if (w > 0.0) {
      ops.boundary_nodes.push_back(p);
      weights.push_back(w);
    }
  }
  ops.boundary_weights = Eigen::Map<Vector>(weights.data(), static_cast<Index>(weights.size()));
  return ops;
}

double dense_lagrangian(const Grid& grid, const DenseOperators& ops, const DensitySpec& spec, const Vector& phi,
                        const Vector& nu) {
  const Pointwise p = pointwise(grid, ops, spec, phi, nu);
  double L = ops.H.dot(p.value);
  if (spec.linear) {
    L += ops.H.dot(spec.linear->interior.cwiseProduct(phi));
    for (std::size_t b = 0; b < ops.boundary_nodes.size(); ++b)
      L += ops.boundary_weights[static_cast<Index>(b)] * spec.linear->boundary[static_cast<Index>(b)] *
           phi[ops.boundary_nodes[b]];
  }
  return L;
}

double directional_derivative(const Grid& grid, const DensitySpec& spec, const Vector& phi, const Vector& nu,
                              const Vector& dphi, const Vector& dnu) {
  return directional_derivative(grid, dense_operators(grid), spec, phi, nu, dphi, dnu);
}

double directional_derivative(const Grid& grid, const DenseOperators& ops, const DensitySpec& spec,
                              const Vector& phi, const Vector& nu, const Vector& dphi, const Vector& dnu) {
  const Pointwise p = pointwise(grid, ops, spec, phi, nu);
  Vector local = p.d_phi.cwiseProduct(dphi) + p.d_nu.cwiseProduct(dnu);
  for (int a = 0; a < grid.dim(); ++a)
    local += p.G.col(a).cwiseProduct(ops.D[static_cast<std::size_t>(a)] * dphi);
  double s = ops.H.dot(local);
  if (spec.linear) {
    s += ops.H.dot(spec.linear->interior.cwiseProduct(dphi));
    for (std::size_t b = 0; b < ops.boundary_nodes.size(); ++b)
      s += ops.boundary_weights[static_cast<Index>(b)] * spec.linear->boundary[static_cast<Index>(b)] *
           dphi[ops.boundary_nodes[b]];
  }
  return s;
}

FunctionalDerivatives fd_functional_derivative(const Grid& grid, const DensitySpec& spec, const Vector& phi,
                                               const Vector& nu, double eps) {
  require(eps > 0.0 && eps <= 1e-4, "finite-difference step must lie in (0, 1e-4]");
  const DenseOperators ops = dense_operators(grid);
  const Index N = grid.size();
  const int dim = grid.dim();

  // Nodes whose density changes when entry j moves: j itself and the rows of
  // any D_a with a nonzero in column j.
  std::vector<std::vector<Index>> affected(static_cast<std::size_t>(N));
  for (Index j = 0; j < N; ++j) {
    auto& rows = affected[static_cast<std::size_t>(j)];
    rows.push_back(j);
    for (Index i = 0; i < N; ++i) {
      bool hit = false;
      for (int a = 0; a < dim; ++a) hit = hit || ops.D[static_cast<std::size_t>(a)](i, j) != 0.0;
      if (hit && i != j) rows.push_back(i);
    }
  }
  auto partial_sum = [&](const std::vector<Index>& rows, const Vector& f, const Vector& v) {
    double s = 0.0;
    for (Index i : rows) {
      Eigen::Vector3d gi = Eigen::Vector3d::Zero();
      for (int a = 0; a < dim; ++a) gi[a] = ops.D[static_cast<std::size_t>(a)].row(i).dot(f);
      s += ops.H[i] * eval_density(spec, f[i], v[i], gi, grid.coordinate(i)).value;
    }
    return s;
  };

  Vector g_phi(N), g_nu(N);
  for (Index j = 0; j < N; ++j) {
    const auto& rows = affected[static_cast<std::size_t>(j)];
    Vector fp = phi, fm = phi;
    fp[j] += eps;
    fm[j] -= eps;
    g_phi[j] = (partial_sum(rows, fp, nu) - partial_sum(rows, fm, nu)) / (2 * eps);
    Vector vp = nu, vm = nu;
    vp[j] += eps;
    vm[j] -= eps;
    g_nu[j] = (partial_sum({j}, phi, vp) - partial_sum({j}, phi, vm)) / (2 * eps);
  }
  if (spec.linear) g_phi += ops.H.cwiseProduct(spec.linear->interior) + boundary_lift(ops, N, spec.linear->boundary);
  const Pointwise p = pointwise(grid, ops, spec, phi, nu);
  Vector formula = p.d_phi;
  for (int a = 0; a < dim; ++a) formula -= ops.D[static_cast<std::size_t>(a)] * p.G.col(a);

  const Index nb = static_cast<Index>(ops.boundary_nodes.size());
  FunctionalDerivatives out;
  out.d_phi.interior = g_phi.cwiseQuotient(ops.H);
  out.d_nu.interior = g_nu.cwiseQuotient(ops.H);
  out.d_phi.boundary.resize(nb);
  out.d_nu.boundary.resize(nb);
  for (Index b = 0; b < nb; ++b) {
    const Index i = ops.boundary_nodes[static_cast<std::size_t>(b)];
    const double w = ops.boundary_weights[b];
    double interior = formula[i];
    if (spec.linear) interior += spec.linear->interior[i];
    out.d_phi.interior[i] = interior;
    out.d_phi.boundary[b] = (g_phi[i] - ops.H[i] * interior) / w;
    out.d_nu.interior[i] = p.d_nu[i];
    out.d_nu.boundary[b] = (g_nu[i] - ops.H[i] * p.d_nu[i]) / w;
  }
  return out;
}

std::vector<Vector> direct_el_integrator(const ScalarSystem& system, double dt, double T, double tol, int max_iter) {
  require(dt > 0.0 && T >= 0.0, "direct integrator needs dt > 0 and T >= 0");
  const Grid& grid = system.lagrangian.grid();
  const DensitySpec& spec = system.lagrangian.spec();
  const ForceModel& force = system.force;
  const DenseOperators ops = dense_operators(grid);
  const Index N = grid.size();
  const Index nb = static_cast<Index>(ops.boundary_nodes.size());
  const int dim = grid.dim();

  Vector linear = Vector::Zero(N);
  if (spec.linear) linear = ops.H.cwiseProduct(spec.linear->interior) + boundary_lift(ops, N, spec.linear->boundary);

  auto momentum = [&](const Vector& phi, const Vector& v) {
    return Vector(ops.H.cwiseProduct(pointwise(grid, ops, spec, phi, v).d_nu));
  };
  auto potential_force = [&](double t, const Vector& phi, const Vector& v) {
    const Pointwise p = pointwise(grid, ops, spec, phi, v);
    Vector f = ops.H.cwiseProduct(p.d_phi) + linear;
    for (int a = 0; a < dim; ++a)
      f += ops.D[static_cast<std::size_t>(a)].transpose() * ops.H.cwiseProduct(p.G.col(a));
    f += ops.H.cwiseProduct(force.body_at(t, phi, v, N));
    f += boundary_lift(ops, N, force.boundary_at(t, phi, v, nb));
    return f;
  };

  const Index steps = static_cast<Index>(std::llround(T / dt));
  std::vector<Vector> out{system.initial.phi};
  Vector phi = system.initial.phi, v = system.initial.nu;
  for (Index k = 0; k < steps; ++k) {
    const double tm = (static_cast<double>(k) + 0.5) * dt;
    const Vector p0 = momentum(phi, v);
    auto residual = [&](const Vector& v1) {
      const Vector phi1 = phi + 0.5 * dt * (v + v1);
      return Vector((momentum(phi1, v1) - p0) / dt - potential_force(tm, 0.5 * (phi + phi1), 0.5 * (v + v1)));
    };
    Vector v1 = v;
    bool converged = false;
    for (int it = 0; it < max_iter && !converged; ++it) {
      const Vector R = residual(v1);
      Matrix J(N, N);
      const double h = 1e-6 * std::max(1.0, v1.cwiseAbs().maxCoeff());
      for (Index j = 0; j < N; ++j) {
        Vector vp = v1, vm = v1;
        vp[j] += h;
        vm[j] -= h;
        J.col(j) = (residual(vp) - residual(vm)) / (2 * h);
      }
      const Vector delta = -J.partialPivLu().solve(R);
      v1 += delta;
      converged = delta.cwiseAbs().maxCoeff() <= tol * std::max(1.0, v1.cwiseAbs().maxCoeff());
    }
    if (!converged) throw NumericalFailure("direct integrator Newton failure", k + 1, max_iter, std::nan(""));
    phi = phi + 0.5 * dt * (v + v1);
    v = v1;
    out.push_back(phi);
  }
  return out;
}

DiracRankReport dirac_rank_check(Index n, Index drop) {
  require(n >= 3 && n <= 6, "dirac_rank_check is limited to 1D grids with 3 <= n <= 6");
  const Grid grid = make_grid(1, {Interval{0.0, 1.0}}, {n});
  const Duality d = grid.duality();
  const Index nb = d.boundary_size();
  const Index tangent_dim = 2 * n + nb;
  const Index fiber = 2 * tangent_dim;

  // Tangent coordinates: [dphi | dmom.interior | dmom.boundary].
  auto tangent = [&](const Vector& x) {
    return PhaseTangent<>{x.segment(0, n), RestrictedCovector<>{x.segment(n, n), x.segment(2 * n, nb)}};
  };
  const Matrix I = Matrix::Identity(tangent_dim, tangent_dim);

  // Efforts are written in the dual basis of the tangent coordinates, so the
  // fiber pairing is the standard split form [[0, I], [I, 0]].
  Matrix gram = Matrix::Zero(fiber, fiber);
  gram.topRightCorner(tangent_dim, tangent_dim) = I;
  gram.bottomLeftCorner(tangent_dim, tangent_dim) = I;

  // Graph of the flat map: dz -> Omega(dz, .), evaluated on basis vectors.
  Matrix P = Matrix::Zero(fiber, tangent_dim);
  for (Index j = 0; j < tangent_dim; ++j) {
    const PhaseTangent<> dz = tangent(I.col(j));
    P(j, j) = 1.0;
    for (Index i = 0; i < tangent_dim; ++i) P(tangent_dim + i, j) = omega(d, dz, tangent(I.col(i)));
  }
  require(drop >= 0 && drop < tangent_dim, "drop must leave a nonempty subspace");
  const Matrix S = P.rightCols(tangent_dim - drop);

  const Matrix constraint = S.transpose() * gram;  // y in the complement iff constraint * y = 0
  Eigen::JacobiSVD<Matrix> svd(constraint, Eigen::ComputeFullV);
  const double cutoff = 1e-10 * std::max(1.0, svd.singularValues().maxCoeff());
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cutoff) ++rank;
  const Matrix perp = svd.matrixV().rightCols(fiber - rank);

  DiracRankReport r;
  r.fiber_dim = fiber;
  r.dim_D = S.cols();
  r.dim_perp = perp.cols();
  if (r.dim_D != r.dim_perp) {
    r.max_angle = M_PI / 2;
    r.equal = false;
    return r;
  }
  const Matrix Q = Eigen::HouseholderQR<Matrix>(S).householderQ() * Matrix::Identity(fiber, S.cols());
  const Matrix residual = perp - Q * (Q.transpose() * perp);
  const double s = Eigen::JacobiSVD<Matrix>(residual).singularValues().maxCoeff();
  r.max_angle = std::asin(std::min(1.0, s));
  r.equal = r.max_angle <= 1e-10;
  return r;
}

Index restricted_pairing_radical(Index n) {
  require(n >= 3 && n <= 6, "restricted_pairing_radical is limited to 1D grids with 3 <= n <= 6");
  const Grid grid = make_grid(1, {Interval{0.0, 1.0}}, {n});
  const Duality d = grid.duality();
  const Index nb = d.boundary_size();
  const Index tangent_dim = 2 * n + nb;
  const Index fiber = 2 * tangent_dim;
  auto element = [&](const Vector& x) {
    DiracElement<> e;
    e.flow.dphi = x.segment(0, n);
    e.flow.dmomentum.interior = x.segment(n, n);
    e.flow.dmomentum.boundary = x.segment(2 * n, nb);
    e.effort.pair_with_dphi.interior = x.segment(tangent_dim, n);
    e.effort.pair_with_dphi.boundary = x.segment(tangent_dim + n, nb);
    e.effort.pair_with_dmomentum = x.segment(tangent_dim + n + nb, n);
    return e;
  };
  const Matrix I = Matrix::Identity(fiber, fiber);
  Matrix gram(fiber, fiber);
  for (Index i = 0; i < fiber; ++i)
    for (Index j = 0; j < fiber; ++j) gram(i, j) = dirac_pairing(d, element(I.col(i)), element(I.col(j)));
  Eigen::JacobiSVD<Matrix> svd(gram);
  const double cutoff = 1e-10 * std::max(1.0, svd.singularValues().maxCoeff());
  Index rank = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cutoff) ++rank;
  return fiber - rank;
}

std::string to_string(AnalyticKind kind) {
  switch (kind) {
    case AnalyticKind::standing_wave: return "standing_wave";
    case AnalyticKind::sine_gordon_kink: return "sine_gordon_kink";
    case AnalyticKind::cavity_mode: return "cavity_mode";
  }
  return "unknown";
}

AnalyticKind analytic_kind_from_string(const std::string& name) {
  if (name == "standing_wave") return AnalyticKind::standing_wave;
  if (name == "sine_gordon_kink") return AnalyticKind::sine_gordon_kink;
  if (name == "cavity_mode") return AnalyticKind::cavity_mode;
  throw std::invalid_argument("unknown analytic solution '" + name + "'");
}

AnalyticSolution::AnalyticSolution(AnalyticKind kind, AnalyticParams params) : kind_(kind), params_(params) {
  switch (kind) {
    case AnalyticKind::standing_wave:
      require(params.k >= 0, "standing wave mode number must be non-negative");
      require(params.length > 0.0 && params.rho0 > 0.0 && params.tau > 0.0, "standing wave parameters must be positive");
      break;
    case AnalyticKind::sine_gordon_kink:
      require(std::abs(params.v) < 1.0, "kink velocity must satisfy |v| < 1");
      break;
    case AnalyticKind::cavity_mode:
      require(params.box[0] > 0.0 && params.box[1] > 0.0 && params.box[2] > 0.0, "cavity box must be positive");
      break;
  }
}

AnalyticSolution analytic(AnalyticKind kind, const AnalyticParams& params) { return AnalyticSolution(kind, params); }

double AnalyticSolution::phi(double t, const Eigen::Vector3d& x) const {
  const AnalyticParams& p = params_;
  switch (kind_) {
    case AnalyticKind::standing_wave: {
      const double kk = p.k * M_PI / p.length;
      return p.amplitude * std::cos(kk * x[0]) * std::cos(kk * std::sqrt(p.tau / p.rho0) * t);
    }
    case AnalyticKind::sine_gordon_kink: {
      const double w = std::sqrt(1.0 - p.v * p.v);
      return 4.0 * std::atan(std::exp((x[0] - p.x0 - p.v * t) / w));
    }
    case AnalyticKind::cavity_mode: break;
  }
  throw std::invalid_argument("cavity mode is a vector field; use A()");
}

double AnalyticSolution::nu(double t, const Eigen::Vector3d& x) const {
  const AnalyticParams& p = params_;
  switch (kind_) {
    case AnalyticKind::standing_wave: {
      const double kk = p.k * M_PI / p.length;
      const double om = kk * std::sqrt(p.tau / p.rho0);
      return -p.amplitude * om * std::cos(kk * x[0]) * std::sin(om * t);
    }
    case AnalyticKind::sine_gordon_kink: {
      const double w = std::sqrt(1.0 - p.v * p.v);
      const double s = (x[0] - p.x0 - p.v * t) / w;
      return -2.0 * p.v / (w * std::cosh(s));
    }
    case AnalyticKind::cavity_mode: break;
  }
  throw std::invalid_argument("cavity mode is a vector field; use A_dot()");
}

double AnalyticSolution::boundary_flux(double t, double x, double n) const {
  const AnalyticParams& p = params_;
  switch (kind_) {
    case AnalyticKind::standing_wave: {
      const double kk = p.k * M_PI / p.length;
      return -p.tau * n * p.amplitude * kk * std::sin(kk * x) * std::cos(kk * std::sqrt(p.tau / p.rho0) * t);
    }
    case AnalyticKind::sine_gordon_kink: {
      const double w = std::sqrt(1.0 - p.v * p.v);
      const double s = (x - p.x0 - p.v * t) / w;
      return n * 2.0 / (w * std::cosh(s));
    }
    case AnalyticKind::cavity_mode: break;
  }
  throw std::invalid_argument("boundary flux is defined for scalar solutions only");
}

double AnalyticSolution::omega() const {
  const double kx = M_PI / params_.box[0], ky = M_PI / params_.box[1];
  return std::sqrt(kx * kx + ky * ky);
}

Eigen::Vector3d AnalyticSolution::A(double t, const Eigen::Vector3d& x) const {
  require(kind_ == AnalyticKind::cavity_mode, "A() is defined for the cavity mode only");
  const double kx = M_PI / params_.box[0], ky = M_PI / params_.box[1];
  const double k2 = kx * kx + ky * ky;
  const double c = params_.amplitude * std::cos(omega() * t);
  return {c * ky / k2 * std::sin(kx * x[0]) * std::cos(ky * x[1]), -c * kx / k2 * std::cos(kx * x[0]) * std::sin(ky * x[1]),
          0.0};
}

Eigen::Vector3d AnalyticSolution::A_dot(double t, const Eigen::Vector3d& x) const {
  require(kind_ == AnalyticKind::cavity_mode, "A_dot() is defined for the cavity mode only");
  const double kx = M_PI / params_.box[0], ky = M_PI / params_.box[1];
  const double k2 = kx * kx + ky * ky;
  const double s = -params_.amplitude * omega() * std::sin(omega() * t);
  return {s * ky / k2 * std::sin(kx * x[0]) * std::cos(ky * x[1]), -s * kx / k2 * std::cos(kx * x[0]) * std::sin(ky * x[1]),
          0.0};
}

}  // namespace dirac_fields::oracle
