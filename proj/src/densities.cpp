#include <dirac_fields/densities.hpp>

#include <fmt/core.h>

#include <cmath>

namespace dirac_fields {

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::wave: return "wave";
    case DensityKind::klein_gordon: return "klein_gordon";
    case DensityKind::sine_gordon: return "sine_gordon";
    case DensityKind::telegraph: return "telegraph";
    case DensityKind::custom: return "custom";
  }
  return "unknown";
}

DensityKind density_kind_from_string(const std::string& name) {
  if (name == "wave") return DensityKind::wave;
  if (name == "klein_gordon") return DensityKind::klein_gordon;
  if (name == "sine_gordon") return DensityKind::sine_gordon;
  if (name == "telegraph") return DensityKind::telegraph;
  if (name == "custom") return DensityKind::custom;
  throw std::invalid_argument("unknown density kind '" + name + "'");
}

DensitySpec wave_density(double rho0, double tau) {
  DensitySpec s;
  s.kind = DensityKind::wave;
  s.rho0 = rho0;
  s.tau = tau;
  validate(s);
  return s;
}

DensitySpec klein_gordon_density(double rho0, double tau, double m, double lambda, int p) {
  DensitySpec s;
  s.kind = DensityKind::klein_gordon;
  s.rho0 = rho0;
  s.tau = tau;
  s.m = m;
  s.lambda = lambda;
  s.p = p;
  validate(s);
  return s;
}

DensitySpec sine_gordon_density(double rho0, double tau) {
  DensitySpec s;
  s.kind = DensityKind::sine_gordon;
  s.rho0 = rho0;
  s.tau = tau;
  validate(s);
  return s;
}

DensitySpec telegraph_density(double ell, double c) {
  DensitySpec s;
  s.kind = DensityKind::telegraph;
  s.ell = ell;
  s.c = c;
  validate(s);
  return s;
}

DensitySpec custom_density(CustomDensity density, int dim) {
  require(static_cast<bool>(density.eval), "custom density needs an evaluator");
  require(dim >= 1 && dim <= 3, "custom density dimension must be 1, 2 or 3");
  DensitySpec s;
  s.kind = DensityKind::custom;
  s.custom = std::make_shared<const CustomDensity>(std::move(density));
  validate(s);
  // Deterministic probe points, mildly away from zero so odd terms show up.
  const double probes[4][6] = {{0.3, -0.7, 0.2, 0.4, -0.1, 0.25},
                               {-1.1, 0.5, -0.6, 0.9, 0.35, 0.6},
                               {0.05, 1.3, 1.1, -0.4, 0.8, 0.1},
                               {0.9, -0.2, -1.2, -0.7, 0.15, 0.85}};
  for (const auto& q : probes) {
    DensityPoint pt;
    pt.phi = q[0];
    pt.nu = q[1];
    pt.grad = Eigen::Vector3d(q[2], q[3], q[4]);
    pt.x = Eigen::Vector3d::Constant(q[5]);
    for (int a = dim; a < 3; ++a) pt.grad[a] = 0.0;
    const double err = fd_check(s, pt, 1e-6, dim);
    if (!(err <= 1e-6))
      throw std::invalid_argument(
          fmt::format("custom density partials disagree with finite differences (error {:.3e})", err));
  }
  return s;
}

void validate(const DensitySpec& s) {
  switch (s.kind) {
    case DensityKind::klein_gordon:
      require(s.p >= 2, "klein_gordon exponent p must be an integer >= 2");
      [[fallthrough]];
    case DensityKind::wave:
    case DensityKind::sine_gordon:
      require(s.rho0 > 0.0 && std::isfinite(s.rho0), "density parameter rho0 must be positive");
      require(s.tau > 0.0 && std::isfinite(s.tau), "density parameter tau must be positive");
      require(std::isfinite(s.m) && std::isfinite(s.lambda), "density parameters must be finite");
      break;
    case DensityKind::telegraph:
      require(s.ell > 0.0 && std::isfinite(s.ell), "telegraph parameter ell must be positive");
      require(s.c > 0.0 && std::isfinite(s.c), "telegraph parameter c must be positive");
      break;
    case DensityKind::custom:
      require(s.custom && s.custom->eval, "custom density without evaluator");
      if (s.custom->separable) require(s.custom->mass > 0.0, "custom density mass must be positive");
      break;
  }
}

DensityEval eval_density(const DensitySpec& s, double phi, double nu, const Eigen::Vector3d& g,
                         const Eigen::Vector3d& x) {
  DensityEval e;
  switch (s.kind) {
    case DensityKind::wave:
    case DensityKind::klein_gordon:
    case DensityKind::sine_gordon:
      e.value = 0.5 * s.rho0 * nu * nu - 0.5 * s.tau * g.squaredNorm();
      e.d_nu = s.rho0 * nu;
      e.d_grad = -s.tau * g;
      if (s.kind == DensityKind::klein_gordon) {
        const double pp = std::pow(phi, s.p);
        e.value -= 0.5 * s.m * s.m * phi * phi + s.lambda / (s.p + 1) * pp * phi;
        e.d_phi = -(s.m * s.m * phi + s.lambda * pp);
      } else if (s.kind == DensityKind::sine_gordon) {
        e.value -= 1.0 - std::cos(phi);
        e.d_phi = -std::sin(phi);
      }
      break;
    case DensityKind::telegraph:
      e.value = 0.5 * s.ell * nu * nu - 0.5 / s.c * g.squaredNorm();
      e.d_nu = s.ell * nu;
      e.d_grad = -g / s.c;
      break;
    case DensityKind::custom:
      e = s.custom->eval(x, phi, nu, g);
      break;
  }
  return e;
}

double energy_density(const DensitySpec& s, double phi, double nu, const Eigen::Vector3d& g,
                      const Eigen::Vector3d& x) {
  const DensityEval e = eval_density(s, phi, nu, g, x);
  return e.d_nu * nu - e.value;
}

double fd_check(const DensitySpec& s, const DensityPoint& pt, double eps, int dim) {
  require(eps > 0.0 && eps <= 1e-3, "fd_check step must lie in (0, 1e-3]");
  const DensityEval e = eval_density(s, pt.phi, pt.nu, pt.grad, pt.x);
  auto value = [&](double phi, double nu, const Eigen::Vector3d& g) {
    return eval_density(s, phi, nu, g, pt.x).value;
  };
  auto rel = [](double analytic, double fd) { return std::abs(analytic - fd) / std::max(1.0, std::abs(analytic)); };

  double err = rel(e.d_phi, (value(pt.phi + eps, pt.nu, pt.grad) - value(pt.phi - eps, pt.nu, pt.grad)) / (2 * eps));
  err = std::max(err, rel(e.d_nu, (value(pt.phi, pt.nu + eps, pt.grad) - value(pt.phi, pt.nu - eps, pt.grad)) / (2 * eps)));
  for (int a = 0; a < dim; ++a) {
    Eigen::Vector3d gp = pt.grad, gm = pt.grad;
    gp[a] += eps;
    gm[a] -= eps;
    err = std::max(err, rel(e.d_grad[a], (value(pt.phi, pt.nu, gp) - value(pt.phi, pt.nu, gm)) / (2 * eps)));
  }
  return err;
}

Matrix density_hessian(const DensitySpec& s, const DensityPoint& pt, int dim, double eps) {
  const int nv = 2 + dim;
  auto partials = [&](const Eigen::VectorXd& v) {
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    for (int a = 0; a < dim; ++a) g[a] = v[2 + a];
    const DensityEval e = eval_density(s, v[0], v[1], g, pt.x);
    Eigen::VectorXd out(nv);
    out[0] = e.d_phi;
    out[1] = e.d_nu;
    for (int a = 0; a < dim; ++a) out[2 + a] = e.d_grad[a];
    return out;
  };
  Eigen::VectorXd v0(nv);
  v0[0] = pt.phi;
  v0[1] = pt.nu;
  for (int a = 0; a < dim; ++a) v0[2 + a] = pt.grad[a];

  Matrix h(nv, nv);
  for (int j = 0; j < nv; ++j) {
    Eigen::VectorXd vp = v0, vm = v0;
    vp[j] += eps;
    vm[j] -= eps;
    h.col(j) = (partials(vp) - partials(vm)) / (2 * eps);
  }
  return 0.5 * (h + h.transpose());
}

bool is_separable(const DensitySpec& s) {
  if (s.kind == DensityKind::custom) return s.custom->separable;
  return true;
}

bool is_quadratic(const DensitySpec& s) {
  switch (s.kind) {
    case DensityKind::wave:
    case DensityKind::telegraph: return true;
    case DensityKind::klein_gordon: return s.lambda == 0.0;
    case DensityKind::sine_gordon: return false;
    case DensityKind::custom: return s.custom->quadratic;
  }
  return false;
}

double kinetic_mass(const DensitySpec& s) {
  switch (s.kind) {
    case DensityKind::wave:
    case DensityKind::klein_gordon:
    case DensityKind::sine_gordon: return s.rho0;
    case DensityKind::telegraph: return s.ell;
    case DensityKind::custom:
      require(s.custom->separable, "custom density is not separable");
      return s.custom->mass;
  }
  return 1.0;
}

Vector ForceModel::body_at(double t, const Vector& phi, const Vector& nu, Index size) const {
  if (!body) return Vector::Zero(size);
  Vector f = body(t, phi, nu);
  require_size(f.size(), size, "body force");
  return f;
}

Vector ForceModel::boundary_at(double t, const Vector& phi, const Vector& nu, Index boundary_size) const {
  if (!boundary) return Vector::Zero(boundary_size);
  Vector f = boundary(t, phi, nu);
  require_size(f.size(), boundary_size, "boundary force");
  return f;
}

ForceModel constant_force(Vector body, Vector boundary) {
  ForceModel f;
  f.body = [b = std::move(body)](double, const Vector&, const Vector&) { return b; };
  f.boundary = [b = std::move(boundary)](double, const Vector&, const Vector&) { return b; };
  return f;
}

DensitySpec constant_force_fold(const DensitySpec& spec, const Vector& body, const Vector& boundary) {
  require(body.allFinite() && boundary.allFinite(), "folded force must be finite");
  DensitySpec out = spec;
  auto term = std::make_shared<LinearTerm>();
  term->interior = body;
  term->boundary = boundary;
  if (spec.linear) {
    require_size(body.size(), spec.linear->interior.size(), "constant_force_fold");
    require_size(boundary.size(), spec.linear->boundary.size(), "constant_force_fold");
    term->interior += spec.linear->interior;
    term->boundary += spec.linear->boundary;
  }
  out.linear = std::move(term);
  return out;
}

std::pair<Vector, Vector> constant_force_values(const ForceModel& force, Index size, Index boundary_size) {
  const Vector zero = Vector::Zero(size);
  Vector probe_phi(size), probe_nu(size);
  for (Index i = 0; i < size; ++i) {
    probe_phi[i] = std::sin(1.0 + 0.37 * static_cast<double>(i));
    probe_nu[i] = std::cos(0.5 + 0.61 * static_cast<double>(i));
  }
  const Vector body = force.body_at(0.0, zero, zero, size);
  const Vector bnd = force.boundary_at(0.0, zero, zero, boundary_size);
  for (double t : {0.0, 0.731, 2.5}) {
    if (force.body_at(t, probe_phi, probe_nu, size) != body ||
        force.boundary_at(t, probe_phi, probe_nu, boundary_size) != bnd)
      throw std::invalid_argument("force is not constant in time and state; cannot fold it into the Lagrangian");
  }
  return {body, bnd};
}

DensitySpec constant_force_fold(const DensitySpec& spec, const ForceModel& force, Index size, Index boundary_size) {
  const auto [body, bnd] = constant_force_values(force, size, boundary_size);
  return constant_force_fold(spec, body, bnd);
}

}  // namespace dirac_fields
