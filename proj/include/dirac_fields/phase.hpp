#ifndef DIRAC_FIELDS_PHASE_HPP
#define DIRAC_FIELDS_PHASE_HPP

// Restricted cotangent bundle, canonical forms, Tulczyjew maps and the
// canonical Dirac structure for a discrete configuration space.
//
// A configuration is a vector of n values (nodal values of a scalar field, or
// a primal k-cochain). A restricted covector is a pair (interior, boundary):
// the interior part has one entry per configuration value and the boundary
// part one entry per boundary location. Their pairing with a configuration
// is fixed by a Duality:
//
//   <(a, a_b), phi> = sum_i w_i a_i phi_i + sum_b w_b a_b s_b phi_{t(b)}
//
// where t(b) is the configuration entry traced onto boundary location b and
// s_b its induced orientation sign.

#include <dirac_fields/types.hpp>

#include <algorithm>
#include <vector>

namespace dirac_fields {

struct Duality {
  Vector interior_weight;
  Vector boundary_weight;
  std::vector<Index> trace_index;
  Vector trace_sign;

  Index size() const { return interior_weight.size(); }
  Index boundary_size() const { return boundary_weight.size(); }

  template <typename Derived>
  VectorX<typename Derived::Scalar> trace(const Eigen::MatrixBase<Derived>& values) const {
    require_size(values.size(), size(), "trace");
    VectorX<typename Derived::Scalar> out(boundary_size());
    for (Index b = 0; b < boundary_size(); ++b)
      out[b] = trace_sign[b] * values[trace_index[static_cast<std::size_t>(b)]];
    return out;
  }

  /// Adjoint of trace weighted by the boundary measure: the vector g with
  /// g^T phi = sum_b w_b c_b (trace phi)_b.
  template <typename Derived>
  VectorX<typename Derived::Scalar> lift(const Eigen::MatrixBase<Derived>& boundary) const {
    require_size(boundary.size(), boundary_size(), "lift");
    VectorX<typename Derived::Scalar> out = VectorX<typename Derived::Scalar>::Zero(size());
    for (Index b = 0; b < boundary_size(); ++b)
      out[trace_index[static_cast<std::size_t>(b)]] += boundary_weight[b] * trace_sign[b] * boundary[b];
    return out;
  }
};

template <typename Scalar = double>
struct RestrictedCovector {
  VectorX<Scalar> interior;
  VectorX<Scalar> boundary;

  static RestrictedCovector Zero(const Duality& d) {
    return {VectorX<Scalar>::Zero(d.size()), VectorX<Scalar>::Zero(d.boundary_size())};
  }

  RestrictedCovector operator-() const { return {-interior, -boundary}; }
  RestrictedCovector& operator+=(const RestrictedCovector& o) {
    interior += o.interior;
    boundary += o.boundary;
    return *this;
  }
  RestrictedCovector& operator-=(const RestrictedCovector& o) {
    interior -= o.interior;
    boundary -= o.boundary;
    return *this;
  }
  RestrictedCovector& operator*=(Scalar s) {
    interior *= s;
    boundary *= s;
    return *this;
  }
  friend RestrictedCovector operator+(RestrictedCovector a, const RestrictedCovector& b) { return a += b; }
  friend RestrictedCovector operator-(RestrictedCovector a, const RestrictedCovector& b) { return a -= b; }
  friend RestrictedCovector operator*(Scalar s, RestrictedCovector a) { return a *= s; }

  Scalar inf_norm() const {
    Scalar n = interior.size() ? interior.cwiseAbs().maxCoeff() : Scalar(0);
    if (boundary.size()) n = std::max(n, Scalar(boundary.cwiseAbs().maxCoeff()));
    return n;
  }
};

/// (phi, alpha, alpha_b), a point of the restricted cotangent bundle.
template <typename Scalar = double>
struct PhasePoint {
  VectorX<Scalar> phi;
  RestrictedCovector<Scalar> momentum;
};

/// (phi_dot, alpha_dot, alpha_b_dot), a tangent vector to the phase space.
template <typename Scalar = double>
struct PhaseTangent {
  VectorX<Scalar> dphi;
  RestrictedCovector<Scalar> dmomentum;

  static PhaseTangent Zero(const Duality& d) {
    return {VectorX<Scalar>::Zero(d.size()), RestrictedCovector<Scalar>::Zero(d)};
  }
  Scalar inf_norm() const {
    Scalar n = dphi.size() ? dphi.cwiseAbs().maxCoeff() : Scalar(0);
    return std::max(n, dmomentum.inf_norm());
  }
};

/// Element of the restricted iterated bundle T*(T*V) = V* x V over a base point.
/// The first slot pairs with the dphi component of a tangent vector, the second
/// (an element of V, identified with the bidual) with the dmomentum component.
template <typename Scalar = double>
struct PhaseCovector {
  RestrictedCovector<Scalar> pair_with_dphi;
  VectorX<Scalar> pair_with_dmomentum;

  static PhaseCovector Zero(const Duality& d) {
    return {RestrictedCovector<Scalar>::Zero(d), VectorX<Scalar>::Zero(d.size())};
  }
  PhaseCovector& operator-=(const PhaseCovector& o) {
    pair_with_dphi -= o.pair_with_dphi;
    pair_with_dmomentum -= o.pair_with_dmomentum;
    return *this;
  }
  friend PhaseCovector operator-(PhaseCovector a, const PhaseCovector& b) { return a -= b; }
  Scalar inf_norm() const {
    Scalar n = pair_with_dmomentum.size() ? pair_with_dmomentum.cwiseAbs().maxCoeff() : Scalar(0);
    return std::max(n, pair_with_dphi.inf_norm());
  }
};

/// (phi, nu, alpha, alpha_b) on TV (+) T*V.
template <typename Scalar = double>
struct PontryaginPoint {
  VectorX<Scalar> phi;
  VectorX<Scalar> nu;
  RestrictedCovector<Scalar> momentum;

  Scalar inf_norm() const {
    return std::max({phi.size() ? Scalar(phi.cwiseAbs().maxCoeff()) : Scalar(0),
                     nu.size() ? Scalar(nu.cwiseAbs().maxCoeff()) : Scalar(0), momentum.inf_norm()});
  }
};

/// Element of T*(TV) = V x V x V* x V*: base phi, velocity, and the covectors
/// paired with variations of phi and of the velocity.
template <typename Scalar = double>
struct VelocityCovector {
  VectorX<Scalar> phi;
  VectorX<Scalar> velocity;
  RestrictedCovector<Scalar> pair_with_dphi;
  RestrictedCovector<Scalar> pair_with_dvelocity;
};

/// A pair (flow, effort) in the Pontryagin fiber T(T*V) (+) T*(T*V).
template <typename Scalar = double>
struct DiracElement {
  PhaseTangent<Scalar> flow;
  PhaseCovector<Scalar> effort;
};

inline void check_shapes(const Duality& d, Index interior, Index boundary, const char* what) {
  require_size(interior, d.size(), what);
  require_size(boundary, d.boundary_size(), what);
}

/// <(alpha, alpha_b), phi> = int alpha phi + int_boundary alpha_b trace(phi).
template <typename Scalar>
Scalar pair(const Duality& d, const RestrictedCovector<Scalar>& c, const VectorX<Scalar>& phi) {
  check_shapes(d, c.interior.size(), c.boundary.size(), "pair");
  require_size(phi.size(), d.size(), "pair");
  Scalar s = (d.interior_weight.template cast<Scalar>().array() * c.interior.array() * phi.array()).sum();
  for (Index b = 0; b < d.boundary_size(); ++b)
    s += d.boundary_weight[b] * c.boundary[b] * d.trace_sign[b] * phi[d.trace_index[static_cast<std::size_t>(b)]];
  return s;
}

/// The vector g with g^T phi = pair(c, phi) for every phi.
template <typename Scalar>
VectorX<Scalar> as_linear_form(const Duality& d, const RestrictedCovector<Scalar>& c) {
  check_shapes(d, c.interior.size(), c.boundary.size(), "as_linear_form");
  VectorX<Scalar> g = d.interior_weight.template cast<Scalar>().cwiseProduct(c.interior);
  g += d.lift(c.boundary);
  return g;
}

/// Canonical one-form: Theta(z) . dz = <z.momentum, dz.dphi>.
template <typename Scalar>
Scalar theta(const Duality& d, const PhasePoint<Scalar>& z, const PhaseTangent<Scalar>& dz) {
  return pair(d, z.momentum, dz.dphi);
}

/// Canonical two-form Omega(dz1, dz2) = <dz2.dmomentum, dz1.dphi> - <dz1.dmomentum, dz2.dphi>.
/// Constant on the phase space, so the base point does not enter.
template <typename Scalar>
Scalar omega(const Duality& d, const PhaseTangent<Scalar>& dz1, const PhaseTangent<Scalar>& dz2) {
  return pair(d, dz2.dmomentum, dz1.dphi) - pair(d, dz1.dmomentum, dz2.dphi);
}

template <typename Scalar>
Scalar omega(const Duality& d, const PhasePoint<Scalar>&, const PhaseTangent<Scalar>& dz1,
             const PhaseTangent<Scalar>& dz2) {
  return omega(d, dz1, dz2);
}

/// Evaluation of a phase covector on a tangent vector; the second slot uses the
/// same pairing with the roles of the two factors swapped.
template <typename Scalar>
Scalar evaluate(const Duality& d, const PhaseCovector<Scalar>& c, const PhaseTangent<Scalar>& dz) {
  return pair(d, c.pair_with_dphi, dz.dphi) + pair(d, dz.dmomentum, c.pair_with_dmomentum);
}

/// (phi_dot, alpha_dot, alpha_b_dot) -> (-alpha_dot, -alpha_b_dot, phi_dot).
template <typename Scalar>
PhaseCovector<Scalar> omega_flat(const PhaseTangent<Scalar>& dz) {
  return {-dz.dmomentum, dz.dphi};
}

template <typename Scalar>
PhaseCovector<Scalar> omega_flat(const PhasePoint<Scalar>&, const PhaseTangent<Scalar>& dz) {
  return omega_flat(dz);
}

template <typename Scalar>
PhaseTangent<Scalar> omega_flat_inverse(const PhaseCovector<Scalar>& c) {
  return {c.pair_with_dmomentum, -c.pair_with_dphi};
}

template <typename Scalar>
PhaseTangent<Scalar> omega_flat_inverse(const PhasePoint<Scalar>&, const PhaseCovector<Scalar>& c) {
  return omega_flat_inverse(c);
}

/// kappa : T(T*V) -> T*(TV),
/// (phi, alpha, alpha_b, phi_dot, alpha_dot, alpha_b_dot) -> (phi, phi_dot, alpha_dot, alpha_b_dot, alpha, alpha_b).
template <typename Scalar>
VelocityCovector<Scalar> kappa(const PhasePoint<Scalar>& z, const PhaseTangent<Scalar>& dz) {
  return {z.phi, dz.dphi, dz.dmomentum, z.momentum};
}

template <typename Scalar>
std::pair<PhasePoint<Scalar>, PhaseTangent<Scalar>> kappa_inverse(const VelocityCovector<Scalar>& w) {
  return {PhasePoint<Scalar>{w.phi, w.pair_with_dvelocity}, PhaseTangent<Scalar>{w.velocity, w.pair_with_dphi}};
}

/// gamma = Omega_flat o kappa^{-1} : T*(TV) -> T*(T*V),
/// (phi, phi_dot, a, a_b, b, b_b) -> base (phi, b, b_b) with covector (-a, -a_b, phi_dot).
template <typename Scalar>
std::pair<PhasePoint<Scalar>, PhaseCovector<Scalar>> gamma(const VelocityCovector<Scalar>& w) {
  return {PhasePoint<Scalar>{w.phi, w.pair_with_dvelocity}, PhaseCovector<Scalar>{-w.pair_with_dphi, w.velocity}};
}

/// <<(v1, c1), (v2, c2)>> = c1(v2) + c2(v1).
template <typename Scalar>
Scalar dirac_pairing(const Duality& d, const DiracElement<Scalar>& e1, const DiracElement<Scalar>& e2) {
  return evaluate(d, e1.effort, e2.flow) + evaluate(d, e2.effort, e1.flow);
}

/// Membership in graph(Omega_flat): |effort - Omega_flat(flow)|_inf <= tol * max(1, |inputs|_inf).
template <typename Scalar>
bool dirac_contains(const DiracElement<Scalar>& e, Scalar tol) {
  const Scalar scale = std::max({Scalar(1), e.flow.inf_norm(), e.effort.inf_norm()});
  return (e.effort - omega_flat(e.flow)).inf_norm() <= tol * scale;
}

template <typename Scalar>
bool dirac_contains(const PhasePoint<Scalar>&, const DiracElement<Scalar>& e, Scalar tol) {
  return dirac_contains(e, tol);
}

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_PHASE_HPP
