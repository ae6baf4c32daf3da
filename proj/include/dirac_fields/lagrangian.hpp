#ifndef DIRAC_FIELDS_LAGRANGIAN_HPP
#define DIRAC_FIELDS_LAGRANGIAN_HPP

// Interface shared by the semi-discrete Lagrangians (scalar fields on SBP
// grids, 1-forms on cubical complexes) consumed by the time steppers.

#include <dirac_fields/phase.hpp>
#include <dirac_fields/types.hpp>

#include <concepts>

namespace dirac_fields {

/// Restricted-dual functional derivatives: for every variation dphi,
/// D_phi L . dphi = pair(d_phi, dphi), and likewise for nu.
struct FunctionalDerivatives {
  RestrictedCovector<> d_phi;
  RestrictedCovector<> d_nu;
};

/// Second derivatives of L_h with respect to the configuration vectors
/// (plain coordinates, not the restricted-dual representation).
struct SecondVariation {
  SparseMatrix phi_phi;
  SparseMatrix phi_nu;  // rows: phi, columns: nu
  SparseMatrix nu_nu;
};

template <typename L>
concept FieldLagrangian = requires(const L& lag, const Vector& v) {
  { lag.duality() } -> std::convertible_to<const Duality&>;
  { lag.size() } -> std::convertible_to<Index>;
  { lag.value(v, v) } -> std::convertible_to<double>;
  { lag.energy(v, v) } -> std::convertible_to<double>;
  { lag.functional_derivatives(v, v) } -> std::same_as<FunctionalDerivatives>;
  { lag.second_variation(v, v) } -> std::same_as<SecondVariation>;
  { lag.separable() } -> std::convertible_to<bool>;
  { lag.quadratic() } -> std::convertible_to<bool>;
  /// Diagonal of d^2 L / d nu^2 for separable Lagrangians.
  { lag.mass_diagonal() } -> std::convertible_to<Vector>;
};

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_LAGRANGIAN_HPP
