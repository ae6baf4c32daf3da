#ifndef DIRAC_FIELDS_SCALAR_LAGRANGIAN_HPP
#define DIRAC_FIELDS_SCALAR_LAGRANGIAN_HPP

#include <dirac_fields/densities.hpp>
#include <dirac_fields/grid.hpp>
#include <dirac_fields/lagrangian.hpp>

namespace dirac_fields {

/// L_h(phi, nu) = sum_i H_ii L(phi_i, nu_i, (D phi)_i) + <(F0, F0_b), phi>,
/// the last term present only for densities carrying a folded linear term.
class ScalarLagrangian {
public:
  ScalarLagrangian(Grid grid, DensitySpec spec, int order = 2);

  const Grid& grid() const { return grid_; }
  const SbpOperators& ops() const { return ops_; }
  const DensitySpec& spec() const { return spec_; }
  const Duality& duality() const { return duality_; }
  Index size() const { return grid_.size(); }

  double value(const Vector& phi, const Vector& nu) const;
  FunctionalDerivatives functional_derivatives(const Vector& phi, const Vector& nu) const;
  /// Pointwise energy density (dL/dnu) nu - L at every node.
  Vector energy_density(const Vector& phi, const Vector& nu) const;
  /// H-quadrature of the energy density, minus the folded linear term.
  double energy(const Vector& phi, const Vector& nu) const;
  SecondVariation second_variation(const Vector& phi, const Vector& nu) const;

  bool separable() const { return is_separable(spec_); }
  bool quadratic() const { return is_quadratic(spec_); }
  Vector mass_diagonal() const;

  /// Pointwise density evaluations at every node.
  std::vector<DensityEval> evaluate(const Vector& phi, const Vector& nu) const;

private:
  void check(const Vector& phi, const Vector& nu) const;

  Grid grid_;
  SbpOperators ops_;
  DensitySpec spec_;
  Duality duality_;
};

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_SCALAR_LAGRANGIAN_HPP
