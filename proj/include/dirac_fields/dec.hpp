#ifndef DIRAC_FIELDS_DEC_HPP
#define DIRAC_FIELDS_DEC_HPP

// Cubical complex on a 3D box with primal cochains, the coboundary, the
// diagonal Hodge star from boundary-truncated dual cells, and the pairing of
// primal cochains with (interior, boundary) dual cochains.
//
// A k-cell is identified by the set of axes it spans and its base (lowest)
// vertex. Cells of one degree are stored in blocks: edges by axis (x, y, z),
// faces by normal axis (x, y, z); within a block the base index is row-major
// with the last axis fastest. Faces with normal a are oriented by the cyclic
// pair (a+1, a+2). Dual cochains store integrated values, so the pairing is
// the plain sum
//   <(alpha, alpha_b), c> = sum_s c_s alpha_s + sum_{boundary s} sign_s c_s alpha_b,s.

#include <dirac_fields/grid.hpp>
#include <dirac_fields/phase.hpp>
#include <dirac_fields/types.hpp>

#include <array>
#include <vector>

namespace dirac_fields {

struct Cell {
  int degree = 0;
  /// Axes spanned by the cell, as a bit mask (bit a set if the cell extends along axis a).
  unsigned axes = 0;
  std::array<Index, 3> base{0, 0, 0};
};

/// A k-cell lying in the boundary of the box.
struct BoundaryCell {
  Index cell = 0;
  /// Induced orientation sign of the trace (outward normal sign for faces, +1 otherwise).
  double sign = 1.0;
  /// Boundary planes containing the cell, encoded as 2 * axis + side (side 0: lower, 1: upper).
  std::vector<int> planes;
  /// Measure of the cell's dual within the boundary surface (summed over its planes).
  double dual_measure = 0.0;
};

class CubicalComplex {
public:
  CubicalComplex(std::array<Index, 3> cells, std::array<Interval, 3> extents);

  Index cells(int axis) const { return cells_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  const Interval& extent(int axis) const { return extents_[axis]; }

  Index count(int k) const;
  Cell cell(int k, Index id) const;
  Index index(const Cell& c) const;
  Eigen::Vector3d center(int k, Index id) const;

  double primal_measure(int k, Index id) const;
  double dual_measure(int k, Index id) const;

  /// d_k maps k-cochains to (k+1)-cochains; integer entries.
  const SparseMatrix& coboundary(int k) const;
  /// Diagonal of the Hodge star on k-cochains: dual measure / primal measure.
  const Vector& hodge(int k) const;

  const std::vector<BoundaryCell>& boundary(int k) const;
  Vector boundary_dual_measure(int k) const;
  /// True for vertices not on the boundary.
  std::vector<Index> interior_vertices() const;

  /// Pairing of dual cochains with primal k-cochains.
  const Duality& duality(int k) const;

  /// Restriction of a k-cochain to boundary k-cells, with orientation signs.
  Vector trace(int k, const Vector& c) const;

private:
  void check_degree(int k, int max_degree) const;
  void build_cells();
  void build_coboundaries();
  void build_boundaries();

  std::array<Index, 3> cells_;
  std::array<Interval, 3> extents_;
  std::array<double, 3> spacing_{};
  // Per degree: blocks of cells sharing the same axis set.
  struct Block {
    unsigned axes;
    std::array<Index, 3> dims;
    Index offset;
    Index size;
  };
  std::array<std::vector<Block>, 4> blocks_;
  std::array<Index, 4> counts_{};
  std::array<SparseMatrix, 3> d_;
  std::array<Vector, 4> hodge_;
  std::array<std::vector<BoundaryCell>, 4> boundary_;
  std::array<Duality, 4> duality_;
};

CubicalComplex make_complex(std::array<Index, 3> cells, std::array<Interval, 3> extents = {Interval{0, 1}, Interval{0, 1}, Interval{0, 1}});

/// Split of d_k^T b (b on (k+1)-cells) into a restricted covector on k-cells:
/// the boundary part at a boundary cell s collects, for every boundary plane
/// through s, the term of the (k+1)-cell that extends s from that plane into
/// the box; the interior part is the rest. as_linear_form of the result is
/// exactly d_k^T b.
RestrictedCovector<> split_coboundary_adjoint(const CubicalComplex& cx, int k, const Vector& b);

/// Discrete codifferential of b: (-1)^k times the interior part of the split,
/// so that <(b, 0), d_k a> - (-1)^k <(delta_k b, 0), a> equals the boundary
/// term pair((0, split.boundary), a).
Vector codifferential(const CubicalComplex& cx, int k, const Vector& b);

/// <(alpha, alpha_b), c> for a primal k-cochain c.
double wedge_pair(const CubicalComplex& cx, int k, const Vector& c, const RestrictedCovector<>& alpha);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_DEC_HPP
