#ifndef DIRAC_FIELDS_GRID_HPP
#define DIRAC_FIELDS_GRID_HPP

// Rectilinear node grids on boxes in 1, 2 or 3 dimensions together with
// diagonal-norm summation-by-parts (SBP) operators.
//
// Nodes are ordered row-major: the last axis varies fastest. Boundary nodes
// are listed once each in increasing node order; a node on several faces
// (edge or corner) carries the sum of its face weights and one face weight
// per axis.

#include <dirac_fields/phase.hpp>
#include <dirac_fields/types.hpp>

#include <array>
#include <vector>

namespace dirac_fields {

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

struct BoundaryNode {
  Index node = 0;
  /// Outward orientation per axis, entries in {-1, 0, +1}.
  Eigen::Vector3i normal = Eigen::Vector3i::Zero();
  /// Quadrature weight of the face with normal along each axis (0 if the node is not on it).
  Eigen::Vector3d face_weight = Eigen::Vector3d::Zero();
  double weight = 0.0;
};

class Grid {
public:
  Grid(int dim, std::vector<Interval> extents, std::vector<Index> nodes);

  int dim() const { return dim_; }
  Index size() const { return size_; }
  Index nodes(int axis) const { return nodes_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  const Interval& extent(int axis) const { return extents_[axis]; }

  const std::vector<BoundaryNode>& boundary() const { return boundary_; }
  Index boundary_size() const { return static_cast<Index>(boundary_.size()); }
  Vector boundary_weights() const;

  /// Diagonal of the tensorized SBP norm H.
  const Vector& quadrature_weights() const { return quadrature_; }

  std::array<Index, 3> multi_index(Index node) const;
  Index flat_index(const std::array<Index, 3>& ijk) const;
  Eigen::Vector3d coordinate(Index node) const;

  /// Sample f(x) at every node.
  template <typename F>
  Vector sample(F&& f) const {
    Vector v(size_);
    for (Index i = 0; i < size_; ++i) v[i] = f(coordinate(i));
    return v;
  }

  /// Sample g(x, boundary node) at every boundary node.
  template <typename F>
  Vector sample_boundary(F&& g) const {
    Vector v(boundary_size());
    for (Index b = 0; b < boundary_size(); ++b) v[b] = g(coordinate(boundary_[b].node), boundary_[b]);
    return v;
  }

  /// Pairing of restricted covectors (H, boundary weights) with nodal fields.
  Duality duality() const;

private:
  int dim_;
  std::array<Interval, 3> extents_{};
  std::array<Index, 3> nodes_{1, 1, 1};
  std::array<double, 3> spacing_{1.0, 1.0, 1.0};
  Index size_ = 0;
  std::vector<BoundaryNode> boundary_;
  Vector quadrature_;
};

Grid make_grid(int dim, std::vector<Interval> extents, std::vector<Index> nodes);

struct SbpOperators {
  int order = 2;
  /// Tensorized difference operator per axis (size N x N).
  std::vector<SparseMatrix> derivative;
  /// Diagonal of the tensorized norm H.
  Vector norm;
  /// Diagonal of the tensorized boundary matrix per axis: B_a (x) H_other,
  /// so that H D_a + D_a^T H = diag(boundary[a]).
  std::vector<Vector> boundary;
  /// One-dimensional factors per axis.
  std::vector<SparseMatrix> derivative_1d;
  std::vector<Vector> norm_1d;
  std::vector<Vector> boundary_1d;
};

SbpOperators sbp_operators(const Grid& grid, int order = 2);

double quadrature(const Grid& grid, const SbpOperators& ops, const Vector& f);
double boundary_quadrature(const Grid& grid, const Vector& g);

VectorField gradient(const Grid& grid, const SbpOperators& ops, const Vector& phi);
Vector divergence(const Grid& grid, const SbpOperators& ops, const VectorField& w);
Vector trace(const Grid& grid, const Vector& phi);
/// (w . n) at boundary nodes; at edges and corners the face contributions are
/// combined with their face weights and normalized by the node weight.
Vector normal_component(const Grid& grid, const VectorField& w);

}  // namespace dirac_fields

#endif  // DIRAC_FIELDS_GRID_HPP
