#include <dirac_fields/grid.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace dirac_fields {

namespace {

Vector norm_1d(Index n, double h) {
  Vector H = Vector::Constant(n, h);
  H[0] = H[n - 1] = 0.5 * h;
  return H;
}

// Second-order diagonal-norm SBP first derivative: central in the interior,
// one-sided at the two end rows.
SparseMatrix derivative_1d(Index n, double h) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(2 * n));
  t.emplace_back(0, 0, -1.0 / h);
  t.emplace_back(0, 1, 1.0 / h);
  for (Index i = 1; i + 1 < n; ++i) {
    t.emplace_back(i, i - 1, -0.5 / h);
    t.emplace_back(i, i + 1, 0.5 / h);
  }
  t.emplace_back(n - 1, n - 2, -1.0 / h);
  t.emplace_back(n - 1, n - 1, 1.0 / h);
  SparseMatrix D(n, n);
  D.setFromTriplets(t.begin(), t.end());
  return D;
}

}  // namespace

Grid::Grid(int dim, std::vector<Interval> extents, std::vector<Index> nodes) : dim_(dim) {
  require(dim >= 1 && dim <= 3, "grid dimension must be 1, 2 or 3");
  require(static_cast<int>(extents.size()) == dim && static_cast<int>(nodes.size()) == dim,
          "grid extents and node counts must have one entry per axis");
  size_ = 1;
  for (int a = 0; a < dim; ++a) {
    require(nodes[a] >= 3, "grid needs at least 3 nodes per axis (axis " + std::to_string(a) + ")");
    require(std::isfinite(extents[a].lower) && std::isfinite(extents[a].upper) &&
                extents[a].upper > extents[a].lower,
            "degenerate grid interval on axis " + std::to_string(a));
    extents_[a] = extents[a];
    nodes_[a] = nodes[a];
    spacing_[a] = (extents[a].upper - extents[a].lower) / static_cast<double>(nodes[a] - 1);
    size_ *= nodes[a];
  }

  quadrature_ = Vector::Ones(size_);
  for (Index p = 0; p < size_; ++p) {
    const auto ijk = multi_index(p);
    for (int a = 0; a < dim_; ++a) {
      const bool end = ijk[a] == 0 || ijk[a] == nodes_[a] - 1;
      quadrature_[p] *= end ? 0.5 * spacing_[a] : spacing_[a];
    }
  }

  for (Index p = 0; p < size_; ++p) {
    const auto ijk = multi_index(p);
    BoundaryNode bn;
    bn.node = p;
    for (int a = 0; a < dim_; ++a) {
      int n = 0;
      if (ijk[a] == 0) n = -1;
      if (ijk[a] == nodes_[a] - 1) n = +1;
      if (n == 0) continue;
      // Face weight: tensorized 1D norm over the remaining axes (1 in 1D).
      double w = 1.0;
      for (int b = 0; b < dim_; ++b) {
        if (b == a) continue;
        const bool end = ijk[b] == 0 || ijk[b] == nodes_[b] - 1;
        w *= end ? 0.5 * spacing_[b] : spacing_[b];
      }
      bn.normal[a] = n;
      bn.face_weight[a] = w;
      bn.weight += w;
    }
    if (bn.weight > 0.0) boundary_.push_back(bn);
  }
}

Grid make_grid(int dim, std::vector<Interval> extents, std::vector<Index> nodes) {
  return Grid(dim, std::move(extents), std::move(nodes));
}

Vector Grid::boundary_weights() const {
  Vector w(boundary_size());
  for (Index b = 0; b < boundary_size(); ++b) w[b] = boundary_[b].weight;
  return w;
}

std::array<Index, 3> Grid::multi_index(Index node) const {
  std::array<Index, 3> ijk{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    ijk[a] = node % nodes_[a];
    node /= nodes_[a];
  }
  return ijk;
}

Index Grid::flat_index(const std::array<Index, 3>& ijk) const {
  Index p = 0;
  for (int a = 0; a < dim_; ++a) p = p * nodes_[a] + ijk[a];
  return p;
}

Eigen::Vector3d Grid::coordinate(Index node) const {
  const auto ijk = multi_index(node);
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  for (int a = 0; a < dim_; ++a) x[a] = extents_[a].lower + spacing_[a] * static_cast<double>(ijk[a]);
  return x;
}

Duality Grid::duality() const {
  Duality d;
  d.interior_weight = quadrature_;
  d.boundary_weight = boundary_weights();
  d.trace_index.reserve(boundary_.size());
  for (const auto& bn : boundary_) d.trace_index.push_back(bn.node);
  d.trace_sign = Vector::Ones(boundary_size());
  return d;
}

SbpOperators sbp_operators(const Grid& grid, int order) {
  if (order != 2) throw std::invalid_argument("unsupported SBP order " + std::to_string(order) + " (only 2)");
  SbpOperators ops;
  ops.order = order;
  ops.norm = grid.quadrature_weights();
  const Index N = grid.size();
  for (int a = 0; a < grid.dim(); ++a) {
    const Index n = grid.nodes(a);
    const double h = grid.spacing(a);
    ops.derivative_1d.push_back(derivative_1d(n, h));
    ops.norm_1d.push_back(norm_1d(n, h));
    Vector B1 = Vector::Zero(n);
    B1[0] = -1.0;
    B1[n - 1] = 1.0;
    ops.boundary_1d.push_back(B1);

    const SparseMatrix& D1 = ops.derivative_1d.back();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(2 * N));
    for (Index p = 0; p < N; ++p) {
      const auto ijk = grid.multi_index(p);
      const Index i = ijk[a];
      for (Index j = std::max<Index>(0, i - 1); j <= std::min(n - 1, i + 1); ++j) {
        const double v = D1.coeff(i, j);
        if (v == 0.0) continue;
        auto q = ijk;
        q[a] = j;
        t.emplace_back(p, grid.flat_index(q), v);
      }
    }
    SparseMatrix D(N, N);
    D.setFromTriplets(t.begin(), t.end());
    ops.derivative.push_back(std::move(D));
  }
  // Tensorized boundary matrices B_a (x) H_other.
  for (int a = 0; a < grid.dim(); ++a) {
    Vector boundary = Vector::Zero(N);
    for (Index p = 0; p < N; ++p) {
      const auto ijk = grid.multi_index(p);
      double w = ops.boundary_1d[static_cast<std::size_t>(a)][ijk[a]];
      if (w == 0.0) continue;
      for (int b = 0; b < grid.dim(); ++b)
        if (b != a) w *= ops.norm_1d[static_cast<std::size_t>(b)][ijk[b]];
      boundary[p] = w;
    }
    ops.boundary.push_back(std::move(boundary));
  }
  return ops;
}

double quadrature(const Grid& grid, const SbpOperators& ops, const Vector& f) {
  require_size(f.size(), grid.size(), "quadrature");
  return ops.norm.dot(f);
}

double boundary_quadrature(const Grid& grid, const Vector& g) {
  require_size(g.size(), grid.boundary_size(), "boundary_quadrature");
  return grid.boundary_weights().dot(g);
}

VectorField gradient(const Grid& grid, const SbpOperators& ops, const Vector& phi) {
  require_size(phi.size(), grid.size(), "gradient");
  VectorField g(grid.size(), grid.dim());
  for (int a = 0; a < grid.dim(); ++a) g.col(a) = ops.derivative[static_cast<std::size_t>(a)] * phi;
  return g;
}

Vector divergence(const Grid& grid, const SbpOperators& ops, const VectorField& w) {
  require_size(w.rows(), grid.size(), "divergence");
  require_size(w.cols(), grid.dim(), "divergence (components)");
  Vector d = Vector::Zero(grid.size());
  for (int a = 0; a < grid.dim(); ++a) d += ops.derivative[static_cast<std::size_t>(a)] * w.col(a);
  return d;
}

Vector trace(const Grid& grid, const Vector& phi) {
  require_size(phi.size(), grid.size(), "trace");
  Vector t(grid.boundary_size());
  for (Index b = 0; b < grid.boundary_size(); ++b) t[b] = phi[grid.boundary()[b].node];
  return t;
}

Vector normal_component(const Grid& grid, const VectorField& w) {
  require_size(w.rows(), grid.size(), "normal_component");
  require_size(w.cols(), grid.dim(), "normal_component (components)");
  Vector out(grid.boundary_size());
  for (Index b = 0; b < grid.boundary_size(); ++b) {
    const BoundaryNode& bn = grid.boundary()[b];
    double s = 0.0;
    for (int a = 0; a < grid.dim(); ++a) s += bn.normal[a] * bn.face_weight[a] * w(bn.node, a);
    out[b] = s / bn.weight;
  }
  return out;
}

}  // namespace dirac_fields
