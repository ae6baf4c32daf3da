#include <dirac_fields/dec.hpp>

#include <string>

namespace dirac_fields {

namespace {

bool spans(unsigned axes, int a) { return (axes >> a) & 1u; }

}  // namespace

CubicalComplex::CubicalComplex(std::array<Index, 3> cells, std::array<Interval, 3> extents)
    : cells_(cells), extents_(extents) {
  for (int a = 0; a < 3; ++a) {
    require(cells[a] >= 1, "cubical complex needs at least one cell per axis");
    require(extents[a].upper > extents[a].lower, "degenerate complex extent on axis " + std::to_string(a));
    spacing_[a] = (extents[a].upper - extents[a].lower) / static_cast<double>(cells[a]);
  }
  build_cells();
  build_coboundaries();
  build_boundaries();
}

CubicalComplex make_complex(std::array<Index, 3> cells, std::array<Interval, 3> extents) {
  return CubicalComplex(cells, extents);
}

void CubicalComplex::check_degree(int k, int max_degree) const {
  if (k < 0 || k > max_degree) throw std::invalid_argument("invalid cochain degree " + std::to_string(k));
}

void CubicalComplex::build_cells() {
  const std::array<std::vector<unsigned>, 4> masks{
      std::vector<unsigned>{0u}, std::vector<unsigned>{1u, 2u, 4u}, std::vector<unsigned>{6u, 5u, 3u},
      std::vector<unsigned>{7u}};
  for (int k = 0; k < 4; ++k) {
    Index offset = 0;
    for (unsigned m : masks[k]) {
      Block b;
      b.axes = m;
      b.size = 1;
      for (int a = 0; a < 3; ++a) {
        b.dims[a] = spans(m, a) ? cells_[a] : cells_[a] + 1;
        b.size *= b.dims[a];
      }
      b.offset = offset;
      offset += b.size;
      blocks_[k].push_back(b);
    }
    counts_[k] = offset;
    hodge_[k].resize(offset);
    for (Index id = 0; id < offset; ++id) hodge_[k][id] = dual_measure(k, id) / primal_measure(k, id);
  }
}

Index CubicalComplex::count(int k) const {
  check_degree(k, 3);
  return counts_[k];
}

Cell CubicalComplex::cell(int k, Index id) const {
  check_degree(k, 3);
  require(id >= 0 && id < counts_[k], "cell index out of range");
  for (const Block& b : blocks_[k]) {
    if (id >= b.offset + b.size) continue;
    Index r = id - b.offset;
    Cell c;
    c.degree = k;
    c.axes = b.axes;
    for (int a = 2; a >= 0; --a) {
      c.base[a] = r % b.dims[a];
      r /= b.dims[a];
    }
    return c;
  }
  throw std::logic_error("cell lookup failed");
}

Index CubicalComplex::index(const Cell& c) const {
  for (const Block& b : blocks_[c.degree]) {
    if (b.axes != c.axes) continue;
    Index r = 0;
    for (int a = 0; a < 3; ++a) {
      require(c.base[a] >= 0 && c.base[a] < b.dims[a], "cell base out of range");
      r = r * b.dims[a] + c.base[a];
    }
    return b.offset + r;
  }
  throw std::invalid_argument("no cell block with the requested axes");
}

Eigen::Vector3d CubicalComplex::center(int k, Index id) const {
  const Cell c = cell(k, id);
  Eigen::Vector3d x;
  for (int a = 0; a < 3; ++a)
    x[a] = extents_[a].lower + spacing_[a] * (static_cast<double>(c.base[a]) + (spans(c.axes, a) ? 0.5 : 0.0));
  return x;
}

double CubicalComplex::primal_measure(int k, Index id) const {
  const Cell c = cell(k, id);
  double m = 1.0;
  for (int a = 0; a < 3; ++a)
    if (spans(c.axes, a)) m *= spacing_[a];
  return m;
}

double CubicalComplex::dual_measure(int k, Index id) const {
  const Cell c = cell(k, id);
  double m = 1.0;
  for (int a = 0; a < 3; ++a) {
    if (spans(c.axes, a)) continue;
    const bool on_boundary = c.base[a] == 0 || c.base[a] == cells_[a];
    m *= on_boundary ? 0.5 * spacing_[a] : spacing_[a];
  }
  return m;
}

void CubicalComplex::build_coboundaries() {
  auto shifted = [](Cell c, int a) {
    c.base[a] += 1;
    return c;
  };
  for (int k = 0; k < 3; ++k) {
    std::vector<Eigen::Triplet<double>> t;
    for (Index id = 0; id < counts_[k + 1]; ++id) {
      const Cell c = cell(k + 1, id);
      auto add = [&](const Cell& face, double s) { t.emplace_back(id, index(face), s); };
      if (k == 0) {
        int a = 0;
        while (!spans(c.axes, a)) ++a;
        Cell v{0, 0u, c.base};
        add(shifted(v, a), 1.0);
        add(v, -1.0);
      } else if (k == 1) {
        int a = 0;
        while (spans(c.axes, a)) ++a;
        const int b = (a + 1) % 3, cc = (a + 2) % 3;
        const Cell eb{1, 1u << b, c.base};
        const Cell ec{1, 1u << cc, c.base};
        add(eb, 1.0);
        add(shifted(ec, b), 1.0);
        add(shifted(eb, cc), -1.0);
        add(ec, -1.0);
      } else {
        for (int a = 0; a < 3; ++a) {
          const Cell f{2, 7u & ~(1u << a), c.base};
          add(shifted(f, a), 1.0);
          add(f, -1.0);
        }
      }
    }
    d_[k].resize(counts_[k + 1], counts_[k]);
    d_[k].setFromTriplets(t.begin(), t.end());
  }
}

const SparseMatrix& CubicalComplex::coboundary(int k) const {
  check_degree(k, 2);
  return d_[k];
}

const Vector& CubicalComplex::hodge(int k) const {
  check_degree(k, 3);
  return hodge_[k];
}

void CubicalComplex::build_boundaries() {
  for (int k = 0; k < 4; ++k) {
    for (Index id = 0; id < counts_[k]; ++id) {
      const Cell c = cell(k, id);
      BoundaryCell bc;
      bc.cell = id;
      for (int a = 0; a < 3; ++a) {
        if (spans(c.axes, a)) continue;
        int side = -1;
        if (c.base[a] == 0) side = 0;
        if (c.base[a] == cells_[a]) side = 1;
        if (side < 0) continue;
        bc.planes.push_back(2 * a + side);
        if (k == 2) bc.sign = side == 1 ? 1.0 : -1.0;
        double m = 1.0;
        for (int b = 0; b < 3; ++b) {
          if (b == a || spans(c.axes, b)) continue;
          const bool edge = c.base[b] == 0 || c.base[b] == cells_[b];
          m *= edge ? 0.5 * spacing_[b] : spacing_[b];
        }
        bc.dual_measure += m;
      }
      if (!bc.planes.empty()) boundary_[k].push_back(std::move(bc));
    }
    Duality& d = duality_[k];
    d.interior_weight = Vector::Ones(counts_[k]);
    d.boundary_weight = Vector::Ones(static_cast<Index>(boundary_[k].size()));
    d.trace_sign.resize(d.boundary_weight.size());
    for (std::size_t b = 0; b < boundary_[k].size(); ++b) {
      d.trace_index.push_back(boundary_[k][b].cell);
      d.trace_sign[static_cast<Index>(b)] = boundary_[k][b].sign;
    }
  }
}

const std::vector<BoundaryCell>& CubicalComplex::boundary(int k) const {
  check_degree(k, 3);
  return boundary_[k];
}

Vector CubicalComplex::boundary_dual_measure(int k) const {
  const auto& bc = boundary(k);
  Vector m(static_cast<Index>(bc.size()));
  for (std::size_t b = 0; b < bc.size(); ++b) m[static_cast<Index>(b)] = bc[b].dual_measure;
  return m;
}

std::vector<Index> CubicalComplex::interior_vertices() const {
  std::vector<Index> out;
  for (Index id = 0; id < counts_[0]; ++id) {
    const Cell c = cell(0, id);
    bool inside = true;
    for (int a = 0; a < 3; ++a) inside = inside && c.base[a] > 0 && c.base[a] < cells_[a];
    if (inside) out.push_back(id);
  }
  return out;
}

const Duality& CubicalComplex::duality(int k) const {
  check_degree(k, 3);
  return duality_[k];
}

Vector CubicalComplex::trace(int k, const Vector& c) const {
  require_size(c.size(), count(k), "trace");
  return duality(k).trace(c);
}

RestrictedCovector<> split_coboundary_adjoint(const CubicalComplex& cx, int k, const Vector& b) {
  const SparseMatrix& d = cx.coboundary(k);
  require_size(b.size(), d.rows(), "split_coboundary_adjoint");
  const auto& bcells = cx.boundary(k);
  RestrictedCovector<> out;
  out.boundary.resize(static_cast<Index>(bcells.size()));
  for (std::size_t i = 0; i < bcells.size(); ++i) {
    const BoundaryCell& bc = bcells[i];
    const Cell s = cx.cell(k, bc.cell);
    double v = 0.0;
    for (int plane : bc.planes) {
      const int a = plane / 2;
      Cell tau = s;
      tau.degree = k + 1;
      tau.axes |= 1u << a;
      tau.base[a] = plane % 2 == 1 ? cx.cells(a) - 1 : 0;
      const Index ti = cx.index(tau);
      v += d.coeff(ti, bc.cell) * b[ti];
    }
    out.boundary[static_cast<Index>(i)] = bc.sign * v;
  }
  const Duality& dual = cx.duality(k);
  out.interior = d.transpose() * b - dual.lift(out.boundary);
  return out;
}

Vector codifferential(const CubicalComplex& cx, int k, const Vector& b) {
  const double s = k % 2 == 0 ? 1.0 : -1.0;
  return s * split_coboundary_adjoint(cx, k, b).interior;
}

double wedge_pair(const CubicalComplex& cx, int k, const Vector& c, const RestrictedCovector<>& alpha) {
  return pair(cx.duality(k), alpha, c);
}

}  // namespace dirac_fields
