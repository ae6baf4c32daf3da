#include <dirac_fields/dynamics.hpp>
#include <dirac_fields/systems.hpp>

#include <algorithm>

namespace dirac_fields {

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::membrane: return "membrane";
    case SystemKind::klein_gordon: return "klein_gordon";
    case SystemKind::sine_gordon: return "sine_gordon";
    case SystemKind::telegraph: return "telegraph";
    case SystemKind::maxwell: return "maxwell";
  }
  return "unknown";
}

SystemKind system_kind_from_string(const std::string& name) {
  if (name == "membrane" || name == "wave") return SystemKind::membrane;
  if (name == "klein_gordon") return SystemKind::klein_gordon;
  if (name == "sine_gordon") return SystemKind::sine_gordon;
  if (name == "telegraph") return SystemKind::telegraph;
  if (name == "maxwell") return SystemKind::maxwell;
  throw std::invalid_argument("unknown system kind '" + name + "'");
}

double Signal::operator()(double t) const {
  if (!sampled()) return expression(0.0, 0.0, 0.0, t);
  if (t <= times.front()) return values.front();
  if (t >= times.back()) return values.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - times.begin());
  const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
  return (1.0 - w) * values[j - 1] + w * values[j];
}

void validate(const SystemSpec& s) {
  if (s.kind == SystemKind::maxwell) {
    for (int a = 0; a < 3; ++a) {
      require(s.cells[static_cast<std::size_t>(a)] >= 1, "maxwell complex needs at least one cell per axis");
      require(s.box[static_cast<std::size_t>(a)].upper > s.box[static_cast<std::size_t>(a)].lower,
              "maxwell box must have positive extent");
    }
    return;
  }
  require(s.dim >= 1 && s.dim <= 3, "grid dimension must be 1, 2 or 3");
  require(static_cast<int>(s.extents.size()) == s.dim && static_cast<int>(s.nodes.size()) == s.dim,
          "grid extents and nodes must have one entry per dimension");
  if (s.kind == SystemKind::telegraph) {
    require(s.dim == 1, "telegraph line requires a one-dimensional grid");
    require(s.boundary_force.empty(), "telegraph boundary forcing is given by the voltage signal");
  } else {
    require(!s.voltage, "a voltage signal applies only to the telegraph system");
  }
  if (s.voltage && s.voltage->sampled()) {
    require(s.voltage->times.size() == s.voltage->values.size() && s.voltage->times.size() >= 2,
            "sampled signal needs matching times and values (at least two)");
    require(std::is_sorted(s.voltage->times.begin(), s.voltage->times.end()) &&
                std::adjacent_find(s.voltage->times.begin(), s.voltage->times.end()) == s.voltage->times.end(),
            "sampled signal times must be strictly increasing");
  }
  require(s.damping >= 0.0, "damping must be non-negative");
}

DensitySpec density_of(const SystemSpec& s) {
  switch (s.kind) {
    case SystemKind::membrane: return wave_density(s.rho0, s.tau);
    case SystemKind::klein_gordon: return klein_gordon_density(s.rho0, s.tau, s.m, s.lambda, s.p);
    case SystemKind::sine_gordon: return sine_gordon_density(s.rho0, s.tau);
    case SystemKind::telegraph: return telegraph_density(s.ell, s.c);
    case SystemKind::maxwell: break;
  }
  throw std::invalid_argument("maxwell system has no scalar density");
}

Vector sample_edges(const CubicalComplex& cx, const std::array<Expression, 3>& field, double t) {
  Vector v(cx.count(1));
  for (Index e = 0; e < cx.count(1); ++e) {
    const Cell c = cx.cell(1, e);
    const int a = c.axes == 1u ? 0 : (c.axes == 2u ? 1 : 2);
    const Eigen::Vector3d x = cx.center(1, e);
    v[e] = field[static_cast<std::size_t>(a)](x[0], x[1], x[2], t) * cx.spacing(a);
  }
  return v;
}

namespace {

std::array<Expression, 3> compile3(const std::array<std::string, 3>& src) {
  std::array<Expression, 3> out;
  for (std::size_t a = 0; a < 3; ++a) out[a] = Expression(src[a].empty() ? "0" : src[a]);
  return out;
}

bool all_empty(const std::array<std::string, 3>& src) {
  return std::all_of(src.begin(), src.end(), [](const std::string& s) { return s.empty(); });
}

ScalarSystem build_scalar(const SystemSpec& s) {
  Grid grid = make_grid(s.dim, s.extents, s.nodes);
  DensitySpec density = density_of(s);

  std::vector<Eigen::Vector3d> coords(static_cast<std::size_t>(grid.size()));
  for (Index i = 0; i < grid.size(); ++i) coords[static_cast<std::size_t>(i)] = grid.coordinate(i);
  std::vector<Eigen::Vector3d> bcoords;
  for (const BoundaryNode& bn : grid.boundary()) bcoords.push_back(grid.coordinate(bn.node));

  ForceModel force;
  if (!s.body_force.empty() || s.damping > 0.0) {
    const Expression f(s.body_force.empty() ? "0" : s.body_force);
    const double gamma = s.damping;
    force.body = [f, gamma, coords](double t, const Vector&, const Vector& nu) {
      Vector out(static_cast<Index>(coords.size()));
      for (std::size_t i = 0; i < coords.size(); ++i)
        out[static_cast<Index>(i)] = f(coords[i][0], coords[i][1], coords[i][2], t) - gamma * nu[static_cast<Index>(i)];
      return out;
    };
  }
  if (!s.boundary_force.empty()) {
    const Expression g(s.boundary_force);
    force.boundary = [g, bcoords](double t, const Vector&, const Vector&) {
      Vector out(static_cast<Index>(bcoords.size()));
      for (std::size_t b = 0; b < bcoords.size(); ++b)
        out[static_cast<Index>(b)] = g(bcoords[b][0], bcoords[b][1], bcoords[b][2], t);
      return out;
    };
  }
  if (s.kind == SystemKind::telegraph && s.voltage) {
    const Signal v = *s.voltage;
    const double right = grid.extent(0).upper;
    std::vector<double> at_right;
    for (const auto& x : bcoords) at_right.push_back(x[0] == right ? 1.0 : 0.0);
    force.boundary = [v, at_right](double t, const Vector&, const Vector&) {
      Vector out(static_cast<Index>(at_right.size()));
      const double vt = v(t);
      for (std::size_t b = 0; b < at_right.size(); ++b) out[static_cast<Index>(b)] = at_right[b] * vt;
      return out;
    };
  }

  if (s.fold_constant_force && !force.empty()) {
    density = constant_force_fold(density, force, grid.size(), grid.boundary_size());
    force = ForceModel{};
  }

  const Expression phi0(s.phi0.empty() ? "0" : s.phi0), nu0(s.nu0.empty() ? "0" : s.nu0);
  const Vector phi = grid.sample([&](const Eigen::Vector3d& x) { return phi0(x[0], x[1], x[2], 0.0); });
  const Vector nu = grid.sample([&](const Eigen::Vector3d& x) { return nu0(x[0], x[1], x[2], 0.0); });
  ScalarLagrangian lag(std::move(grid), std::move(density));
  PontryaginPoint<> init = initial_state(lag, phi, nu);
  return ScalarSystem{std::move(lag), std::move(force), std::move(init)};
}

MaxwellSystem build_maxwell(const SystemSpec& s) {
  CubicalComplex cx(s.cells, s.box);
  ForceModel force;
  if (!all_empty(s.current)) {
    const auto J = compile3(s.current);
    Vector dual_area(cx.count(1));
    for (Index e = 0; e < cx.count(1); ++e) dual_area[e] = cx.dual_measure(1, e);
    std::vector<int> axis(static_cast<std::size_t>(cx.count(1)));
    std::vector<Eigen::Vector3d> centers(axis.size());
    for (Index e = 0; e < cx.count(1); ++e) {
      const Cell c = cx.cell(1, e);
      axis[static_cast<std::size_t>(e)] = c.axes == 1u ? 0 : (c.axes == 2u ? 1 : 2);
      centers[static_cast<std::size_t>(e)] = cx.center(1, e);
    }
    force.body = [J, dual_area, axis, centers](double t, const Vector&, const Vector&) {
      Vector out(dual_area.size());
      for (Index e = 0; e < out.size(); ++e) {
        const auto& x = centers[static_cast<std::size_t>(e)];
        out[e] = J[static_cast<std::size_t>(axis[static_cast<std::size_t>(e)])](x[0], x[1], x[2], t) * dual_area[e];
      }
      return out;
    };
  }
  if (!all_empty(s.surface_current)) {
    const auto j = compile3(s.surface_current);
    const auto& bcells = cx.boundary(1);
    std::vector<int> axis;
    std::vector<Eigen::Vector3d> centers;
    std::vector<double> measure;
    for (const BoundaryCell& bc : bcells) {
      const Cell c = cx.cell(1, bc.cell);
      axis.push_back(c.axes == 1u ? 0 : (c.axes == 2u ? 1 : 2));
      centers.push_back(cx.center(1, bc.cell));
      measure.push_back(bc.dual_measure);
    }
    force.boundary = [j, axis, centers, measure](double t, const Vector&, const Vector&) {
      Vector out(static_cast<Index>(axis.size()));
      for (std::size_t b = 0; b < axis.size(); ++b)
        out[static_cast<Index>(b)] =
            j[static_cast<std::size_t>(axis[b])](centers[b][0], centers[b][1], centers[b][2], t) * measure[b];
      return out;
    };
  }

  const Vector A = sample_edges(cx, compile3(s.A0), 0.0);
  const Vector nu = sample_edges(cx, compile3(s.A_dot0), 0.0);
  MaxwellLagrangian lag(std::move(cx));
  if (s.fold_constant_force && !force.empty()) {
    lag = fold_constant_current(lag, force);
    force = ForceModel{};
  }
  PontryaginPoint<> init = initial_state(lag, A, nu);
  return MaxwellSystem{std::move(lag), std::move(force), std::move(init)};
}

}  // namespace

System build(const SystemSpec& spec) {
  validate(spec);
  if (spec.kind == SystemKind::maxwell) return build_maxwell(spec);
  return build_scalar(spec);
}

}  // namespace dirac_fields
