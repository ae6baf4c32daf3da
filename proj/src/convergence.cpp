#include <dirac_fields/convergence.hpp>

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

namespace dirac_fields {

RunConfig refine(const RunConfig& base, int level, bool space, bool time) {
  require(level >= 0, "refinement level must be non-negative");
  RunConfig c = base;
  const Index f = Index{1} << level;
  if (space) {
    if (c.system.kind == SystemKind::maxwell) {
      for (Index& n : c.system.cells) n *= f;
    } else {
      for (Index& n : c.system.nodes) n = (n - 1) * f + 1;
    }
  }
  if (time) c.integrator.dt /= static_cast<double>(f);
  return c;
}

namespace {

template <typename L>
PontryaginPoint<> final_state(const L& lag, const ForceModel& force, const PontryaginPoint<>& init,
                              const IntegratorSpec& integ, double T) {
  RunOptions opts;
  opts.stride = std::max<Index>(1, step_count(T, integ.dt));
  const TrajectoryRecord rec = run(lag, force, init, integ, T, opts);
  return rec.samples.back().state;
}

LevelError scalar_error(const RunConfig& c, ScalarSystem& sys, const oracle::AnalyticSolution& exact) {
  const ScalarLagrangian& lag = sys.lagrangian;
  const Grid& grid = lag.grid();
  const Vector phi0 = grid.sample([&](const Eigen::Vector3d& x) { return exact.phi(0.0, x); });
  const Vector nu0 = grid.sample([&](const Eigen::Vector3d& x) { return exact.nu(0.0, x); });
  const PontryaginPoint<> init = initial_state(lag, phi0, nu0);

  LevelError e;
  e.steps = step_count(c.duration, c.integrator.dt);
  e.t_final = static_cast<double>(e.steps) * c.integrator.dt;
  e.dt = c.integrator.dt;
  e.h = grid.spacing(0);
  const PontryaginPoint<> s = final_state(lag, sys.force, init, c.integrator, c.duration);
  const Vector ref = grid.sample([&](const Eigen::Vector3d& x) { return exact.phi(e.t_final, x); });
  const Vector err = s.phi - ref;
  e.error_l2 = std::sqrt(lag.duality().interior_weight.dot(err.cwiseAbs2()));
  e.error_max = err.cwiseAbs().maxCoeff();
  return e;
}

Vector sample_exact_edges(const CubicalComplex& cx, const oracle::AnalyticSolution& exact, double t, bool rate) {
  Vector v(cx.count(1));
  for (Index id = 0; id < cx.count(1); ++id) {
    const Cell cell = cx.cell(1, id);
    const int a = cell.axes == 1u ? 0 : (cell.axes == 2u ? 1 : 2);
    const Eigen::Vector3d x = cx.center(1, id);
    const Eigen::Vector3d f = rate ? exact.A_dot(t, x) : exact.A(t, x);
    v[id] = f[a] * cx.spacing(a);
  }
  return v;
}

LevelError maxwell_error(const RunConfig& c, MaxwellSystem& sys, const oracle::AnalyticSolution& exact) {
  const MaxwellLagrangian& lag = sys.lagrangian;
  const CubicalComplex& cx = lag.complex();
  const PontryaginPoint<> init =
      initial_state(lag, sample_exact_edges(cx, exact, 0.0, false), sample_exact_edges(cx, exact, 0.0, true));

  LevelError e;
  e.steps = step_count(c.duration, c.integrator.dt);
  e.t_final = static_cast<double>(e.steps) * c.integrator.dt;
  e.dt = c.integrator.dt;
  e.h = cx.spacing(0);
  const PontryaginPoint<> s = final_state(lag, sys.force, init, c.integrator, c.duration);
  const Vector err = s.phi - sample_exact_edges(cx, exact, e.t_final, false);
  e.error_l2 = std::sqrt(cx.hodge(1).dot(err.cwiseAbs2()));
  // Pointwise tangential component: edge value over edge length.
  double m = 0.0;
  for (Index id = 0; id < err.size(); ++id) m = std::max(m, std::abs(err[id]) / cx.primal_measure(1, id));
  e.error_max = m;
  return e;
}

}  // namespace

LevelError measure_error(const RunConfig& config) {
  require(config.oracle.has_value(), "convergence study needs an analytic oracle in the configuration");
  validate(config);
  const oracle::AnalyticSolution exact = oracle::analytic(config.oracle->kind, config.oracle->params);
  System sys = build(config.system);
  if (auto* s = std::get_if<ScalarSystem>(&sys)) return scalar_error(config, *s, exact);
  return maxwell_error(config, std::get<MaxwellSystem>(sys), exact);
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

ConvergenceResult convergence_study(const RunConfig& base, int levels, int jobs) {
  require(levels >= 3, "convergence study needs at least 3 refinement levels");
  require(jobs >= 1, "jobs must be at least 1");
  require(base.oracle.has_value(), "convergence study needs an analytic oracle in the configuration");

  ConvergenceResult r;
  r.levels.resize(static_cast<std::size_t>(levels));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(levels));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int l = next++; l < levels; l = next++) {
      try {
        LevelError e = measure_error(refine(base, l));
        e.level = l;
        r.levels[static_cast<std::size_t>(l)] = e;
      } catch (...) {
        errors[static_cast<std::size_t>(l)] = std::current_exception();
      }
    }
  };
  const int n_threads = std::min(jobs, levels);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t l = 1; l < r.levels.size(); ++l) {
    r.order_l2.push_back(observed_order(r.levels[l - 1].error_l2, r.levels[l].error_l2));
    r.order_max.push_back(observed_order(r.levels[l - 1].error_max, r.levels[l].error_max));
  }
  return r;
}

void write_convergence_csv(const std::string& path, const ConvergenceResult& result) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write '" + path + "'");
  out << "level,h,dt,steps,t_final,error_l2,error_max,order_l2,order_max\n";
  for (std::size_t l = 0; l < result.levels.size(); ++l) {
    const LevelError& e = result.levels[l];
    out << fmt::format("{},{:.17g},{:.17g},{},{:.17g},{:.17g},{:.17g},", e.level, e.h, e.dt, e.steps, e.t_final,
                       e.error_l2, e.error_max);
    if (l > 0) out << fmt::format("{:.17g},{:.17g}", result.order_l2[l - 1], result.order_max[l - 1]);
    else out << ",";
    out << "\n";
  }
}

}  // namespace dirac_fields
