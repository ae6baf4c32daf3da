// Acceptance run: one PASS/FAIL line per criterion, detail lines indented
// below it. Exit status is the number of failed criteria.

#include <dirac_fields/convergence.hpp>
#include <dirac_fields/dynamics.hpp>
#include <dirac_fields/maxwell.hpp>
#include <dirac_fields/oracle.hpp>
#include <dirac_fields/systems.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dirac_fields;

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

constexpr std::uint64_t kSeed = 1234567;

int failures = 0;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void require(bool ok, const std::string& line) {
    pass = pass && ok;
    details.push_back(fmt::format("{} {}", ok ? "ok  " : "FAIL", line));
  }
};

void criterion(int number, const std::string& title, double time_limit, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.details.push_back(std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = time_limit <= 0.0 || seconds < time_limit;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  const std::string limit = time_limit > 0.0 ? fmt::format(", limit {:.0f} s", time_limit) : "";
  fmt::print("[{}] criterion {:>2}: {} ({:.2f} s{})\n", pass ? "PASS" : "FAIL", number, title, seconds, limit);
  for (const std::string& d : o.details) fmt::print("        {}\n", d);
  std::fflush(stdout);
}

Vector random_vector(Rng& rng, Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

double abs_pair(const Duality& d, const RestrictedCovector<>& c, const Vector& v) {
  double s = (d.interior_weight.array() * c.interior.array() * v.array()).abs().sum();
  for (Index b = 0; b < d.boundary_size(); ++b)
    s += std::abs(d.boundary_weight[b] * c.boundary[b] * v[d.trace_index[static_cast<std::size_t>(b)]]);
  return s;
}

double relative_drift(const TrajectoryRecord& rec) {
  const double e0 = rec.samples.front().energy.total_energy;
  double drift = 0.0;
  for (const TrajectorySample& s : rec.samples) drift = std::max(drift, std::abs(s.energy.total_energy - e0) / e0);
  return drift;
}

double order(double coarse, double fine) { return std::log2(coarse / fine); }

bool order_ok(double p) { return std::abs(p - 2.0) <= 0.2; }

// 1 -----------------------------------------------------------------------

Outcome lemma38() {
  Outcome o;
  Rng rng(kSeed);
  const std::vector<Grid> grids = {make_grid(1, {Interval{0.0, 1.0}}, {64}),
                                   make_grid(2, {Interval{0.0, 1.0}, Interval{0.0, 1.0}}, {32, 32})};
  const std::vector<std::pair<const char*, DensitySpec>> densities = {
      {"wave", wave_density(1.1, 0.9)},
      {"klein_gordon p=3", klein_gordon_density(1.3, 0.7, 0.9, 0.5, 3)},
      {"sine_gordon", sine_gordon_density(1.0, 1.0)},
      {"telegraph", telegraph_density(1.2, 0.8)}};
  for (const Grid& g : grids) {
    const oracle::DenseOperators dense = oracle::dense_operators(g);
    for (const auto& [name, spec] : densities) {
      const ScalarLagrangian lag(g, spec);
      double worst = 0.0;
      for (int draw = 0; draw < 100; ++draw) {
        const Vector phi = random_vector(rng, g.size()), nu = random_vector(rng, g.size());
        const Vector dphi = random_vector(rng, g.size()), dnu = random_vector(rng, g.size());
        const double exact = oracle::directional_derivative(g, dense, spec, phi, nu, dphi, dnu);
        const FunctionalDerivatives fd = lag.functional_derivatives(phi, nu);
        const double paired = pair(lag.duality(), fd.d_phi, dphi) + pair(lag.duality(), fd.d_nu, dnu);
        const double scale = std::max(
            {1.0, std::abs(exact), abs_pair(lag.duality(), fd.d_phi, dphi) + abs_pair(lag.duality(), fd.d_nu, dnu)});
        worst = std::max(worst, std::abs(exact - paired) / scale);
      }
      o.require(worst <= 1e-12, fmt::format("{}D {:<17} max |dL.delta - pair| / scale = {:.2e} (tol 1e-12)", g.dim(),
                                            name, worst));
    }
  }
  return o;
}

// 2 -----------------------------------------------------------------------

Outcome lemma46() {
  Outcome o;
  Rng rng(kSeed + 1);
  const CubicalComplex cx = make_complex({8, 8, 8});
  const MaxwellLagrangian lag(cx);
  const SparseMatrix& d1 = cx.coboundary(1);
  // L_h written out directly; central differences with unit step are exact on quadratics.
  auto L = [&](const Vector& A, const Vector& nu) {
    const Vector B = d1 * A;
    return 0.5 * nu.dot(cx.hodge(1).cwiseProduct(nu)) - 0.5 * B.dot(cx.hodge(2).cwiseProduct(B));
  };
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const Vector A = random_vector(rng, lag.size()), nu = random_vector(rng, lag.size());
    const Vector dA = random_vector(rng, lag.size()), dnu = random_vector(rng, lag.size());
    const double exact = 0.5 * (L(A + dA, nu + dnu) - L(A - dA, nu - dnu));
    const FunctionalDerivatives fd = lag.functional_derivatives(A, nu);
    const double paired = wedge_pair(cx, 1, dA, fd.d_phi) + wedge_pair(cx, 1, dnu, fd.d_nu);
    const double scale = std::max(
        {1.0, std::abs(exact), abs_pair(lag.duality(), fd.d_phi, dA) + abs_pair(lag.duality(), fd.d_nu, dnu)});
    worst = std::max(worst, std::abs(exact - paired) / scale);
  }
  o.require(worst <= 1e-12, fmt::format("8x8x8, 100 draws: max relative identity residual {:.2e} (tol 1e-12)", worst));
  return o;
}

// 3 -----------------------------------------------------------------------

Outcome dirac() {
  Outcome o;
  Rng rng(kSeed + 2);
  const Grid g = make_grid(1, {Interval{0.0, 1.0}}, {12});
  const Duality d = g.duality();
  double iso = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    auto tangent = [&] {
      return PhaseTangent<>{random_vector(rng, d.size()),
                            RestrictedCovector<>{random_vector(rng, d.size()), random_vector(rng, d.boundary_size())}};
    };
    const PhaseTangent<> a = tangent(), b = tangent();
    const DiracElement<> ea{a, omega_flat(a)}, eb{b, omega_flat(b)};
    const double scale = std::max(1.0, a.inf_norm() * b.inf_norm());
    iso = std::max(iso, std::abs(dirac_pairing(d, ea, eb)) / scale);
  }
  o.require(iso <= 1e-12, fmt::format("isotropy over 100 graph pairs: {:.2e} (tol 1e-12)", iso));
  for (Index n : {3, 4, 5}) {
    const oracle::DiracRankReport r = oracle::dirac_rank_check(n);
    const bool ok = r.equal && r.dim_D == 2 * n + 2 && r.dim_perp == 2 * n + 2 && r.fiber_dim == 2 * (2 * n + 2);
    o.require(ok, fmt::format("n={}: fiber {}, dim D {}, dim D_perp {}, max principal angle {:.2e} (tol 1e-10)", n,
                              r.fiber_dim, r.dim_D, r.dim_perp, r.max_angle));
  }
  return o;
}

// 4 -----------------------------------------------------------------------

double trajectory_gap(const SystemSpec& spec, double dt, Index steps) {
  ScalarSystem sys = std::get<ScalarSystem>(build(spec));
  IntegratorSpec integ;
  integ.dt = dt;
  integ.newton_tol = 1e-14;
  integ.newton_max_iter = 50;
  std::vector<Vector> dirac{sys.initial.phi};
  RunOptions opts;
  opts.keep_states = false;
  opts.on_step = [&](Index, double, const StepResult& r) { dirac.push_back(r.state.phi); };
  const double T = static_cast<double>(steps) * dt;
  run(sys.lagrangian, sys.force, sys.initial, integ, T, opts);
  const std::vector<Vector> direct = oracle::direct_el_integrator(sys, dt, T);
  if (direct.size() != dirac.size()) return INFINITY;
  double gap = 0.0;
  for (std::size_t k = 0; k < dirac.size(); ++k) gap = std::max(gap, (dirac[k] - direct[k]).cwiseAbs().maxCoeff());
  return gap;
}

Outcome equivalence() {
  Outcome o;
  SystemSpec spec;
  spec.nodes = {64};
  spec.phi0 = "cos(pi*x) + 0.2*sin(2*pi*x)";
  spec.nu0 = "0.3*cos(2*pi*x)";
  spec.body_force = "sin(3*x)*cos(t)";
  spec.boundary_force = "0.5*cos(2*t)*(1 + x)";
  spec.kind = SystemKind::membrane;
  const double wave = trajectory_gap(spec, 1e-3, 100);
  o.require(wave <= 1e-10, fmt::format("linear wave, n=64, 100 steps: max |phi_dirac - phi_direct| = {:.2e} (tol 1e-10)",
                                       wave));
  spec.kind = SystemKind::sine_gordon;
  spec.phi0 = "4*atan(exp(4*(x - 0.5)))";
  const double sg = trajectory_gap(spec, 1e-3, 100);
  o.require(sg <= 1e-8, fmt::format("sine-Gordon, n=64, 100 steps: max |phi_dirac - phi_direct| = {:.2e} (tol 1e-8)", sg));
  return o;
}

// 5 -----------------------------------------------------------------------

Outcome conservation() {
  Outcome o;
  IntegratorSpec integ;
  {
    SystemSpec spec;
    spec.nodes = {129};
    spec.phi0 = "cos(pi*x) + 0.3*cos(3*pi*x)";
    spec.nu0 = "0.5*sin(2*pi*x)";
    ScalarSystem sys = std::get<ScalarSystem>(build(spec));
    integ.dt = 1e-3;
    RunOptions opts;
    opts.keep_states = false;
    const TrajectoryRecord rec = run(sys.lagrangian, sys.force, sys.initial, integ, 1.0, opts);
    const double drift = relative_drift(rec);
    o.require(rec.steps == 1000 && drift <= 1e-12,
              fmt::format("linear wave n=129, {} steps: relative drift {:.2e} (tol 1e-12)", rec.steps, drift));
  }
  {
    SystemSpec spec;
    spec.kind = SystemKind::maxwell;
    spec.cells = {8, 8, 8};
    spec.A0 = {"sin(pi*x)*cos(pi*y)/(2*pi)", "-cos(pi*x)*sin(pi*y)/(2*pi)", "0"};
    MaxwellSystem sys = std::get<MaxwellSystem>(build(spec));
    integ.dt = 1e-2;
    RunOptions opts;
    opts.keep_states = false;
    const TrajectoryRecord rec = run(sys.lagrangian, sys.force, sys.initial, integ, 10.0, opts);
    const double drift = relative_drift(rec);
    o.require(rec.steps == 1000 && drift <= 1e-12,
              fmt::format("Maxwell cavity 8x8x8, {} steps: relative drift {:.2e} (tol 1e-12)", rec.steps, drift));
  }
  return o;
}

// 6 -----------------------------------------------------------------------

// Cumulative work minus energy gain for the telegraph line driven by sin t,
// energy and power evaluated here from the nodal states with dense operators.
struct TelegraphBalance {
  double trapezoidal = 0.0;
  double midpoint = 0.0;
};

TelegraphBalance telegraph_balance(double dt) {
  SystemSpec spec;
  spec.kind = SystemKind::telegraph;
  spec.ell = 1.0;
  spec.c = 1.0;
  spec.nodes = {201};
  spec.voltage = Signal{Expression("sin(t)"), {}, {}};
  ScalarSystem sys = std::get<ScalarSystem>(build(spec));
  const Grid& g = sys.lagrangian.grid();
  const oracle::DenseOperators dense = oracle::dense_operators(g);
  const Index right = g.size() - 1;
  auto energy = [&](const Vector& phi, const Vector& nu) {
    const Vector dphi = dense.D[0] * phi;
    return dense.H.dot(0.5 * spec.ell * nu.cwiseAbs2() + 0.5 / spec.c * dphi.cwiseAbs2());
  };

  IntegratorSpec integ;
  integ.dt = dt;
  std::vector<double> t{0.0};
  std::vector<Vector> phi{sys.initial.phi}, nu{sys.initial.nu};
  RunOptions opts;
  opts.keep_states = false;
  opts.on_step = [&](Index, double t1, const StepResult& r) {
    t.push_back(t1);
    phi.push_back(r.state.phi);
    nu.push_back(r.state.nu);
  };
  run(sys.lagrangian, sys.force, sys.initial, integ, 1.0, opts);

  double work_trap = 0.0, work_mid = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double h = t[k] - t[k - 1];
    work_trap += 0.5 * h * (std::sin(t[k - 1]) * nu[k - 1][right] + std::sin(t[k]) * nu[k][right]);
    work_mid += h * std::sin(0.5 * (t[k - 1] + t[k])) * 0.5 * (nu[k - 1][right] + nu[k][right]);
  }
  const double gain = energy(phi.back(), nu.back()) - energy(phi.front(), nu.front());
  return {std::abs(work_trap - gain), std::abs(work_mid - gain)};
}

Outcome telegraph() {
  Outcome o;
  const std::vector<double> dts = {4e-3, 2e-3, 1e-3};
  std::vector<TelegraphBalance> b;
  for (double dt : dts) b.push_back(telegraph_balance(dt));
  for (std::size_t i = 0; i < dts.size(); ++i) {
    const double C = b[i].trapezoidal / (dts[i] * dts[i]);
    o.require(C <= 1.0, fmt::format("dt={:.0e}: |work - gain| = {:.3e}, C = defect/dt^2 = {:.3f} (tol C <= 1)", dts[i],
                                    b[i].trapezoidal, C));
  }
  for (std::size_t i = 1; i < dts.size(); ++i) {
    const double p = order(b[i - 1].trapezoidal, b[i].trapezoidal);
    o.require(order_ok(p), fmt::format("order dt {:.0e} -> {:.0e}: {:.3f} (2.0 +- 0.2)", dts[i - 1], dts[i], p));
  }
  double mid = 0.0;
  for (const auto& x : b) mid = std::max(mid, x.midpoint);
  o.details.push_back(fmt::format("info midpoint-sampled work matches the gain to {:.2e} at every dt", mid));
  return o;
}

// 7 -----------------------------------------------------------------------

Outcome maxwell_structure() {
  Outcome o;
  const CubicalComplex cx = make_complex({8, 8, 8});
  const double dd1 = SparseMatrix(cx.coboundary(1) * cx.coboundary(0)).cwiseAbs().sum();
  const double dd2 = SparseMatrix(cx.coboundary(2) * cx.coboundary(1)).cwiseAbs().sum();
  o.require(dd1 == 0.0 && dd2 == 0.0, fmt::format("|d1 d0| = {}, |d2 d1| = {} (exact)", dd1, dd2));

  {
    Rng rng(kSeed + 3);
    const MaxwellLagrangian lag(cx);
    const ForceModel none;
    const PontryaginPoint<> init = initial_state(lag, random_vector(rng, lag.size()), random_vector(rng, lag.size()));
    IntegratorSpec integ;
    integ.dt = 1e-2;
    const Vector zero = Vector::Zero(lag.size());
    Vector prev = init.nu;
    double worst = 0.0;
    RunOptions opts;
    opts.keep_states = false;
    opts.on_step = [&](Index, double, const StepResult& r) {
      const ChargeAudit a = charge_conservation_residual(cx, prev, r.state.nu, integ.dt, zero);
      worst = std::max(worst, a.residual / a.scale);
      prev = r.state.nu;
    };
    run(lag, none, init, integ, 1.0, opts);
    o.require(worst <= 1e-12, fmt::format("unforced charge residual, 100 steps from random data: {:.2e} x scale "
                                          "(tol 1e-12)", worst));
  }

  SystemSpec spec;
  spec.kind = SystemKind::maxwell;
  spec.cells = {8, 8, 8};
  spec.A0 = {"sin(pi*x)*cos(pi*y)/(2*pi)", "-cos(pi*x)*sin(pi*y)/(2*pi)", "0"};
  spec.current = {"sin(pi*y)*sin(pi*z)*cos(3*t)", "0", "x*(1 - x)*sin(2*t)"};
  const std::vector<double> dts = {4e-2, 2e-2, 1e-2};
  std::vector<double> residual;
  double mid = 0.0;
  for (double dt : dts) {
    MaxwellSystem sys = std::get<MaxwellSystem>(build(spec));
    IntegratorSpec integ;
    integ.dt = dt;
    std::vector<TimedState> window{{0.0, sys.initial.phi, sys.initial.nu}};
    RunOptions opts;
    opts.keep_states = false;
    opts.on_step = [&](Index, double t1, const StepResult& r) { window.push_back({t1, r.state.phi, r.state.nu}); };
    run(sys.lagrangian, sys.force, sys.initial, integ, 2.0, opts);
    residual.push_back(std::abs(poynting_audit(sys.lagrangian, sys.force, window, PowerQuadrature::trapezoidal)
                                    .balance_residual));
    mid = std::max(mid, std::abs(poynting_audit(sys.lagrangian, sys.force, window).balance_residual));
  }
  for (std::size_t i = 1; i < dts.size(); ++i) {
    const double p = order(residual[i - 1], residual[i]);
    o.require(order_ok(p), fmt::format("Poynting residual dt {:.0e} -> {:.0e}: {:.3e} -> {:.3e}, order {:.3f} "
                                       "(2.0 +- 0.2)",
                                       dts[i - 1], dts[i], residual[i - 1], residual[i], p));
  }
  o.details.push_back(fmt::format("info midpoint-sampled Poynting residual {:.2e}", mid));
  return o;
}

// 8 -----------------------------------------------------------------------

void study(Outcome& o, const std::string& name, const RunConfig& base, bool space, bool time) {
  std::vector<LevelError> e;
  for (int l = 0; l < 3; ++l) e.push_back(measure_error(refine(base, l, space, time)));
  for (int l = 1; l < 3; ++l) {
    const double p = order(e[static_cast<std::size_t>(l - 1)].error_l2, e[static_cast<std::size_t>(l)].error_l2);
    o.require(order_ok(p), fmt::format("{:<24} h {:.4g} dt {:.4g}: L2 error {:.3e} -> {:.3e}, order {:.3f}", name,
                                       e[static_cast<std::size_t>(l)].h, e[static_cast<std::size_t>(l)].dt,
                                       e[static_cast<std::size_t>(l - 1)].error_l2,
                                       e[static_cast<std::size_t>(l)].error_l2, p));
  }
}

Outcome convergence() {
  Outcome o;
  RunConfig wave;
  wave.system.kind = SystemKind::membrane;
  wave.oracle = OracleSpec{};
  wave.duration = 0.5;
  wave.system.nodes = {21};
  wave.integrator.dt = 1e-4;
  study(o, "standing wave, space", wave, true, false);
  wave.system.nodes = {801};
  wave.integrator.dt = 0.1;
  study(o, "standing wave, time", wave, false, true);

  RunConfig kink;
  kink.system.kind = SystemKind::sine_gordon;
  kink.system.extents = {Interval{-8.0, 8.0}};
  OracleSpec spec;
  spec.kind = oracle::AnalyticKind::sine_gordon_kink;
  spec.params.v = 0.5;
  kink.oracle = spec;
  kink.duration = 1.0;
  kink.system.boundary_force = "sign(x)*2/sqrt(0.75)/cosh((x - 0.5*t)/sqrt(0.75))";
  kink.system.nodes = {81};
  kink.integrator.dt = 1e-3;
  study(o, "sine-Gordon kink, space", kink, true, false);
  kink.system.nodes = {6401};
  kink.integrator.dt = 0.2;
  study(o, "sine-Gordon kink, time", kink, false, true);
  return o;
}

// 9 -----------------------------------------------------------------------

Outcome fold() {
  Outcome o;
  IntegratorSpec integ;
  integ.dt = 1e-3;
  {
    SystemSpec spec;
    spec.nodes = {65};
    spec.phi0 = "cos(pi*x)";
    spec.nu0 = "sin(2*pi*x)";
    spec.body_force = "1 + x*x";
    spec.boundary_force = "0.5 - x";
    ScalarSystem forced = std::get<ScalarSystem>(build(spec));
    spec.fold_constant_force = true;
    ScalarSystem folded = std::get<ScalarSystem>(build(spec));
    const TrajectoryRecord a = run(forced.lagrangian, forced.force, forced.initial, integ, 10 * integ.dt);
    const TrajectoryRecord b = run(folded.lagrangian, folded.force, folded.initial, integ, 10 * integ.dt);
    double gap = 0.0;
    for (std::size_t k = 0; k < a.samples.size(); ++k)
      gap = std::max({gap, (a.samples[k].state.phi - b.samples[k].state.phi).cwiseAbs().maxCoeff(),
                      (a.samples[k].state.nu - b.samples[k].state.nu).cwiseAbs().maxCoeff()});
    o.require(folded.force.empty() && a.samples.size() == 11 && gap <= 1e-12,
              fmt::format("wave, 10 steps: max |forced - folded| = {:.2e} (tol 1e-12)", gap));
  }
  {
    SystemSpec spec;
    spec.kind = SystemKind::maxwell;
    spec.cells = {6, 6, 6};
    spec.A0 = {"sin(pi*x)*cos(pi*y)/(2*pi)", "-cos(pi*x)*sin(pi*y)/(2*pi)", "0"};
    spec.current = {"sin(pi*y)", "0.3", "x*z"};
    spec.surface_current = {"0", "0.2*z", "0"};
    integ.dt = 1e-2;
    MaxwellSystem forced = std::get<MaxwellSystem>(build(spec));
    spec.fold_constant_force = true;
    MaxwellSystem folded = std::get<MaxwellSystem>(build(spec));
    const TrajectoryRecord a = run(forced.lagrangian, forced.force, forced.initial, integ, 10 * integ.dt);
    const TrajectoryRecord b = run(folded.lagrangian, folded.force, folded.initial, integ, 10 * integ.dt);
    double gap = 0.0, charge_gap = 0.0;
    for (std::size_t k = 0; k < a.samples.size(); ++k)
      gap = std::max({gap, (a.samples[k].state.phi - b.samples[k].state.phi).cwiseAbs().maxCoeff(),
                      (a.samples[k].state.nu - b.samples[k].state.nu).cwiseAbs().maxCoeff()});
    const Vector J = forced.force.body_at(0.0, a.samples[0].state.phi, a.samples[0].state.nu, forced.lagrangian.size());
    for (std::size_t k = 1; k < a.samples.size(); ++k) {
      const ChargeAudit ca =
          charge_conservation_residual(forced.lagrangian.complex(), a.samples[k - 1].state.nu, a.samples[k].state.nu,
                                       integ.dt, J);
      const ChargeAudit cb =
          charge_conservation_residual(folded.lagrangian.complex(), b.samples[k - 1].state.nu, b.samples[k].state.nu,
                                       integ.dt, J);
      charge_gap = std::max(charge_gap, std::abs(ca.residual - cb.residual) / ca.scale);
    }
    o.require(folded.force.empty() && a.samples.size() == 11 && gap <= 1e-12,
              fmt::format("Maxwell 6x6x6, 10 steps: max |forced - folded| = {:.2e} (tol 1e-12)", gap));
    o.require(charge_gap <= 1e-12,
              fmt::format("Maxwell charge residual forced vs folded: difference {:.2e} x scale (tol 1e-12)", charge_gap));
  }
  return o;
}

// 10 ----------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / fmt::format("dirac_fields_determinism_{}", kSeed);
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path config = root / "telegraph.json";
  {
    std::ofstream out(config);
    out << R"json({
  "system": {"kind": "telegraph", "nodes": 101, "ell": 1.0, "c": 1.0, "voltage": "sin(t)",
             "phi0": "0.1*cos(pi*x)", "nu0": "0"},
  "integrator": {"scheme": "implicit_midpoint", "dt": 0.001},
  "duration": 0.5,
  "output": {"directory": "unused", "stride": 50, "fields": true},
  "seed": 7
})json";
  }
  std::vector<fs::path> dirs = {root / "a", root / "b"};
  for (const fs::path& d : dirs) {
    const std::string cmd =
        fmt::format("DIRAC_FIELDS_OUT='{}' '{}' run '{}' > /dev/null", d.string(), DIRAC_FIELDS_CLI, config.string());
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, fmt::format("dirac-fields run into {} exited with {}", d.filename().string(), rc));
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dirs[0])) names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());
  std::size_t identical = 0;
  for (const std::string& n : names) {
    const std::string a = slurp(dirs[0] / n), b = slurp(dirs[1] / n);
    if (!a.empty() && a == b) ++identical;
    else o.require(false, fmt::format("{} differs between reruns", n));
  }
  std::size_t count_b = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dirs[1])) ++count_b;
  const bool has_energy = std::find(names.begin(), names.end(), "energy.csv") != names.end();
  o.require(has_energy && names.size() == count_b && identical == names.size() && names.size() >= 3,
            fmt::format("{} of {} output files byte-identical (energy.csv, fields_*.csv, run_meta.json)", identical,
                        names.size()));
  fs::remove_all(root);
  return o;
}

}  // namespace

int main() {
  fmt::print("acceptance run, seed {}\n", kSeed);
  criterion(1, "discrete directional-derivative identity, scalar densities", 5.0, lemma38);
  criterion(2, "discrete directional-derivative identity, Maxwell", 10.0, lemma46);
  criterion(3, "Dirac structure: isotropy and D = D_perp", 2.0, dirac);
  criterion(4, "Dirac system vs direct Lagrange-d'Alembert integrator", 10.0, equivalence);
  criterion(5, "energy conservation, unforced quadratic systems", 60.0, conservation);
  criterion(6, "energy balance, telegraph line driven by sin t", 30.0, telegraph);
  criterion(7, "Maxwell structure: d d = 0, charge, Poynting", 60.0, maxwell_structure);
  criterion(8, "convergence against analytic solutions", 120.0, convergence);
  criterion(9, "constant-force fold equals forced run", 0.0, fold);
  criterion(10, "determinism of run outputs", 0.0, determinism);
  fmt::print("{} of 10 criteria passed\n", 10 - failures);
  return failures;
}
