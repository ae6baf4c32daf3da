#include <dirac_fields/config.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

namespace dirac_fields {

using nlohmann::json;

namespace {

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  require(j.is_object(), std::string(where) + " must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    require(ok.count(item.key()) != 0, std::string("unknown key '") + item.key() + "' in " + where);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

Interval interval_from(const json& j, const char* what) {
  require(j.is_array() && j.size() == 2, std::string(what) + " entries must be [lower, upper] pairs");
  return Interval{j[0].get<double>(), j[1].get<double>()};
}

std::array<std::string, 3> strings3(const json& j, const char* what) {
  require(j.is_array() && j.size() == 3, std::string(what) + " must list three component expressions");
  return {j[0].get<std::string>(), j[1].get<std::string>(), j[2].get<std::string>()};
}

Signal signal_from(const json& j) {
  Signal s;
  if (j.is_string()) {
    s.expression = Expression(j.get<std::string>());
    return s;
  }
  check_keys(j, "system.voltage", {"times", "values"});
  s.times = j.at("times").get<std::vector<double>>();
  s.values = j.at("values").get<std::vector<double>>();
  return s;
}

SystemSpec system_from(const json& j) {
  check_keys(j, "system",
             {"kind", "dim", "extents", "nodes", "cells", "box", "rho0", "tau", "m", "lambda", "p", "ell", "c",
              "body_force", "boundary_force", "damping", "voltage", "current", "surface_current", "phi0", "nu0", "A0",
              "A_dot0", "fold_constant_force"});
  SystemSpec s;
  require(j.contains("kind"), "system.kind is required");
  s.kind = system_kind_from_string(j.at("kind").get<std::string>());

  if (j.contains("extents")) {
    s.extents.clear();
    for (const auto& e : j.at("extents")) s.extents.push_back(interval_from(e, "system.extents"));
    s.dim = static_cast<int>(s.extents.size());
  }
  if (j.contains("dim")) {
    s.dim = j.at("dim").get<int>();
    require(s.dim >= 1 && s.dim <= 3, "system.dim must be 1, 2 or 3");
    if (!j.contains("extents")) s.extents.assign(static_cast<std::size_t>(s.dim), Interval{0.0, 1.0});
  }
  if (j.contains("nodes")) {
    const json& n = j.at("nodes");
    if (n.is_number_integer()) s.nodes.assign(static_cast<std::size_t>(s.dim), n.get<Index>());
    else s.nodes = n.get<std::vector<Index>>();
  } else {
    s.nodes.assign(static_cast<std::size_t>(s.dim), 65);
  }
  if (j.contains("cells")) {
    const json& n = j.at("cells");
    if (n.is_number_integer()) s.cells.fill(n.get<Index>());
    else {
      require(n.is_array() && n.size() == 3, "system.cells must be an integer or three integers");
      for (std::size_t a = 0; a < 3; ++a) s.cells[a] = n[a].get<Index>();
    }
  }
  if (j.contains("box")) {
    const json& b = j.at("box");
    require(b.is_array() && b.size() == 3, "system.box must list three [lower, upper] pairs");
    for (std::size_t a = 0; a < 3; ++a) s.box[a] = interval_from(b[a], "system.box");
  }

  read(j, "rho0", s.rho0);
  read(j, "tau", s.tau);
  read(j, "m", s.m);
  read(j, "lambda", s.lambda);
  read(j, "p", s.p);
  read(j, "ell", s.ell);
  read(j, "c", s.c);
  read(j, "body_force", s.body_force);
  read(j, "boundary_force", s.boundary_force);
  read(j, "damping", s.damping);
  if (j.contains("voltage")) s.voltage = signal_from(j.at("voltage"));
  if (j.contains("current")) s.current = strings3(j.at("current"), "system.current");
  if (j.contains("surface_current")) s.surface_current = strings3(j.at("surface_current"), "system.surface_current");
  read(j, "phi0", s.phi0);
  read(j, "nu0", s.nu0);
  if (j.contains("A0")) s.A0 = strings3(j.at("A0"), "system.A0");
  if (j.contains("A_dot0")) s.A_dot0 = strings3(j.at("A_dot0"), "system.A_dot0");
  read(j, "fold_constant_force", s.fold_constant_force);

  // Compile every expression once so syntax errors are reported at parse time.
  for (const std::string* e : {&s.body_force, &s.boundary_force, &s.phi0, &s.nu0})
    if (!e->empty()) Expression{*e};
  for (const auto* arr : {&s.current, &s.surface_current, &s.A0, &s.A_dot0})
    for (const std::string& e : *arr)
      if (!e.empty()) Expression{e};
  return s;
}

IntegratorSpec integrator_from(const json& j) {
  check_keys(j, "integrator", {"scheme", "dt", "newton_tol", "newton_max_iter"});
  IntegratorSpec s;
  if (j.contains("scheme")) s.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  read(j, "dt", s.dt);
  read(j, "newton_tol", s.newton_tol);
  read(j, "newton_max_iter", s.newton_max_iter);
  return s;
}

OutputSpec output_from(const json& j) {
  check_keys(j, "output", {"directory", "stride", "fields"});
  OutputSpec s;
  read(j, "directory", s.directory);
  read(j, "stride", s.stride);
  read(j, "fields", s.fields);
  return s;
}

OracleSpec oracle_from(const json& j) {
  check_keys(j, "oracle", {"kind", "k", "length", "rho0", "tau", "v", "x0", "box", "amplitude"});
  OracleSpec s;
  require(j.contains("kind"), "oracle.kind is required");
  s.kind = oracle::analytic_kind_from_string(j.at("kind").get<std::string>());
  read(j, "k", s.params.k);
  read(j, "length", s.params.length);
  read(j, "rho0", s.params.rho0);
  read(j, "tau", s.params.tau);
  read(j, "v", s.params.v);
  read(j, "x0", s.params.x0);
  if (j.contains("box")) {
    const auto b = j.at("box").get<std::vector<double>>();
    require(b.size() == 3, "oracle.box must list three lengths");
    s.params.box = {b[0], b[1], b[2]};
  }
  read(j, "amplitude", s.params.amplitude);
  oracle::analytic(s.kind, s.params);  // parameter validation
  return s;
}

json interval_json(const Interval& i) { return json::array({i.lower, i.upper}); }

}  // namespace

void validate(const RunConfig& c) {
  validate(c.system);
  validate(c.integrator);
  require(std::isfinite(c.duration) && c.duration >= 0.0, "duration must be non-negative");
  require(c.output.stride >= 1, "output.stride must be at least 1");
  if (c.oracle) {
    const bool maxwell = c.system.kind == SystemKind::maxwell;
    require(maxwell == (c.oracle->kind == oracle::AnalyticKind::cavity_mode),
            "oracle kind does not match the configured system");
  }
}

RunConfig parse_config(const json& j) {
  check_keys(j, "config", {"system", "integrator", "duration", "output", "seed", "oracle"});
  RunConfig c;
  require(j.contains("system"), "config.system is required");
  c.system = system_from(j.at("system"));
  if (j.contains("integrator")) c.integrator = integrator_from(j.at("integrator"));
  read(j, "duration", c.duration);
  if (j.contains("output")) c.output = output_from(j.at("output"));
  read(j, "seed", c.seed);
  if (j.contains("oracle")) c.oracle = oracle_from(j.at("oracle"));
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
}

json to_json(const RunConfig& c) {
  const SystemSpec& s = c.system;
  json sys;
  sys["kind"] = to_string(s.kind);
  if (s.kind == SystemKind::maxwell) {
    sys["cells"] = s.cells;
    sys["box"] = json::array({interval_json(s.box[0]), interval_json(s.box[1]), interval_json(s.box[2])});
    sys["current"] = s.current;
    sys["surface_current"] = s.surface_current;
    sys["A0"] = s.A0;
    sys["A_dot0"] = s.A_dot0;
  } else {
    sys["dim"] = s.dim;
    json ext = json::array();
    for (const Interval& i : s.extents) ext.push_back(interval_json(i));
    sys["extents"] = ext;
    sys["nodes"] = s.nodes;
    sys["rho0"] = s.rho0;
    sys["tau"] = s.tau;
    sys["m"] = s.m;
    sys["lambda"] = s.lambda;
    sys["p"] = s.p;
    sys["ell"] = s.ell;
    sys["c"] = s.c;
    sys["body_force"] = s.body_force;
    sys["boundary_force"] = s.boundary_force;
    sys["damping"] = s.damping;
    if (s.voltage) {
      if (s.voltage->sampled()) sys["voltage"] = {{"times", s.voltage->times}, {"values", s.voltage->values}};
      else sys["voltage"] = s.voltage->expression.source();
    }
    sys["phi0"] = s.phi0;
    sys["nu0"] = s.nu0;
  }
  sys["fold_constant_force"] = s.fold_constant_force;

  json out;
  out["system"] = sys;
  out["integrator"] = {{"scheme", to_string(c.integrator.scheme)},
                       {"dt", c.integrator.dt},
                       {"newton_tol", c.integrator.newton_tol},
                       {"newton_max_iter", c.integrator.newton_max_iter}};
  out["duration"] = c.duration;
  out["output"] = {{"directory", c.output.directory}, {"stride", c.output.stride}, {"fields", c.output.fields}};
  out["seed"] = c.seed;
  if (c.oracle) {
    const auto& p = c.oracle->params;
    out["oracle"] = {{"kind", oracle::to_string(c.oracle->kind)},
                     {"k", p.k},
                     {"length", p.length},
                     {"rho0", p.rho0},
                     {"tau", p.tau},
                     {"v", p.v},
                     {"x0", p.x0},
                     {"box", p.box},
                     {"amplitude", p.amplitude}};
  }
  return out;
}

}  // namespace dirac_fields
