#include "elastica/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "elastica/hasimoto.hpp"
#include "elastica/scenarios.hpp"
#include "elastica/tension.hpp"

namespace elastica {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const size_t a = s.find_first_not_of(ws);
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
  return x;
}

long long parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  }
  return x;
}

unsigned long long parse_uint(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || v[0] == '-' || end != v.c_str() + v.size() || errno == ERANGE) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value +
                      "' as a non-negative integer");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a boolean");
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "scenario") {
    cfg.scenario = trim(value);
  } else if (key == "solver") {
    cfg.solver = trim(value);
  } else if (key == "N") {
    cfg.N = static_cast<int>(parse_int(key, value));
  } else if (key == "T") {
    cfg.T = parse_double(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_double(key, value);
  } else if (key == "psi") {
    cfg.psi = parse_double(key, value);
  } else if (key == "eps") {
    cfg.eps = parse_double(key, value);
  } else if (key == "mode") {
    cfg.mode = static_cast<int>(parse_int(key, value));
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, value);
  } else if (key == "out") {
    cfg.out = trim(value);
  } else if (key == "format") {
    cfg.format = trim(value);
  } else if (key == "sample_stride") {
    cfg.sample_stride = static_cast<int>(parse_int(key, value));
  } else if (key == "refine") {
    cfg.refine = static_cast<int>(parse_int(key, value));
  } else if (key == "mutate_f3") {
    cfg.mutate_f3 = parse_bool(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config file '" + path + "' line " + std::to_string(lineno) +
                        ": expected key=value");
    }
    apply_config_entry(cfg, t.substr(0, eq), t.substr(eq + 1));
  }
  return cfg;
}

CurveState build_scenario(const RunConfig& cfg) {
  if (cfg.scenario == "circle") return make_circle(cfg.N);
  if (cfg.scenario == "latitude") return make_latitude(cfg.N, cfg.psi);
  if (cfg.scenario == "latitude-drift") return make_latitude_drift(cfg.N, cfg.psi);
  if (cfg.scenario == "perturbed-circle") {
    return make_perturbed_circle(cfg.N, cfg.eps, cfg.mode, /*planar=*/true);
  }
  if (cfg.scenario == "perturbed-circle-3d") {
    return make_perturbed_circle(cfg.N, cfg.eps, cfg.mode, /*planar=*/false);
  }
  if (cfg.scenario == "random") return make_random_compatible(cfg.N, cfg.seed, /*planar=*/false);
  if (cfg.scenario == "random-planar") {
    return make_random_compatible(cfg.N, cfg.seed, /*planar=*/true);
  }
  throw ConfigError("unknown scenario '" + cfg.scenario + "'");
}

void validate_config(const RunConfig& cfg) {
  if (cfg.solver != "hasimoto" && cfg.solver != "direct" && cfg.solver != "both") {
    throw ConfigError("solver must be one of hasimoto | direct | both");
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("format must be csv or json");
  }
  if (cfg.N < 8 || cfg.N > 4096 || (cfg.N & (cfg.N - 1)) != 0) {
    throw ConfigError("N must be a power of two in [8, 4096]");
  }
  if (cfg.sample_stride < 1) throw ConfigError("sample_stride must be >= 1");
  if (cfg.refine < 1 || cfg.refine > 256) throw ConfigError("refine must lie in [1, 256]");
  (void)step_count(cfg.T, cfg.dt);
  if (cfg.solver == "direct" || cfg.solver == "both") {
    const double top = 0.5 * cfg.N;
    if (cfg.dt * top * top > 2.5) {
      throw ConfigError("direct path needs dt*(N/2)^2 <= 2.5; lower dt or N");
    }
  }
  (void)build_scenario(cfg);  // parameter bounds for the chosen scenario
}

std::string resolve_out_dir(const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  if (const char* env = std::getenv("ELASTICA_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "elastica_out";
}

// ---- tabular serialization --------------------------------------------------

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Table trajectory_table(const Trajectory& traj) {
  Table table;
  table.columns = {"t",  "s",  "u1",    "u2",    "u3",    "v1",
                   "v2", "v3", "kappa", "theta", "lambda"};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i < traj.curve_states.size(); ++i) {
    const CurveState& st = traj.curve_states[i];
    const double t = traj.times[i];
    const int N = st.u.grid();
    const std::vector<cplx> us = transform_to_samples(st.u);
    const std::vector<cplx> vs = transform_to_samples(st.v);
    const std::vector<cplx> ks = transform_to_samples(curvature(st.u));

    std::vector<cplx> thetas;
    try {
      thetas = transform_to_samples(torsion(st.u).theta);
    } catch (const DegenerateCurvature&) {
      thetas.assign(static_cast<size_t>(N), cplx(nan, 0.0));
    }
    std::vector<cplx> lambdas;
    try {
      lambdas = transform_to_samples(solve_tension(st));
    } catch (const ElasticaError&) {
      lambdas.assign(static_cast<size_t>(N), cplx(nan, 0.0));
    }

    for (int j = 0; j < N; ++j) {
      const size_t k = static_cast<size_t>(j);
      std::vector<double> row = {t,
                                 kTwoPi * j / N,
                                 us[k].real(),
                                 us[k + static_cast<size_t>(N)].real(),
                                 us[k + static_cast<size_t>(2) * N].real(),
                                 vs[k].real(),
                                 vs[k + static_cast<size_t>(N)].real(),
                                 vs[k + static_cast<size_t>(2) * N].real(),
                                 ks[k].real(),
                                 thetas[k].real(),
                                 lambdas[k].real()};
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

Table diagnostics_table(const Trajectory& traj) {
  Table table;
  table.columns = {"t",    "kinetic", "potential",    "total_energy", "closure_defect",
                   "beta", "e0",      "picard_iters", "contraction"};
  for (const DiagnosticsRow& d : traj.diagnostics) {
    table.rows.push_back({d.t, d.kinetic, d.potential, d.total, d.closure_defect, d.beta, d.e0,
                          static_cast<double>(d.picard_iters), d.contraction});
  }
  return table;
}

namespace {

void write_table_csv(const Table& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << format_double(row[c]);
    }
    out << '\n';
  }
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

void write_table_json(const Table& table, const std::string& path) {
  nlohmann::ordered_json j;
  j["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) rows.push_back(row);
  j["rows"] = std::move(rows);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << j.dump(1) << '\n';
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

}  // namespace

void write_table(const Table& table, const std::string& path, const std::string& format) {
  if (format == "csv") {
    write_table_csv(table, path);
  } else if (format == "json") {
    write_table_json(table, path);
  } else {
    throw ConfigError("format must be csv or json");
  }
}

Table read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("'" + path + "' is empty");
  {
    std::stringstream ss(trim(line));
    std::string cell;
    while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(t);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      errno = 0;
      char* end = nullptr;
      const double x = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size()) {
        throw ConfigError("'" + path + "': cannot parse cell '" + cell + "'");
      }
      row.push_back(x);
    }
    if (row.size() != table.columns.size()) {
      throw ConfigError("'" + path + "': row width does not match header");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

// ---- run orchestration --------------------------------------------------------

namespace {

// Invariants every accepted trajectory must satisfy, evaluated per sample.
void append_trajectory_checks(std::vector<RunCheck>& checks, const Trajectory& traj,
                              const std::string& tag) {
  {
    RunCheck c;
    c.name = tag + ".completed";
    c.pass = traj.completed;
    c.measured = traj.completed ? 1.0 : 0.0;
    c.tolerance = 1.0;
    if (!traj.completed) {
      c.details = "aborted at t = " + format_double(traj.failure_time) + ": " +
                  traj.failure_reason;
    }
    checks.push_back(std::move(c));
  }
  {
    RunCheck c;
    c.name = tag + ".compatibility";
    c.tolerance = 1e-6;
    double worst = 0.0;
    for (const CurveState& st : traj.curve_states) {
      const CompatibilityReport rep = check_compatibility(st.u, st.v);
      worst = std::max({worst, rep.unit_defect, rep.tangency_defect});
    }
    c.measured = worst;
    c.pass = worst <= c.tolerance;
    c.details = "max over samples of | |u|-1 | and |u.v|";
    checks.push_back(std::move(c));
  }
  {
    RunCheck c;
    c.name = tag + ".tangent_mean_law";
    c.tolerance = 1e-6;
    double worst = 0.0;
    if (!traj.curve_states.empty()) {
      const Eigen::Vector3cd m0 = mean_vector(traj.curve_states.front().u);
      const Eigen::Vector3cd v0 = mean_vector(traj.curve_states.front().v);
      for (size_t i = 0; i < traj.curve_states.size(); ++i) {
        const Eigen::Vector3cd mt = mean_vector(traj.curve_states[i].u);
        worst = std::max(worst, (mt - m0 - traj.times[i] * v0).norm());
      }
    }
    c.measured = worst;
    c.pass = worst <= c.tolerance;
    c.details = "mean u(t) = mean u(0) + t * mean v(0)";
    checks.push_back(std::move(c));
  }
  {
    RunCheck c;
    c.name = tag + ".energy_drift";
    c.tolerance = 1e-4;
    double worst = 0.0;
    if (!traj.diagnostics.empty()) {
      const double e0 = traj.diagnostics.front().total;
      for (const DiagnosticsRow& d : traj.diagnostics) {
        worst = std::max(worst, std::abs(d.total - e0));
      }
      worst /= std::max(std::abs(e0), 1e-12);
    }
    c.measured = worst;
    c.pass = worst <= c.tolerance;
    c.details = "relative drift of kinetic + bending energy";
    checks.push_back(std::move(c));
  }
}

}  // namespace

RunReport run(const RunConfig& cfg) {
  validate_config(cfg);  // throws ConfigError before anything is written
  const CurveState init = build_scenario(cfg);
  const std::string dir = resolve_out_dir(cfg);
  std::filesystem::create_directories(dir);

  RunReport report;
  auto emit = [&](const Table& table, const std::string& stem) {
    const std::string path = dir + "/" + stem + "." + cfg.format;
    write_table(table, path, cfg.format);
    report.artifacts.push_back(path);
  };

  std::optional<Trajectory> traj_h;
  std::optional<Trajectory> traj_d;

  const bool want_h = cfg.solver == "hasimoto" || cfg.solver == "both";
  const bool want_d = cfg.solver == "direct" || cfg.solver == "both";

  if (want_h) {
    const ForwardResult fw = forward_transform(init.u, init.v, cfg.refine);
    EvolveOptions eo;
    eo.refine = cfg.refine;
    eo.sample_stride = cfg.sample_stride;
    eo.step.mutate_f3_sign = cfg.mutate_f3;
    traj_h = evolve_hasimoto(fw.state, fw.frame0, init.momentum, cfg.T, cfg.dt, eo);
    emit(trajectory_table(*traj_h), "trajectory_hasimoto");
    emit(diagnostics_table(*traj_h), "diagnostics_hasimoto");
    append_trajectory_checks(report.checks, *traj_h, "hasimoto");
  }
  if (want_d) {
    DirectOptions dopts;
    dopts.sample_stride = cfg.sample_stride;
    traj_d = evolve_direct(init, cfg.T, cfg.dt, dopts);
    emit(trajectory_table(*traj_d), "trajectory_direct");
    emit(diagnostics_table(*traj_d), "diagnostics_direct");
    append_trajectory_checks(report.checks, *traj_d, "direct");
  }

  if (want_h && want_d) {
    Table table;
    table.columns = {"t", "sup_distance"};
    const size_t count = std::min(traj_h->curve_states.size(), traj_d->curve_states.size());
    double worst = 0.0;
    for (size_t i = 0; i < count; ++i) {
      const double d = sup_distance(traj_h->curve_states[i].u, traj_d->curve_states[i].u);
      worst = std::max(worst, d);
      table.rows.push_back({traj_h->times[i], d});
    }
    emit(table, "discrepancy");
    RunCheck c;
    c.name = "dual_solver_discrepancy";
    c.tolerance = 1e-3;
    c.measured = worst;
    c.pass = worst <= c.tolerance;
    c.details = "sup distance between reconstructed tangents at shared sample times";
    report.checks.push_back(std::move(c));
  }

  const bool aborted = (traj_h && !traj_h->completed) || (traj_d && !traj_d->completed);
  bool violated = false;
  for (const RunCheck& c : report.checks) violated = violated || !c.pass;
  report.exit_code = aborted ? 2 : (violated ? 3 : 0);

  nlohmann::ordered_json j;
  j["config"] = {{"scenario", cfg.scenario},
                 {"solver", cfg.solver},
                 {"N", cfg.N},
                 {"T", cfg.T},
                 {"dt", cfg.dt},
                 {"psi", cfg.psi},
                 {"eps", cfg.eps},
                 {"mode", cfg.mode},
                 {"seed", cfg.seed},
                 {"format", cfg.format},
                 {"sample_stride", cfg.sample_stride},
                 {"refine", cfg.refine},
                 {"mutate_f3", cfg.mutate_f3}};
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const RunCheck& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"details", c.details}});
  }
  j["checks"] = std::move(checks);
  j["exit_code"] = report.exit_code;
  j["artifacts"] = report.artifacts;
  {
    const std::string path = dir + "/report.json";
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << j.dump(1) << '\n';
    report.artifacts.push_back(path);
  }
  return report;
}

}  // namespace elastica
