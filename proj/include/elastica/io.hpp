#pragma once

#include <string>
#include <vector>

#include "elastica/dynamics.hpp"
#include "elastica/geometry.hpp"

namespace elastica {

// One run = one scenario, one or two solvers, one output directory.
struct RunConfig {
  std::string scenario = "perturbed-circle";
  std::string solver = "hasimoto";  // hasimoto | direct | both
  int N = 64;
  double T = 0.1;
  double dt = 1e-3;
  double psi = 1.0471975511965977;  // latitude polar angle (default pi/3)
  double eps = 0.01;                // perturbation amplitude
  int mode = 3;                     // perturbation wave number
  unsigned long long seed = 0;      // random scenarios
  std::string out;                  // output directory; empty -> environment/default
  std::string format = "csv";       // csv | json
  int sample_stride = 1;            // record every k-th step
  int refine = kFrameRefine;        // transport fine-grid factor
  bool mutate_f3 = false;           // fault injection for sensitivity checks
};

// Apply one key=value setting. Unknown keys or unparsable values throw ConfigError.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// Parse a key=value file ('#' comments and blank lines ignored) over defaults.
RunConfig parse_config_file(const std::string& path);

// Build the configured initial state. Throws ConfigError for unknown scenario
// names or out-of-range parameters.
CurveState build_scenario(const RunConfig& cfg);

// Full validation: enumerations, grid, step arithmetic, stability bound for
// the direct path, and a scenario dry build. Throws ConfigError.
void validate_config(const RunConfig& cfg);

// Output directory: cfg.out, else $ELASTICA_OUT_DIR, else "elastica_out".
std::string resolve_out_dir(const RunConfig& cfg);

// ---- tabular serialization --------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Shortest text form that parses back to the identical double (17 significant
// digits).
std::string format_double(double x);

// One row per (t, s) grid sample: [t, s, u1,u2,u3, v1,v2,v3, kappa, theta,
// lambda]; theta and lambda columns turn NaN where their solvers reject the
// state (vanishing curvature / singular operator).
Table trajectory_table(const Trajectory& traj);

// One row per recorded time: [t, T_kin, V_pot, E, closure_defect, beta, e0,
// picard_iters, contraction].
Table diagnostics_table(const Trajectory& traj);

void write_table(const Table& table, const std::string& path, const std::string& format);
Table read_table_csv(const std::string& path);

// ---- run orchestration --------------------------------------------------------

struct RunCheck {
  std::string name;
  bool pass = true;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string details;
};

struct RunReport {
  std::vector<RunCheck> checks;
  int exit_code = 0;  // 0 pass, 2 evolution aborted, 3 invariant violation
  std::vector<std::string> artifacts;
};

// Evolve the configured scenario, write trajectory/diagnostics files per
// solver (plus the dual-solver discrepancy series in `both` mode) and a
// machine-readable report.json, and return the summary. Configuration
// problems throw ConfigError before any file is created.
RunReport run(const RunConfig& cfg);

}  // namespace elastica
