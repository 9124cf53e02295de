#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mkdv/analysis.hpp"

namespace mkdv {

// One benchmark run as described by a flat "key = value" config file.
// Unset fields fall back to the problem's preset (domain, steps, horizon).
struct RunConfig {
  BenchmarkProblem problem = BenchmarkProblem::TwoSoliton;
  SchemeSpec scheme;
  std::optional<double> a, b, dx, dt, T;
  double newton_tol = 1e-12;
  int newton_max_iters = 50;
  // Snapshot rows are written every `stride` steps (plus the first and final
  // levels); 0 keeps only the first and final levels.
  int snapshot_stride = 0;
  std::string output_dir = "out";
};

// Parses "key = value" lines; '#' starts a comment. Accepted keys: problem,
// scheme, lambda, a, b, dx, dt, T, newton_tol, newton_max_iters,
// snapshot_stride, output_dir. Unknown or duplicate keys, malformed numbers,
// and a missing problem/scheme throw ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);  // IoError when unreadable

// Applies the problem preset, then the config's overrides, and validates:
// positive steps, b > a, T >= 0, (b-a)/dx an integer within 1e-9, and
// T/dt within 0.5 of an integer (the step count is its rounding).
RunSetup to_setup(const RunConfig& cfg);

RunResult execute(const RunConfig& cfg);

struct RunArtifacts {
  std::string report_path;
  std::string invariants_path;
  std::string snapshots_path;
  std::string final_state_path;
};

// Writes the four run artifacts into out_dir (created if needed):
//   report.txt      flat key = value, every error-report field plus wall
//                   time and Newton iteration stats, 17 significant digits
//   invariants.csv  step,t,mass_sum,momentum_sum,energy_sum,newton_iters
//                   (unpreserved columns carry a _fallback suffix)
//   snapshots.csv   step,t,x,u at the snapshot stride
//   final_state.csv x,u,exact
// The CSVs are deterministic: re-running the same config reproduces them
// byte for byte. Throws IoError on write failure.
RunArtifacts write_run_artifacts(const RunConfig& cfg, const RunResult& res,
                                 const std::string& out_dir);

// One row of a benchmark table: a scheme family with a fixed coefficient.
struct TableRow {
  SchemeFamily family = SchemeFamily::EC8;
  double lambda_coeff = 0.0;
  std::string lambda_label;  // coefficient exactly as displayed
  std::string key;           // directory-safe row id, e.g. "mc8_m0.077"
  std::string method;        // display name, e.g. "Narrow box"
};

struct TableSpec {
  int id = 0;
  BenchmarkProblem problem = BenchmarkProblem::TwoSoliton;
  double dx = 0.1;
  double dt = 0.025;
  std::vector<TableRow> rows;
};

// The three benchmark tables: two-soliton at 0.1/0.025, two-soliton at
// 0.2/0.05, breather at 0.02/0.002, with the bundled coefficient choices.
const std::vector<TableSpec>& benchmark_tables();
const TableSpec& table_by_id(int id);  // ConfigError for ids outside 1..3

RunConfig row_config(const TableSpec& table, const TableRow& row);

// Runs every row of the table (rows in parallel, each integration serial)
// and writes per-row artifacts under runs_dir/<row key>/.
void run_table_rows(const TableSpec& table, const std::string& runs_dir);

struct TablePaths {
  std::string markdown_path;
  std::string csv_path;
};

// Aggregates runs_dir/<row key>/report.txt into out_dir/table<id>.md and
// .csv with columns Method, Err1, Err2, Err3, Sol. Err. (plus the phase
// columns for two-soliton tables). Missing reports throw ConfigError
// listing every absent row.
TablePaths emit_table(const TableSpec& table, const std::string& runs_dir,
                      const std::string& out_dir);

// "key = value" reader shared by report parsing; same syntax as configs
// but with no key restrictions. IoError when unreadable.
std::map<std::string, std::string> read_kv_file(const std::string& path);

SweepObjective objective_from_name(const std::string& name);
// "[lo,hi]" or "lo,hi" -> pair; ConfigError on malformed input.
std::pair<double, double> parse_range(const std::string& text);

// Runs the sweep and writes sweep.csv (lambda,objective,ok) and
// sweep_report.txt into out_dir; returns the result.
SweepResult write_sweep_artifacts(SchemeFamily family,
                                  BenchmarkProblem problem,
                                  SweepObjective objective, double lo,
                                  double hi, int samples,
                                  const std::string& out_dir);

// Full verification battery: divergence identities for every preserved law
// of all six families (coefficient 0 and a nonzero value where allowed),
// finite-difference Jacobian checks, truncation orders against a travelling
// sech profile, and the averaged-vector-field equivalences. Prints one line
// per check to `log`; returns false when any check fails.
bool verify_all(int trials, unsigned long long seed, std::ostream& log);

// 17-significant-digit decimal rendering used by every artifact writer.
std::string fmt17(double v);

}  // namespace mkdv
