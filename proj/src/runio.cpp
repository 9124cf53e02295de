#include "mkdv/runio.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "mkdv/errors.hpp"
#include "mkdv/parallel.hpp"
#include "mkdv/verify.hpp"

namespace mkdv {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::pair<std::string, std::string>> parse_kv_text(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value, got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(key, value);
  }
  return out;
}

double parse_double(const std::string& value, const std::string& key) {
  if (value.empty()) throw ConfigError("key '" + key + "' has an empty value");
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size())
    throw ConfigError("key '" + key + "': cannot parse number '" + value +
                      "'");
  return x;
}

int parse_int(const std::string& value, const std::string& key) {
  if (value.empty()) throw ConfigError("key '" + key + "' has an empty value");
  char* end = nullptr;
  const long x = std::strtol(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || x < INT_MIN || x > INT_MAX)
    throw ConfigError("key '" + key + "': cannot parse integer '" + value +
                      "'");
  return static_cast<int>(x);
}

void create_dirs(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void finish_out(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("failed writing '" + path + "'");
}

std::string join_laws(const std::vector<int>& laws) {
  std::string s;
  for (int l : laws) {
    if (!s.empty()) s += ' ';
    s += std::to_string(l);
  }
  return s;
}

// "0" for zero, fixed point in the mid range, scientific otherwise; used
// only for markdown display, never for machine-read artifacts.
std::string fmt_display(double v) {
  if (std::isnan(v)) return "-";
  if (v == 0.0) return "0";
  char buf[48];
  const double m = std::abs(v);
  if (m >= 1e-3 && m < 1e4)
    std::snprintf(buf, sizeof buf, "%.4f", v);
  else
    std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string lambda_text(double lam) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", lam);
  return buf;
}

TableRow scheme_row(SchemeFamily fam, const char* label) {
  TableRow r;
  r.family = fam;
  r.lambda_coeff = std::strtod(label, nullptr);
  r.lambda_label = label;
  std::string name = family_name(fam);
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::string safe = label;
  std::replace(safe.begin(), safe.end(), '-', 'm');
  r.key = name + "_" + safe;
  r.method = std::string(family_name(fam)) + "(" + label + ")";
  return r;
}

TableRow baseline_row(SchemeFamily fam) {
  TableRow r;
  r.family = fam;
  r.key = fam == SchemeFamily::NarrowBox ? "narrowbox" : "multisymplectic";
  r.method = fam == SchemeFamily::NarrowBox ? "Narrow box" : "Multisymplectic";
  return r;
}

TableSpec make_table(int id, BenchmarkProblem problem, double dx, double dt,
                     const char* ec8[3], const char* mc8[3],
                     const char* ec10[3], const char* mc10[2]) {
  TableSpec t;
  t.id = id;
  t.problem = problem;
  t.dx = dx;
  t.dt = dt;
  for (int i = 0; i < 3; ++i)
    t.rows.push_back(scheme_row(SchemeFamily::EC8, ec8[i]));
  for (int i = 0; i < 3; ++i)
    t.rows.push_back(scheme_row(SchemeFamily::MC8, mc8[i]));
  for (int i = 0; i < 3; ++i)
    t.rows.push_back(scheme_row(SchemeFamily::EC10, ec10[i]));
  for (int i = 0; i < 2; ++i)
    t.rows.push_back(scheme_row(SchemeFamily::MC10, mc10[i]));
  t.rows.push_back(baseline_row(SchemeFamily::NarrowBox));
  t.rows.push_back(baseline_row(SchemeFamily::Multisymplectic));
  return t;
}

double report_number(const std::map<std::string, std::string>& kv,
                     const std::string& key, const std::string& path) {
  const auto it = kv.find(key);
  if (it == kv.end())
    throw ConfigError("report '" + path + "' is missing key '" + key + "'");
  return parse_double(it->second, key);
}

}  // namespace

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool have_problem = false, have_scheme = false;
  std::set<std::string> seen;
  for (const auto& [key, value] : parse_kv_text(text)) {
    if (!seen.insert(key).second)
      throw ConfigError("duplicate config key '" + key + "'");
    if (key == "problem") {
      cfg.problem = problem_from_name(value);
      have_problem = true;
    } else if (key == "scheme") {
      cfg.scheme.family = family_from_name(value);
      have_scheme = true;
    } else if (key == "lambda") {
      cfg.scheme.lambda_coeff = parse_double(value, key);
    } else if (key == "a") {
      cfg.a = parse_double(value, key);
    } else if (key == "b") {
      cfg.b = parse_double(value, key);
    } else if (key == "dx") {
      cfg.dx = parse_double(value, key);
    } else if (key == "dt") {
      cfg.dt = parse_double(value, key);
    } else if (key == "T") {
      cfg.T = parse_double(value, key);
    } else if (key == "newton_tol") {
      cfg.newton_tol = parse_double(value, key);
    } else if (key == "newton_max_iters") {
      cfg.newton_max_iters = parse_int(value, key);
    } else if (key == "snapshot_stride") {
      cfg.snapshot_stride = parse_int(value, key);
    } else if (key == "output_dir") {
      if (value.empty()) throw ConfigError("output_dir must not be empty");
      cfg.output_dir = value;
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (!have_problem) throw ConfigError("config is missing key 'problem'");
  if (!have_scheme) throw ConfigError("config is missing key 'scheme'");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RunSetup to_setup(const RunConfig& cfg) {
  RunSetup s = benchmark_setup(cfg.problem, cfg.scheme);
  if (cfg.a) s.a = *cfg.a;
  if (cfg.b) s.b = *cfg.b;
  if (cfg.dx) s.dx = *cfg.dx;
  if (cfg.dt) s.dt = *cfg.dt;
  if (cfg.T) s.T = *cfg.T;
  s.newton.tol_residual = cfg.newton_tol;
  s.newton.max_iters = cfg.newton_max_iters;

  const std::pair<double, const char*> finite_checks[] = {
      {s.a, "a"},   {s.b, "b"}, {s.dx, "dx"},
      {s.dt, "dt"}, {s.T, "T"}, {s.scheme.lambda_coeff, "lambda"},
      {s.newton.tol_residual, "newton_tol"}};
  for (const auto& [v, name] : finite_checks) {
    if (!std::isfinite(v))
      throw ConfigError(std::string("key '") + name + "' must be finite");
  }
  if (s.dx <= 0.0) throw ConfigError("dx must be positive");
  if (s.dt <= 0.0) throw ConfigError("dt must be positive");
  if (!(s.b > s.a)) throw ConfigError("domain requires b > a");
  if (s.T < 0.0) throw ConfigError("T must be >= 0");
  const double cells = (s.b - s.a) / s.dx;
  if (std::abs(cells - std::llround(cells)) > 1e-9)
    throw ConfigError("(b - a)/dx must be an integer within 1e-9");
  const double steps = s.T / s.dt;
  if (!(std::abs(steps - std::llround(steps)) <= 0.5))
    throw ConfigError("T/dt must be within 0.5 of an integer");
  if (s.newton.tol_residual <= 0.0)
    throw ConfigError("newton_tol must be positive");
  if (s.newton.max_iters < 1)
    throw ConfigError("newton_max_iters must be >= 1");
  if (cfg.snapshot_stride < 0)
    throw ConfigError("snapshot_stride must be >= 0");
  return s;
}

RunResult execute(const RunConfig& cfg) { return run_benchmark(to_setup(cfg)); }

RunArtifacts write_run_artifacts(const RunConfig& cfg, const RunResult& res,
                                 const std::string& out_dir) {
  const RunSetup setup = to_setup(cfg);
  const Grid& g = res.traj.grid;
  const int N = static_cast<int>(res.traj.states.size()) - 1;
  create_dirs(out_dir);

  RunArtifacts art;
  art.report_path = out_dir + "/report.txt";
  art.invariants_path = out_dir + "/invariants.csv";
  art.snapshots_path = out_dir + "/snapshots.csv";
  art.final_state_path = out_dir + "/final_state.csv";

  {
    std::ofstream os = open_out(art.report_path);
    const ErrorReport& r = res.report;
    os << "problem = " << problem_name(cfg.problem) << "\n";
    os << "scheme = " << family_name(cfg.scheme.family) << "\n";
    os << "lambda = " << fmt17(cfg.scheme.lambda_coeff) << "\n";
    os << "a = " << fmt17(setup.a) << "\n";
    os << "b = " << fmt17(setup.b) << "\n";
    os << "dx = " << fmt17(setup.dx) << "\n";
    os << "dt = " << fmt17(setup.dt) << "\n";
    os << "T = " << fmt17(setup.T) << "\n";
    os << "M = " << g.M << "\n";
    os << "steps = " << N << "\n";
    os << "sol_err = " << fmt17(r.sol_err) << "\n";
    os << "err1 = " << fmt17(r.err1) << "\n";
    os << "err2 = " << fmt17(r.err2) << "\n";
    os << "err3 = " << fmt17(r.err3) << "\n";
    os << "err_phi1 = " << (r.err_phi1 ? fmt17(*r.err_phi1) : "nan") << "\n";
    os << "err_phi2 = " << (r.err_phi2 ? fmt17(*r.err_phi2) : "nan") << "\n";
    os << "err_phi = " << (r.err_phi ? fmt17(*r.err_phi) : "nan") << "\n";
    os << "preserved_laws = " << join_laws(r.preserved_laws) << "\n";
    os << "fallback_laws = " << join_laws(r.fallback_laws) << "\n";
    os << "newton_iters_max = " << res.newton_iters_max << "\n";
    os << "newton_iters_mean = " << fmt17(res.newton_iters_mean) << "\n";
    os << "newton_tol = " << fmt17(setup.newton.tol_residual) << "\n";
    os << "newton_max_iters = " << setup.newton.max_iters << "\n";
    os << "wall_seconds = " << fmt17(res.wall_seconds) << "\n";
    finish_out(os, art.report_path);
  }

  {
    const InvariantSeries s = invariant_series(res.traj);
    std::ofstream os = open_out(art.invariants_path);
    os << "step,t,mass_sum,"
       << (s.fallback[2] ? "momentum_sum_fallback" : "momentum_sum") << ","
       << (s.fallback[3] ? "energy_sum_fallback" : "energy_sum")
       << ",newton_iters\n";
    for (int j = 0; j <= N; ++j) {
      os << j << "," << fmt17(j * g.dt) << "," << fmt17(s.sums[1][j]) << ","
         << fmt17(s.sums[2][j]) << "," << fmt17(s.sums[3][j]) << ","
         << (j == 0 ? 0 : res.traj.newton_iters[j - 1]) << "\n";
    }
    finish_out(os, art.invariants_path);
  }

  {
    std::ofstream os = open_out(art.snapshots_path);
    os << "step,t,x,u\n";
    for (int j = 0; j <= N; ++j) {
      const bool keep = j == 0 || j == N ||
                        (cfg.snapshot_stride > 0 && j % cfg.snapshot_stride == 0);
      if (!keep) continue;
      const std::string t = fmt17(j * g.dt);
      for (int i = 0; i < g.M; ++i)
        os << j << "," << t << "," << fmt17(g.x(i)) << ","
           << fmt17(res.traj.states[j][i]) << "\n";
    }
    finish_out(os, art.snapshots_path);
  }

  {
    std::ofstream os = open_out(art.final_state_path);
    os << "x,u,exact\n";
    const GridFunction& u = res.traj.states.back();
    for (int i = 0; i < g.M; ++i)
      os << fmt17(g.x(i)) << "," << fmt17(u[i]) << ","
         << fmt17(res.exact_final[i]) << "\n";
    finish_out(os, art.final_state_path);
  }

  return art;
}

const std::vector<TableSpec>& benchmark_tables() {
  static const std::vector<TableSpec> tables = [] {
    const char* t1_ec8[] = {"0", "1", "-0.05"};
    const char* t1_mc8[] = {"0", "-0.077", "-0.073"};
    const char* t1_ec10[] = {"0", "0.04", "0.20"};
    const char* t1_mc10[] = {"0", "0.19"};
    const char* t2_ec8[] = {"0", "0.97", "-0.06"};
    const char* t2_mc8[] = {"0", "-0.079", "-0.075"};
    const char* t2_ec10[] = {"0", "0.05", "0.21"};
    const char* t2_mc10[] = {"0", "0.19"};
    const char* t3_ec8[] = {"0", "2.22", "0.49"};
    const char* t3_mc8[] = {"0", "-0.165", "-0.128"};
    const char* t3_ec10[] = {"0", "0.92", "0.78"};
    const char* t3_mc10[] = {"0", "1.15"};
    std::vector<TableSpec> v;
    v.push_back(make_table(1, BenchmarkProblem::TwoSoliton, 0.1, 0.025,
                           t1_ec8, t1_mc8, t1_ec10, t1_mc10));
    v.push_back(make_table(2, BenchmarkProblem::TwoSoliton, 0.2, 0.05, t2_ec8,
                           t2_mc8, t2_ec10, t2_mc10));
    v.push_back(make_table(3, BenchmarkProblem::Breather, 0.02, 0.002, t3_ec8,
                           t3_mc8, t3_ec10, t3_mc10));
    return v;
  }();
  return tables;
}

const TableSpec& table_by_id(int id) {
  for (const TableSpec& t : benchmark_tables())
    if (t.id == id) return t;
  throw ConfigError("table id must be 1, 2, or 3");
}

RunConfig row_config(const TableSpec& table, const TableRow& row) {
  RunConfig cfg;
  cfg.problem = table.problem;
  cfg.scheme.family = row.family;
  cfg.scheme.lambda_coeff = row.lambda_coeff;
  cfg.dx = table.dx;
  cfg.dt = table.dt;
  return cfg;
}

void run_table_rows(const TableSpec& table, const std::string& runs_dir) {
  const int n = static_cast<int>(table.rows.size());
  parallel_for(n, [&](int i) {
    const TableRow& row = table.rows[i];
    const RunConfig cfg = row_config(table, row);
    const RunResult res = execute(cfg);
    write_run_artifacts(cfg, res, runs_dir + "/" + row.key);
  });
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::map<std::string, std::string> kv;
  for (const auto& [key, value] : parse_kv_text(buf.str())) kv[key] = value;
  return kv;
}

TablePaths emit_table(const TableSpec& table, const std::string& runs_dir,
                      const std::string& out_dir) {
  struct Cells {
    std::string method;
    std::string lambda;
    double err1, err2, err3, sol_err;
    double phi1, phi2, phi;
  };
  std::vector<Cells> rows;
  std::vector<std::string> missing;
  for (const TableRow& row : table.rows) {
    const std::string path = runs_dir + "/" + row.key + "/report.txt";
    if (!fs::exists(path)) {
      missing.push_back(row.key);
      continue;
    }
    const auto kv = read_kv_file(path);
    Cells c;
    c.method = row.method;
    c.lambda = row.lambda_label;
    c.err1 = report_number(kv, "err1", path);
    c.err2 = report_number(kv, "err2", path);
    c.err3 = report_number(kv, "err3", path);
    c.sol_err = report_number(kv, "sol_err", path);
    c.phi1 = report_number(kv, "err_phi1", path);
    c.phi2 = report_number(kv, "err_phi2", path);
    c.phi = report_number(kv, "err_phi", path);
    rows.push_back(std::move(c));
  }
  if (!missing.empty()) {
    std::string msg = "table " + std::to_string(table.id) +
                      " runs missing under '" + runs_dir + "':";
    for (const std::string& k : missing) msg += " " + k;
    throw ConfigError(msg);
  }

  create_dirs(out_dir);
  const bool phases = table.problem == BenchmarkProblem::TwoSoliton;
  TablePaths paths;
  paths.markdown_path =
      out_dir + "/table" + std::to_string(table.id) + ".md";
  paths.csv_path = out_dir + "/table" + std::to_string(table.id) + ".csv";

  {
    std::ofstream os = open_out(paths.csv_path);
    os << "method,lambda,err1,err2,err3,sol_err";
    if (phases) os << ",err_phi1,err_phi2,err_phi";
    os << "\n";
    for (const Cells& c : rows) {
      os << c.method << "," << c.lambda << "," << fmt17(c.err1) << ","
         << fmt17(c.err2) << "," << fmt17(c.err3) << "," << fmt17(c.sol_err);
      if (phases)
        os << "," << fmt17(c.phi1) << "," << fmt17(c.phi2) << ","
           << fmt17(c.phi);
      os << "\n";
    }
    finish_out(os, paths.csv_path);
  }

  {
    std::ofstream os = open_out(paths.markdown_path);
    os << "| Method | Err1 | Err2 | Err3 | Sol. Err. |";
    if (phases) os << " Errphi1 | Errphi2 | Errphi |";
    os << "\n|---|---|---|---|---|";
    if (phases) os << "---|---|---|";
    os << "\n";
    for (const Cells& c : rows) {
      os << "| " << c.method << " | " << fmt_display(c.err1) << " | "
         << fmt_display(c.err2) << " | " << fmt_display(c.err3) << " | "
         << fmt_display(c.sol_err) << " |";
      if (phases)
        os << " " << fmt_display(c.phi1) << " | " << fmt_display(c.phi2)
           << " | " << fmt_display(c.phi) << " |";
      os << "\n";
    }
    finish_out(os, paths.markdown_path);
  }
  return paths;
}

SweepObjective objective_from_name(const std::string& name) {
  if (name == "solution_error") return SweepObjective::SolutionError;
  if (name == "invariant_error" || name == "unpreserved_invariant")
    return SweepObjective::UnpreservedInvariant;
  throw ConfigError("unknown objective '" + name +
                    "' (expected solution_error or invariant_error)");
}

std::pair<double, double> parse_range(const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '[' && t.back() == ']')
    t = trim(t.substr(1, t.size() - 2));
  const std::size_t comma = t.find(',');
  if (comma == std::string::npos)
    throw ConfigError("range must be given as [lo,hi], got '" + text + "'");
  const double lo = parse_double(trim(t.substr(0, comma)), "range lo");
  const double hi = parse_double(trim(t.substr(comma + 1)), "range hi");
  return {lo, hi};
}

SweepResult write_sweep_artifacts(SchemeFamily family,
                                  BenchmarkProblem problem,
                                  SweepObjective objective, double lo,
                                  double hi, int samples,
                                  const std::string& out_dir) {
  const SweepResult r =
      sweep_lambda(family, problem, objective, lo, hi, samples);
  create_dirs(out_dir);
  const std::string csv_path = out_dir + "/sweep.csv";
  {
    std::ofstream os = open_out(csv_path);
    os << "lambda,objective,ok\n";
    for (const SweepSample& s : r.scan)
      os << fmt17(s.lambda) << "," << fmt17(s.objective) << ","
         << (s.ok ? 1 : 0) << "\n";
    finish_out(os, csv_path);
  }
  const std::string report_path = out_dir + "/sweep_report.txt";
  {
    std::ofstream os = open_out(report_path);
    os << "scheme = " << family_name(family) << "\n";
    os << "problem = " << problem_name(problem) << "\n";
    os << "objective = "
       << (objective == SweepObjective::SolutionError ? "solution_error"
                                                      : "invariant_error")
       << "\n";
    os << "lo = " << fmt17(lo) << "\n";
    os << "hi = " << fmt17(hi) << "\n";
    os << "samples = " << samples << "\n";
    os << "lambda_star = " << fmt17(r.lambda_star) << "\n";
    os << "objective_value = " << fmt17(r.objective_value) << "\n";
    finish_out(os, report_path);
  }
  return r;
}

bool verify_all(int trials, unsigned long long seed, std::ostream& log) {
  bool all_ok = true;
  const auto line = [&](bool pass, const std::string& name,
                        const std::string& detail) {
    log << (pass ? "[ok]   " : "[FAIL] ") << name << ": " << detail << "\n";
    if (!pass) all_ok = false;
  };

  struct Case {
    SchemeFamily fam;
    double lam;
  };
  const Case identity_cases[] = {
      {SchemeFamily::EC8, 0.0},   {SchemeFamily::EC8, 0.35},
      {SchemeFamily::MC8, 0.0},   {SchemeFamily::MC8, -0.077},
      {SchemeFamily::EC10, 0.0},  {SchemeFamily::EC10, 0.35},
      {SchemeFamily::MC10, 0.0},  {SchemeFamily::MC10, 0.19},
      {SchemeFamily::NarrowBox, 0.0},
      {SchemeFamily::Multisymplectic, 0.0},
  };
  for (const Case& c : identity_cases) {
    const SchemeSpec spec{c.fam, c.lam};
    for (int law : preserved_laws(c.fam)) {
      const IdentityReport rep =
          check_divergence_identity(spec, law, trials, seed);
      const double budget = 1e-11 * rep.scale;
      line(rep.max_abs_defect <= budget,
           std::string("identity ") + family_name(c.fam) + "(" +
               lambda_text(c.lam) + ") law " + std::to_string(law),
           "max defect " + fmt_display(rep.max_abs_defect) + ", budget " +
               fmt_display(budget));
    }
  }

  const Case jacobian_cases[] = {
      {SchemeFamily::EC8, 1.0},       {SchemeFamily::MC8, -0.077},
      {SchemeFamily::EC10, 0.04},     {SchemeFamily::MC10, 0.19},
      {SchemeFamily::NarrowBox, 0.0},
      {SchemeFamily::Multisymplectic, 0.0},
  };
  const int jac_trials = std::max(3, trials / 10);
  for (const Case& c : jacobian_cases) {
    const double dev = check_jacobian({c.fam, c.lam}, jac_trials, seed);
    line(dev <= 1e-6,
         std::string("jacobian ") + family_name(c.fam) + "(" +
             lambda_text(c.lam) + ")",
         "max deviation " + fmt_display(dev));
  }

  const Case order_cases[] = {
      {SchemeFamily::EC8, 0.0},   {SchemeFamily::EC8, 5.0},
      {SchemeFamily::MC8, 0.0},   {SchemeFamily::EC10, 0.0},
      {SchemeFamily::MC10, 0.0},  {SchemeFamily::NarrowBox, 0.0},
      {SchemeFamily::Multisymplectic, 0.0},
  };
  const SmoothField field = sech_profile();
  for (const Case& c : order_cases) {
    const double order = check_truncation_order({c.fam, c.lam}, field);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f", order);
    line(order >= 1.8,
         std::string("truncation ") + family_name(c.fam) + "(" +
             lambda_text(c.lam) + ")",
         std::string("order ") + buf);
  }

  // Independent averaged-vector-field transcriptions against the coefficient
  // zero members of the 10-point families, relative to the residual scale.
  const int avf_trials = std::min(trials, 25);
  for (int which = 0; which < 2; ++which) {
    const SchemeSpec spec{
        which == 0 ? SchemeFamily::EC10 : SchemeFamily::MC10, 0.0};
    double worst = 0.0;
    for (int t = 0; t < avf_trials; ++t) {
      const TwoLevelField F =
          random_field(seed + 0x9E3779B97F4A7C15ULL *
                                  static_cast<unsigned long long>(t));
      const GridFunction r1 = residual(spec, F);
      const GridFunction r2 =
          which == 0 ? avf_ec_residual(F) : avf_mc_residual(F);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < F.grid.M; ++i) {
        num = std::max(num, std::abs(r1[i] - r2[i]));
        den = std::max(den, std::abs(r2[i]));
      }
      worst = std::max(worst, num / std::max(den, 1e-300));
    }
    line(worst <= 1e-14,
         which == 0 ? "avf energy form vs EC10(0)"
                    : "avf momentum form vs MC10(0)",
         "relative gap " + fmt_display(worst));
  }

  return all_ok;
}

}  // namespace mkdv
