#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mkdv/errors.hpp"
#include "mkdv/parallel.hpp"
#include "mkdv/runio.hpp"

namespace {

int cmd_run(const std::string& config_path,
            const std::optional<std::string>& out_flag) {
  const mkdv::RunConfig cfg = mkdv::load_config(config_path);
  const std::string out_dir = out_flag ? *out_flag : cfg.output_dir;
  const mkdv::RunResult res = mkdv::execute(cfg);
  const mkdv::RunArtifacts art = mkdv::write_run_artifacts(cfg, res, out_dir);
  std::cout << "sol_err = " << mkdv::fmt17(res.report.sol_err) << "\n"
            << "report: " << art.report_path << "\n";
  return 0;
}

int cmd_table(int id, const std::optional<std::string>& runs_flag,
              const std::string& out_dir) {
  const mkdv::TableSpec& table = mkdv::table_by_id(id);
  std::string runs_dir;
  if (runs_flag) {
    runs_dir = *runs_flag;  // aggregate existing runs, never integrate
  } else {
    runs_dir = out_dir + "/table" + std::to_string(id);
    mkdv::run_table_rows(table, runs_dir);
  }
  const mkdv::TablePaths paths = mkdv::emit_table(table, runs_dir, out_dir);
  std::cout << "table: " << paths.markdown_path << "\n"
            << "csv: " << paths.csv_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& family, const std::string& problem,
              const std::string& objective, const std::string& range,
              int samples, const std::string& out_dir) {
  const auto [lo, hi] = mkdv::parse_range(range);
  const mkdv::SweepResult r = mkdv::write_sweep_artifacts(
      mkdv::family_from_name(family), mkdv::problem_from_name(problem),
      mkdv::objective_from_name(objective), lo, hi, samples, out_dir);
  std::cout << "lambda_star = " << mkdv::fmt17(r.lambda_star) << "\n"
            << "objective_value = " << mkdv::fmt17(r.objective_value) << "\n"
            << "scan: " << out_dir << "/sweep.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite-difference benchmarks for the modified Korteweg-de Vries "
      "equation"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand(
      "run", "integrate one configured problem and write its artifacts");
  std::string run_config;
  std::optional<std::string> run_out;
  int run_threads = 0;
  run->add_option("--config", run_config, "config file (key = value lines)")
      ->required();
  run->add_option("--out", run_out,
                  "output directory (default: the config's output_dir)");
  run->add_option("--threads", run_threads, "worker cap, 0 = runtime default");

  auto* table =
      app.add_subcommand("table", "reproduce one benchmark table");
  int table_id = 0;
  std::optional<std::string> table_runs;
  std::string table_out = "out";
  int table_threads = 0;
  table->add_option("id", table_id, "table number (1-3)")->required();
  table->add_option("--config", table_runs,
                    "directory holding completed row runs (skips integrating)");
  table->add_option("--out", table_out, "output directory");
  table->add_option("--threads", table_threads,
                    "worker cap, 0 = runtime default");

  auto* sweep = app.add_subcommand(
      "sweep", "scan the free coefficient and refine the minimizer");
  std::string sw_family, sw_problem, sw_objective, sw_range;
  int sw_samples = 0;
  std::string sw_out = "out";
  int sw_threads = 0;
  sweep->add_option("scheme", sw_family, "EC8 | MC8 | EC10 | MC10")
      ->required();
  sweep->add_option("problem", sw_problem, "two_soliton | breather")
      ->required();
  sweep->add_option("objective", sw_objective,
                    "solution_error | invariant_error")
      ->required();
  sweep->add_option("range", sw_range, "coefficient range, e.g. [-0.2,0.4]")
      ->required();
  sweep->add_option("samples", sw_samples, "scan samples (>= 3)")->required();
  sweep->add_option("--out", sw_out, "output directory");
  sweep->add_option("--threads", sw_threads,
                    "worker cap, 0 = runtime default");

  auto* verify = app.add_subcommand(
      "verify",
      "identity, Jacobian, truncation-order, and equivalence checks");
  int v_trials = 100;
  unsigned long long v_seed = 1;
  int v_threads = 0;
  verify->add_option("--trials", v_trials, "random trials per identity check");
  verify->add_option("--seed", v_seed, "master seed");
  verify->add_option("--threads", v_threads,
                     "worker cap, 0 = runtime default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      mkdv::set_max_threads(run_threads);
      return cmd_run(run_config, run_out);
    }
    if (table->parsed()) {
      mkdv::set_max_threads(table_threads);
      return cmd_table(table_id, table_runs, table_out);
    }
    if (sweep->parsed()) {
      mkdv::set_max_threads(sw_threads);
      return cmd_sweep(sw_family, sw_problem, sw_objective, sw_range,
                       sw_samples, sw_out);
    }
    if (verify->parsed()) {
      mkdv::set_max_threads(v_threads);
      return mkdv::verify_all(v_trials, v_seed, std::cout) ? 0 : 1;
    }
  } catch (const mkdv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mkdv::IntegrationError& e) {
    std::cerr << "solver failure at step " << e.step_index << ": " << e.what()
              << "\n";
    return 3;
  } catch (const mkdv::NonConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const mkdv::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
