#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mkdv/errors.hpp"
#include "mkdv/runio.hpp"

using namespace mkdv;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("mkdv_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static inline int counter = 0;
};

const char* kSmallConfig =
    "# quick smoke run\n"
    "problem = two_soliton\n"
    "scheme = EC10\n"
    "lambda = 0\n"
    "dx = 0.5\n"
    "dt = 0.25\n"
    "T = 0.5\n";

}  // namespace

TEST_CASE("parse_config reads keys, comments, and defaults") {
  const RunConfig cfg = parse_config(
      "problem = breather\n"
      "scheme = mc8   # case-insensitive\n"
      "lambda = -0.077\n"
      "newton_max_iters = 12\n");
  CHECK(cfg.problem == BenchmarkProblem::Breather);
  CHECK(cfg.scheme.family == SchemeFamily::MC8);
  CHECK(cfg.scheme.lambda_coeff == -0.077);
  CHECK(cfg.newton_max_iters == 12);
  CHECK_FALSE(cfg.dx.has_value());
  CHECK(cfg.snapshot_stride == 0);
  CHECK(cfg.output_dir == "out");
}

TEST_CASE("parse_config rejects malformed input") {
  CHECK_THROWS_AS(parse_config("problem = two_soliton\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scheme = EC8\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("problem = two_soliton\nscheme = EC8\ncolor = red\n"),
      ConfigError);
  CHECK_THROWS_AS(parse_config("problem = two_soliton\nscheme = EC8\n"
                               "dx = 0.1\ndx = 0.2\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config("problem = two_soliton\nscheme = EC8\ndx = fast\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config("problem = two_soliton\nscheme = EC8\noutput_dir =\n"),
      ConfigError);
}

TEST_CASE("to_setup layers overrides onto the preset and validates them") {
  RunConfig cfg = parse_config(kSmallConfig);
  const RunSetup s = to_setup(cfg);
  CHECK(s.a == -20.0);
  CHECK(s.b == 20.0);
  CHECK(s.dx == 0.5);
  CHECK(s.dt == 0.25);
  CHECK(s.T == 0.5);
  CHECK(s.newton.tol_residual == 1e-12);
  CHECK(step_count(s) == 2);

  cfg.dx = 0.3;  // 40 / 0.3 is not an integer
  CHECK_THROWS_AS(to_setup(cfg), ConfigError);
  cfg.dx = 0.5;
  cfg.T = 0.6;  // 2.4 steps rounds to 2
  CHECK(step_count(to_setup(cfg)) == 2);
  cfg.T = -1.0;
  CHECK_THROWS_AS(to_setup(cfg), ConfigError);
}

TEST_CASE("the bundled tables carry the expected shape") {
  const auto& tables = benchmark_tables();
  REQUIRE(tables.size() == 3);
  CHECK(tables[0].problem == BenchmarkProblem::TwoSoliton);
  CHECK(tables[0].dx == 0.1);
  CHECK(tables[1].problem == BenchmarkProblem::TwoSoliton);
  CHECK(tables[1].dx == 0.2);
  CHECK(tables[2].problem == BenchmarkProblem::Breather);
  CHECK(tables[2].dx == 0.02);
  for (const TableSpec& t : tables) {
    CHECK(!t.rows.empty());
    std::set<std::string> keys;
    for (const TableRow& r : t.rows) {
      CHECK(keys.insert(r.key).second);  // row keys name directories
      CHECK(!r.method.empty());
      const RunConfig cfg = row_config(t, r);
      CHECK(cfg.problem == t.problem);
      CHECK(*cfg.dx == t.dx);
      CHECK(*cfg.dt == t.dt);
      CHECK(cfg.scheme.family == r.family);
      CHECK(cfg.scheme.lambda_coeff == r.lambda_coeff);
    }
  }
  CHECK(table_by_id(2).id == 2);
  CHECK_THROWS_AS(table_by_id(0), ConfigError);
  CHECK_THROWS_AS(table_by_id(4), ConfigError);
}

TEST_CASE("fmt17 round-trips doubles through decimal text") {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, -0.0, 12345.678901234567,
                   -1.7976931348623157e308}) {
    const std::string s = fmt17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(fmt17(std::nan("")) == "nan");
}

TEST_CASE("objective and range parsing") {
  CHECK(objective_from_name("solution_error") == SweepObjective::SolutionError);
  CHECK(objective_from_name("invariant_error") ==
        SweepObjective::UnpreservedInvariant);
  CHECK_THROWS_AS(objective_from_name("vibes"), ConfigError);

  CHECK(parse_range("[0.5,1.5]") == std::pair<double, double>{0.5, 1.5});
  CHECK(parse_range(" -0.12 , -0.03 ") ==
        std::pair<double, double>{-0.12, -0.03});
  CHECK_THROWS_AS(parse_range("0.5"), ConfigError);
  CHECK_THROWS_AS(parse_range("[a,b]"), ConfigError);
}

TEST_CASE("read_kv_file parses reports and flags missing files") {
  TempDir tmp;
  const std::string p = (tmp.path / "report.txt").string();
  std::ofstream(p) << "sol_err = 0.25\nnote = two words\n";
  const auto kv = read_kv_file(p);
  CHECK(kv.at("sol_err") == "0.25");
  CHECK(kv.at("note") == "two words");
  CHECK_THROWS_AS(read_kv_file((tmp.path / "absent.txt").string()), IoError);
}

TEST_CASE("run artifacts are complete and reproduced byte for byte") {
  TempDir tmp;
  const RunConfig cfg = parse_config(kSmallConfig);
  const RunResult res = execute(cfg);
  const std::string d1 = (tmp.path / "a").string();
  const std::string d2 = (tmp.path / "b").string();
  const RunArtifacts art1 = write_run_artifacts(cfg, res, d1);
  const RunArtifacts art2 = write_run_artifacts(cfg, execute(cfg), d2);

  const auto kv = read_kv_file(art1.report_path);
  CHECK(std::strtod(kv.at("sol_err").c_str(), nullptr) == res.report.sol_err);
  CHECK(kv.count("err1") == 1);
  CHECK(kv.count("err2") == 1);
  CHECK(kv.count("err3") == 1);
  CHECK(kv.count("newton_iters_max") == 1);

  // report.txt carries wall time; everything else must reproduce exactly.
  auto kv2 = read_kv_file(art2.report_path);
  auto kv1 = kv;
  kv1.erase("wall_seconds");
  kv2.erase("wall_seconds");
  CHECK(kv1 == kv2);
  CHECK(slurp(art1.invariants_path) == slurp(art2.invariants_path));
  CHECK(slurp(art1.snapshots_path) == slurp(art2.snapshots_path));
  CHECK(slurp(art1.final_state_path) == slurp(art2.final_state_path));

  // invariants.csv: header plus one row per stored level.
  std::istringstream inv(slurp(art1.invariants_path));
  std::string header;
  std::getline(inv, header);
  CHECK(header.find("mass_sum") != std::string::npos);
  CHECK(header.find("momentum_sum_fallback") != std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(inv, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == static_cast<int>(res.traj.states.size()));
}

TEST_CASE("emit_table lists every missing row in its error") {
  TempDir tmp;
  const TableSpec& t = table_by_id(1);
  try {
    emit_table(t, (tmp.path / "runs").string(), (tmp.path / "out").string());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    for (const TableRow& r : t.rows)
      CHECK(msg.find(r.key) != std::string::npos);
  }
}
