#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "mkdv/analysis.hpp"
#include "mkdv/errors.hpp"
#include "mkdv/exact.hpp"
#include "mkdv/grid.hpp"
#include "mkdv/newton.hpp"
#include "mkdv/schemes.hpp"

using namespace mkdv;

namespace {

double plain_max_drift(const std::vector<double>& s) {
  double d = 0.0;
  for (double v : s) d = std::max(d, std::abs(v - s[0]));
  return d;
}

Trajectory short_run(const SchemeSpec& spec, int steps) {
  RunSetup setup = two_soliton_setup(spec);
  const Grid g = make_grid(setup);
  return integrate(spec, g, exact_state(setup, g, 0.0), steps, setup.newton);
}

}  // namespace

TEST_CASE("problem names round-trip") {
  CHECK(problem_from_name("two_soliton") == BenchmarkProblem::TwoSoliton);
  CHECK(problem_from_name("breather") == BenchmarkProblem::Breather);
  CHECK(problem_name(BenchmarkProblem::Breather) == std::string("breather"));
  CHECK_THROWS_AS(problem_from_name("kink"), ConfigError);
}

TEST_CASE("solution_error matches hand-computed cases") {
  GridFunction ex(64), num(64);
  for (int i = 0; i < 64; ++i) {
    ex[i] = std::sin(0.3 * i) + 2.0;
    num[i] = 1.01 * ex[i];
  }
  CHECK(solution_error(num, ex) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(solution_error(ex, ex) == 0.0);

  GridFunction shorter(32, 1.0);
  CHECK_THROWS_AS(solution_error(shorter, ex), ConfigError);
  GridFunction zero(64, 0.0);
  CHECK_THROWS_AS(solution_error(num, zero), ConfigError);
}

TEST_CASE("peak_location refines an off-grid maximum") {
  const Grid g(-10.0, 10.0, 400, 0.01);
  GridFunction f(g.M);
  const double x0 = 0.237;
  for (int i = 0; i < g.M; ++i) {
    const double d = g.x(i) - x0;
    f[i] = std::exp(-d * d / (2.0 * 0.8 * 0.8));
  }
  CHECK(std::abs(peak_location(g, f) - x0) < 1e-3);
  CHECK(std::abs(peak_location(g, f, 0.0, 2.0) - x0) < 1e-3);
}

TEST_CASE("peak_location rejects degenerate windows") {
  const Grid g(-10.0, 10.0, 400, 0.01);
  GridFunction ramp(g.M);
  for (int i = 0; i < g.M; ++i) ramp[i] = g.x(i);
  // Monotone data: the discrete maximum is the right window edge.
  CHECK_THROWS_AS(peak_location(g, ramp, 0.0, 1.0), PeakError);
  GridFunction flat(g.M, 1.0);
  CHECK_THROWS_AS(peak_location(g, flat, 0.0, 0.02), PeakError);
}

TEST_CASE("phase errors of the sampled closed form are interpolation noise") {
  const TwoSolitonParams p;
  const Grid g(-20.0, 20.0, 400, 0.025);
  const GridFunction ex = sample_two_soliton(p, g, 10.0);
  const PhaseErrors pe = phase_errors(g, ex, p, 10.0);
  CHECK(std::abs(pe.err_phi1) < 2e-3);
  CHECK(std::abs(pe.err_phi2) < 2e-3);
  CHECK(pe.err_phi == doctest::Approx(pe.err_phi1 - pe.err_phi2).epsilon(1e-12));
}

TEST_CASE("benchmark presets carry the reference meshes") {
  const SchemeSpec s{SchemeFamily::EC10, 0.0};
  const RunSetup ts = two_soliton_setup(s);
  CHECK(ts.a == -20.0);
  CHECK(ts.b == 20.0);
  CHECK(ts.dx == 0.1);
  CHECK(ts.dt == 0.025);
  CHECK(ts.T == 10.0);
  CHECK(step_count(ts) == 400);
  CHECK(make_grid(ts).M == 400);

  const RunSetup br = breather_setup(s);
  CHECK(br.a == -2.0);
  CHECK(br.b == 2.0);
  CHECK(br.dx == 0.02);
  CHECK(br.dt == 0.002);
  CHECK(br.T == 0.4);
  CHECK(step_count(br) == 200);
  CHECK(benchmark_setup(BenchmarkProblem::Breather, s).b == 2.0);
}

TEST_CASE("make_grid validates the mesh") {
  const SchemeSpec s{SchemeFamily::MC8, 0.0};
  RunSetup bad = two_soliton_setup(s);
  bad.dx = 0.3;  // 40 / 0.3 is not an integer
  CHECK_THROWS_AS(make_grid(bad), ConfigError);
  bad = two_soliton_setup(s);
  bad.dt = 0.0;
  CHECK_THROWS_AS(make_grid(bad), ConfigError);
  bad = two_soliton_setup(s);
  bad.b = bad.a;
  CHECK_THROWS_AS(make_grid(bad), ConfigError);
}

TEST_CASE("exact_state dispatches on the configured problem") {
  const SchemeSpec s{SchemeFamily::EC8, 0.0};
  const RunSetup ts = two_soliton_setup(s);
  const Grid g = make_grid(ts);
  const GridFunction a = exact_state(ts, g, 4.0);
  const GridFunction b = sample_two_soliton(ts.soliton, g, 4.0);
  for (int i = 0; i < g.M; i += 17) CHECK(a[i] == b[i]);

  const RunSetup br = breather_setup(s);
  const Grid gb = make_grid(br);
  const GridFunction c = exact_state(br, gb, 0.3);
  const GridFunction d = sample_breather(gb, 0.3);
  for (int i = 0; i < gb.M; i += 11) CHECK(c[i] == d[i]);
}

TEST_CASE("invariant_series uses scheme densities where laws are preserved") {
  const Trajectory ec8 = short_run({SchemeFamily::EC8, 0.0}, 8);
  const InvariantSeries s = invariant_series(ec8);
  CHECK_FALSE(s.fallback[1]);
  CHECK(s.fallback[2]);
  CHECK_FALSE(s.fallback[3]);
  for (int law : {1, 3}) {
    const double scale = 1.0 + std::abs(s.sums[law][0]);
    CHECK(plain_max_drift(s.sums[law]) < 1e-10 * scale);
  }
  // The unpreserved momentum sum drifts at truncation size, not roundoff.
  CHECK(plain_max_drift(s.sums[2]) > 1e-9);

  const Trajectory mc8 = short_run({SchemeFamily::MC8, 0.0}, 8);
  const InvariantSeries m = invariant_series(mc8);
  CHECK_FALSE(m.fallback[2]);
  CHECK(m.fallback[3]);
}

TEST_CASE("box-scheme energy fallback sums the gradient density of averages") {
  const Trajectory nb = short_run({SchemeFamily::NarrowBox, 0.0}, 6);
  const InvariantSeries s = invariant_series(nb);
  CHECK(s.fallback[2]);
  CHECK(s.fallback[3]);
  const Grid& g = nb.grid;
  for (std::size_t j = 0; j < nb.states.size(); j += 2) {
    const GridFunction v = fwd_avg_space(nb.states[j]);
    const GridFunction d2 =
        shift_space(fwd_diff_space(fwd_diff_space(v, g.dx), g.dx), -1);
    double hand = 0.0;
    for (int i = 0; i < g.M; ++i) hand += 0.5 * v[i] * d2[i];
    CHECK(s.sums[3][j] == doctest::Approx(hand).epsilon(1e-9));
  }
}

TEST_CASE("invariant_errors reports dx-weighted drifts and law lists") {
  const Trajectory traj = short_run({SchemeFamily::EC8, 0.0}, 8);
  const InvariantSeries s = invariant_series(traj);
  ErrorReport rep;
  invariant_errors(traj, rep);
  CHECK(rep.err2 ==
        doctest::Approx(traj.grid.dx * plain_max_drift(s.sums[2])).epsilon(1e-12));
  CHECK(rep.preserved_laws == std::vector<int>{1, 3});
  CHECK(rep.fallback_laws == std::vector<int>{2});
}

TEST_CASE("run_benchmark fills the report on a coarse two-soliton run") {
  RunSetup setup = two_soliton_setup({SchemeFamily::EC10, 0.04}, 0.2, 0.05);
  const RunResult r = run_benchmark(setup);
  CHECK(r.report.sol_err == doctest::Approx(0.016131304319914976).epsilon(1e-9));
  CHECK(r.report.err1 < 1e-11);
  CHECK(r.report.err3 < 1e-11);
  CHECK(r.report.err2 > 1e-3);
  REQUIRE(r.report.err_phi1.has_value());
  REQUIRE(r.report.err_phi2.has_value());
  REQUIRE(r.report.err_phi.has_value());
  CHECK(*r.report.err_phi ==
        doctest::Approx(*r.report.err_phi1 - *r.report.err_phi2).epsilon(1e-12));
  CHECK(static_cast<int>(r.traj.states.size()) == step_count(setup) + 1);
  CHECK(solution_error(r.traj.states.back(), r.exact_final) == r.report.sol_err);
  CHECK(r.newton_iters_max >= 1);
  CHECK(r.newton_iters_mean > 0.0);
  CHECK(r.wall_seconds > 0.0);
}

TEST_CASE("breather runs skip phase errors") {
  RunSetup setup = breather_setup({SchemeFamily::MC10, 0.0});
  setup.T = 0.02;  // 10 steps: structure check, not an accuracy check
  const RunResult r = run_benchmark(setup);
  CHECK_FALSE(r.report.err_phi1.has_value());
  CHECK_FALSE(r.report.err_phi.has_value());
  CHECK(r.report.sol_err > 0.0);
}

TEST_CASE("convergence order of a second-order family sits near two") {
  const double p = convergence_order({SchemeFamily::MC8, 0.0},
                                     BenchmarkProblem::TwoSoliton,
                                     {{0.2, 0.05}, {0.1, 0.025}});
  CHECK(p > 1.4);
  CHECK(p < 1.9);
}

TEST_CASE("sweep_lambda validates its arguments before integrating") {
  CHECK_THROWS_AS(sweep_lambda(SchemeFamily::EC8, BenchmarkProblem::TwoSoliton,
                               SweepObjective::SolutionError, 0.0, 1.0, 2),
                  ConfigError);
  CHECK_THROWS_AS(sweep_lambda(SchemeFamily::EC8, BenchmarkProblem::TwoSoliton,
                               SweepObjective::SolutionError, 1.0, 1.0, 5),
                  ConfigError);
  CHECK_THROWS_AS(sweep_lambda(SchemeFamily::NarrowBox,
                               BenchmarkProblem::TwoSoliton,
                               SweepObjective::SolutionError, 0.0, 1.0, 5),
                  ConfigError);
}

TEST_CASE("convergence_order requires two levels") {
  CHECK_THROWS_AS(convergence_order({SchemeFamily::MC8, 0.0},
                                    BenchmarkProblem::TwoSoliton, {{0.2, 0.05}}),
                  ConfigError);
}
