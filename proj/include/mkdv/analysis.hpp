#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkdv/exact.hpp"
#include "mkdv/grid.hpp"
#include "mkdv/newton.hpp"
#include "mkdv/schemes.hpp"

namespace mkdv {

enum class BenchmarkProblem { TwoSoliton, Breather };
const char* problem_name(BenchmarkProblem p);
BenchmarkProblem problem_from_name(const std::string& name);

struct ErrorReport {
  double sol_err = 0.0;
  double err1 = 0.0;
  double err2 = 0.0;
  double err3 = 0.0;
  // Peak phase errors (numerical minus exact, so a lagging scheme is
  // negative). Unset for the breather problem or when a peak search fails.
  std::optional<double> err_phi1, err_phi2, err_phi;
  std::vector<int> preserved_laws;  // laws measured with scheme densities
  std::vector<int> fallback_laws;   // laws measured with the generic sums
};

// Relative discrete 2-norm ||numerical - exact|| / ||exact||.
// Throws ConfigError on length mismatch or a zero exact field.
double solution_error(const GridFunction& numerical, const GridFunction& exact);

// Per-level invariant sums S(j) = sum_i density(u_j)_i for laws 1..3. Laws
// the scheme preserves use its own densities; the remaining law uses the
// generic quadratic / quartic sums with v = u for 10-point families and
// v = the forward spatial average of u for 8-point families (the two
// baselines included). The box-scheme baselines report only the gradient
// part of the energy density (see invariant_series in analysis.cpp).
// Index 0 is unused.
struct InvariantSeries {
  std::array<std::vector<double>, 4> sums;
  std::array<bool, 4> fallback{};  // true where the generic sums were used
};
InvariantSeries invariant_series(const Trajectory& traj);

// Fills err1..err3 with dx * max_j |S(j) - S(0)| from invariant_series.
void invariant_errors(const Trajectory& traj, ErrorReport& out);

// Abscissa of the maximum of the piecewise cubic through the grid values
// (Catmull-Rom slopes), searched over the window near +- halfwidth (whole
// grid when near is unset). Throws PeakError when the window's discrete
// maximum lies on the window boundary.
double peak_location(const Grid& grid, const GridFunction& f,
                     std::optional<double> near = std::nullopt,
                     double halfwidth = 2.0);

struct PhaseErrors {
  double err_phi1 = 0.0;  // fast (taller) soliton
  double err_phi2 = 0.0;  // slow soliton
  double err_phi = 0.0;   // err_phi1 - err_phi2
};

// Peak positions of the numerical field against the closed form at time T.
// Windows are centred on the exact peaks with halfwidth 2.
PhaseErrors phase_errors(const Grid& grid, const GridFunction& num_final,
                         const TwoSolitonParams& params, double T);

struct RunSetup {
  BenchmarkProblem problem = BenchmarkProblem::TwoSoliton;
  SchemeSpec scheme;
  double a = -20.0;
  double b = 20.0;
  double dx = 0.1;
  double dt = 0.025;
  double T = 10.0;
  NewtonConfig newton;
  TwoSolitonParams soliton;  // read only for the two-soliton problem
};

// Benchmark presets: two solitons on [-20,20] to T=10 (fine step 0.1/0.025),
// breather on [-2,2] to T=0.4 with 0.02/0.002.
RunSetup two_soliton_setup(const SchemeSpec& s, double dx = 0.1,
                           double dt = 0.025);
RunSetup breather_setup(const SchemeSpec& s);
RunSetup benchmark_setup(BenchmarkProblem p, const SchemeSpec& s);

// Validates that (b-a)/dx is an integer within 1e-9 and builds the mesh.
Grid make_grid(const RunSetup& setup);
int step_count(const RunSetup& setup);  // round(T/dt)
GridFunction exact_state(const RunSetup& setup, const Grid& g, double t);

struct RunResult {
  Trajectory traj;
  ErrorReport report;
  GridFunction exact_final;
  double wall_seconds = 0.0;
  int newton_iters_max = 0;
  double newton_iters_mean = 0.0;
};

// Integrate the configured problem and fill every report field. Phase errors
// are attempted only for the two-soliton problem; a PeakError leaves them
// unset rather than failing the run.
RunResult run_benchmark(const RunSetup& setup);

enum class SweepObjective { SolutionError, UnpreservedInvariant };

struct SweepSample {
  double lambda = 0.0;
  double objective = 0.0;
  bool ok = false;
};

struct SweepResult {
  double lambda_star = 0.0;
  double objective_value = 0.0;
  std::vector<SweepSample> scan;
};

// Even grid scan over [lo, hi] (samples >= 3) followed by golden-section
// refinement around the best bracket; failed integrations are excluded.
// Throws SweepError when every sample fails. Scan samples run in parallel.
SweepResult sweep_lambda(SchemeFamily family, BenchmarkProblem problem,
                         SweepObjective objective, double lo, double hi,
                         int samples);

// Least-squares slope of log(solution error) vs log(dx) over refinement
// levels (dx, dt); >= 2 levels required.
double convergence_order(const SchemeSpec& spec, BenchmarkProblem problem,
                         const std::vector<std::pair<double, double>>& levels);

}  // namespace mkdv
