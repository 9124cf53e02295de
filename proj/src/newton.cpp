#include "mkdv/newton.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <utility>

#include "mkdv/banded.hpp"
#include "mkdv/errors.hpp"

namespace mkdv {

namespace {

// Roundoff floor of one residual evaluation in the infinity norm: the three
// stacked spatial differences amplify input roundoff by 8/dx^3, the cubic
// flux contributes U^3/dx through its difference, and the time difference
// 2U/dt. U is the field magnitude actually in play.
double residual_noise_scale(const Grid& g, const GridFunction& u0,
                            const GridFunction& u1) {
  const double U = std::max({inf_norm(u0), inf_norm(u1), 1e-30});
  const double dx3 = g.dx * g.dx * g.dx;
  return DBL_EPSILON * (8.0 * U / dx3 + U * U * U / g.dx + 2.0 * U / g.dt);
}

// A stalled iteration is accepted once the residual sits within this factor
// of the noise floor and stopped contracting; Newton cannot do better than
// the arithmetic it is given.
constexpr double kNoiseAcceptFactor = 32.0;
constexpr double kStallContraction = 0.25;

}  // namespace

GridFunction step(const SchemeSpec& spec, const Grid& grid,
                  const GridFunction* u_prev_prev, const GridFunction& u0,
                  const NewtonConfig& cfg, StepStats* stats) {
  if (cfg.tol_residual <= 0.0) throw ConfigError("tol_residual must be > 0");
  if (cfg.max_iters < 1) throw ConfigError("max_iters must be >= 1");

  GridFunction u1 = u0;
  if (u_prev_prev != nullptr &&
      cfg.predictor == NewtonConfig::Predictor::LinearExtrapolation) {
    for (int i = 0; i < grid.M; ++i) u1[i] = 2.0 * u0[i] - (*u_prev_prev)[i];
  }

  GridFunction best = u1;
  double best_nr = std::numeric_limits<double>::infinity();
  double prev_nr = std::numeric_limits<double>::infinity();

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const TwoLevelField F(grid, u0, u1);
    const GridFunction r = residual(spec, F);
    const double nr = inf_norm(r);
    if (nr < best_nr) {
      best_nr = nr;
      best = u1;
    }
    if (nr <= cfg.tol_residual) {
      if (stats != nullptr) *stats = {iter, nr};
      return u1;
    }
    const double floor = kNoiseAcceptFactor * residual_noise_scale(grid, u0, u1);
    if (iter >= 2 && best_nr <= floor && nr > kStallContraction * prev_nr) {
      if (stats != nullptr) *stats = {iter, best_nr};
      return best;
    }
    prev_nr = nr;

    const CyclicBandedMatrix J = jacobian(spec, F);
    GridFunction rhs(grid.M);
    for (int i = 0; i < grid.M; ++i) rhs[i] = -r[i];
    const std::vector<double> delta = solve_cyclic_banded(J, rhs);
    for (int i = 0; i < grid.M; ++i) u1[i] += delta[i];
    if (!all_finite(u1))
      throw NonConvergenceError(iter,
                                std::numeric_limits<double>::infinity());
  }
  throw NonConvergenceError(cfg.max_iters, best_nr);
}

Trajectory integrate(const SchemeSpec& spec, const Grid& grid,
                     GridFunction u_init, int N, const NewtonConfig& cfg) {
  if (N < 0) throw ConfigError("step count must be >= 0");
  if (static_cast<int>(u_init.size()) != grid.M)
    throw ConfigError("initial state length does not match grid");
  if (!all_finite(u_init)) throw ConfigError("initial state must be finite");

  Trajectory traj;
  traj.grid = grid;
  traj.scheme = spec;
  traj.states.reserve(N + 1);
  traj.states.push_back(std::move(u_init));
  traj.newton_iters.reserve(N);
  traj.step_residuals.reserve(N);
  for (int n = 0; n < N; ++n) {
    const GridFunction* prev =
        (n >= 1) ? &traj.states[n - 1] : nullptr;
    StepStats st;
    try {
      traj.states.push_back(step(spec, grid, prev, traj.states[n], cfg, &st));
    } catch (const NonConvergenceError& e) {
      throw IntegrationError(n, e.iterations, e.residual_norm);
    }
    traj.newton_iters.push_back(st.iterations);
    traj.step_residuals.push_back(st.residual_norm);
  }
  return traj;
}

}  // namespace mkdv
