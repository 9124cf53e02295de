#pragma once

#include <vector>

#include "mkdv/grid.hpp"
#include "mkdv/schemes.hpp"

namespace mkdv {

struct NewtonConfig {
  // Infinity-norm residual target. The iteration also stops, successfully,
  // when the residual stalls at the evaluation noise floor of the residual
  // formula itself (roundoff through the /dx^3 and /dt terms), which for
  // production step sizes can sit slightly above 1e-12.
  double tol_residual = 1e-12;
  int max_iters = 50;
  enum class Predictor { CopyPrevious, LinearExtrapolation };
  Predictor predictor = Predictor::LinearExtrapolation;
};

struct StepStats {
  int iterations = 0;
  double residual_norm = 0.0;  // accepted iterate's residual
};

// Solve residual(spec, (u0, u1)) = 0 for u1. The initial iterate is
// 2*u0 - *u_prev_prev when the caller supplies the level before u0 and the
// predictor is LinearExtrapolation, else u0 itself. Throws
// NonConvergenceError; deterministic for identical inputs.
GridFunction step(const SchemeSpec& spec, const Grid& grid,
                  const GridFunction* u_prev_prev, const GridFunction& u0,
                  const NewtonConfig& cfg, StepStats* stats = nullptr);

struct Trajectory {
  Grid grid;
  SchemeSpec scheme;
  std::vector<GridFunction> states;        // time levels 0..N
  std::vector<int> newton_iters;           // per step
  std::vector<double> step_residuals;      // accepted residual per step
};

// N repeated steps from u_init (N = 0 gives the bare initial state).
// Throws IntegrationError carrying the failing step index.
Trajectory integrate(const SchemeSpec& spec, const Grid& grid,
                     GridFunction u_init, int N, const NewtonConfig& cfg);

}  // namespace mkdv
