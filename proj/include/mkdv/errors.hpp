#pragma once

#include <stdexcept>
#include <string>

namespace mkdv {

// Invalid or inconsistent run configuration (bad key, bad value, bad problem
// geometry). CLI exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem failure while writing artifacts. CLI exit code 4.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newton failed to reach the residual tolerance within max_iters.
struct NonConvergenceError : std::runtime_error {
  int iterations;
  double residual_norm;
  NonConvergenceError(int iters, double rnorm)
      : std::runtime_error("Newton did not converge after " +
                           std::to_string(iters) + " iterations, residual " +
                           std::to_string(rnorm)),
        iterations(iters),
        residual_norm(rnorm) {}
};

// A step inside integrate() failed; carries the failing time index.
struct IntegrationError : std::runtime_error {
  int step_index;
  int iterations;
  double residual_norm;
  IntegrationError(int step, int iters, double rnorm)
      : std::runtime_error("integration failed at step " +
                           std::to_string(step) + ": Newton residual " +
                           std::to_string(rnorm) + " after " +
                           std::to_string(iters) + " iterations"),
        step_index(step),
        iterations(iters),
        residual_norm(rnorm) {}
};

// The search window's discrete maximum sits on the window boundary.
struct PeakError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every lambda sample in a sweep failed to integrate.
struct SweepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mkdv
