#pragma once

#include <functional>

#include "mkdv/banded.hpp"
#include "mkdv/grid.hpp"
#include "mkdv/schemes.hpp"

namespace mkdv {

struct IdentityReport {
  SchemeSpec scheme;
  int law_index = 1;
  double max_abs_defect = 0.0;
  double scale = 0.0;  // max |Q * A| over the sample
  int trials = 0;
};

// Random two-level field on a random mesh: M in [12,64], dx in [0.05,0.5],
// dt in [0.01,0.1], entries uniform in [-2,2]. Deterministic in the seed and
// reproducible across platforms (raw 53-bit draws, no distribution objects).
TwoLevelField random_field(unsigned long long seed);

// Pointwise Q*A - Dm F - Dn G for one law on one field; identically zero (to
// roundoff) exactly when the law's evaluators match the scheme.
GridFunction identity_defect(const SchemeSpec& spec,
                             const ConservationLawEval& law,
                             const TwoLevelField& F);

// Defect statistics over `trials` random fields with per-trial derived seeds
// (independent of thread count). Throws ConfigError when the scheme does not
// preserve the law.
IdentityReport check_divergence_identity(const SchemeSpec& spec, int law_index,
                                         int trials, unsigned long long seed);

// Worst entrywise |J - central finite difference| over the full matrix,
// perturbation 1e-7*(1+|u|) per column.
double matrix_fd_deviation(const SchemeSpec& spec, const TwoLevelField& F,
                           const CyclicBandedMatrix& J);

// matrix_fd_deviation maximized over random fields. These draws use gentler
// meshes (dx in [0.5,1], dt in [0.1,0.2], entries in [-1,1]) than
// random_field: the assembled derivative is polynomial in the inputs, so any
// wrong term shows up regardless of mesh, while harsh meshes would drown the
// finite-difference oracle itself in cancellation noise.
double check_jacobian(const SchemeSpec& spec, int trials,
                      unsigned long long seed);

// A smooth space-time profile with its known continuous operator value
// u_t + u^2 u_x + u_xxx.
struct SmoothField {
  std::function<double(double, double)> value;
  std::function<double(double, double)> pde_value;
};

// u = sech(x - 0.7 t); operator value (0.7-1) sech tanh + 5 sech^3 tanh.
SmoothField sech_profile();

// Observed order of the residual as an approximation of the operator at the
// stencil centre (spatial offset -1/2 for 8-point families, 0 for 10-point;
// time offset dt/2), over dx = 0.4, 0.2, 0.1, 0.05 with dt = dx/4. Returns
// the least-squares slope of log defect vs log dx, or +infinity when every
// defect vanishes (e.g. constant fields).
double check_truncation_order(const SchemeSpec& spec, const SmoothField& field);

}  // namespace mkdv
