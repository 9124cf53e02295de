#pragma once

#include <vector>

namespace mkdv {

// Values at the M spatial nodes of one time level.
using GridFunction = std::vector<double>;

// Uniform periodic spatial mesh plus the time step of a one-step scheme.
// Node i sits at x(i) = a + i*dx for i = 0..M-1; spatial indexing is modulo M
// everywhere (no ghost cells).
struct Grid {
  double a = 0.0;
  double b = 1.0;
  int M = 8;
  double dx = 0.125;
  double dt = 0.01;

  Grid() = default;
  // Requires b > a, M >= 8 (largest stencil spans 5 nodes), dt > 0.
  Grid(double a_, double b_, int M_, double dt_);

  double x(int i) const { return a + i * dx; }
  int wrap(int i) const {
    int r = i % M;
    return r < 0 ? r + M : r;
  }
};

// The pair of adjacent time levels a one-step scheme couples.
struct TwoLevelField {
  Grid grid;
  GridFunction level0;  // time level n
  GridFunction level1;  // time level n+1

  // Requires both levels to have length grid.M.
  TwoLevelField(Grid g, GridFunction l0, GridFunction l1);
};

// result[i] = f[(i+k) mod M]
GridFunction shift_space(const GridFunction& f, int k);
// result[i] = (f[(i+1) mod M] - f[i]) / dx
GridFunction fwd_diff_space(const GridFunction& f, double dx);
// result[i] = (f[(i+1) mod M] + f[i]) / 2
GridFunction fwd_avg_space(const GridFunction& f);
// (level1 - level0) / dt pointwise
GridFunction fwd_diff_time(const TwoLevelField& F, double dt);
// (level1 + level0) / 2 pointwise
GridFunction fwd_avg_time(const TwoLevelField& F);

bool all_finite(const GridFunction& f);
double inf_norm(const GridFunction& f);

}  // namespace mkdv
