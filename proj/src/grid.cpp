#include "mkdv/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mkdv {

Grid::Grid(double a_, double b_, int M_, double dt_)
    : a(a_), b(b_), M(M_), dx((b_ - a_) / M_), dt(dt_) {
  if (!(b > a)) throw std::invalid_argument("Grid: requires b > a");
  if (M < 8) throw std::invalid_argument("Grid: requires M >= 8");
  if (!(dt > 0.0)) throw std::invalid_argument("Grid: requires dt > 0");
  if (!(dx > 0.0) || !std::isfinite(dx))
    throw std::invalid_argument("Grid: dx = (b-a)/M must be positive and finite");
}

TwoLevelField::TwoLevelField(Grid g, GridFunction l0, GridFunction l1)
    : grid(g), level0(std::move(l0)), level1(std::move(l1)) {
  if (static_cast<int>(level0.size()) != grid.M ||
      static_cast<int>(level1.size()) != grid.M)
    throw std::invalid_argument("TwoLevelField: levels must have length grid.M");
}

GridFunction shift_space(const GridFunction& f, int k) {
  const int M = static_cast<int>(f.size());
  GridFunction out(M);
  int s = k % M;
  if (s < 0) s += M;
  for (int i = 0; i < M; ++i) {
    int j = i + s;
    if (j >= M) j -= M;
    out[i] = f[j];
  }
  return out;
}

GridFunction fwd_diff_space(const GridFunction& f, double dx) {
  const int M = static_cast<int>(f.size());
  GridFunction out(M);
  for (int i = 0; i < M; ++i) {
    const int j = (i + 1 == M) ? 0 : i + 1;
    out[i] = (f[j] - f[i]) / dx;
  }
  return out;
}

GridFunction fwd_avg_space(const GridFunction& f) {
  const int M = static_cast<int>(f.size());
  GridFunction out(M);
  for (int i = 0; i < M; ++i) {
    const int j = (i + 1 == M) ? 0 : i + 1;
    out[i] = (f[j] + f[i]) / 2.0;
  }
  return out;
}

GridFunction fwd_diff_time(const TwoLevelField& F, double dt) {
  const int M = F.grid.M;
  GridFunction out(M);
  for (int i = 0; i < M; ++i) out[i] = (F.level1[i] - F.level0[i]) / dt;
  return out;
}

GridFunction fwd_avg_time(const TwoLevelField& F) {
  const int M = F.grid.M;
  GridFunction out(M);
  for (int i = 0; i < M; ++i) out[i] = (F.level1[i] + F.level0[i]) / 2.0;
  return out;
}

bool all_finite(const GridFunction& f) {
  for (double v : f)
    if (!std::isfinite(v)) return false;
  return true;
}

double inf_norm(const GridFunction& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace mkdv
