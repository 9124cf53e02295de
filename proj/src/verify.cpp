#include "mkdv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mkdv/errors.hpp"
#include "mkdv/parallel.hpp"

namespace mkdv {

namespace {

constexpr unsigned long long kSeedStride = 0x9E3779B97F4A7C15ULL;

double unit_draw(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * unit_draw(eng);
}

int uniform_int(std::mt19937_64& eng, int lo, int hi) {
  return lo + static_cast<int>(eng() %
                               static_cast<unsigned long long>(hi - lo + 1));
}

TwoLevelField draw_field(unsigned long long seed, double umax, double dx_lo,
                         double dx_hi, double dt_lo, double dt_hi) {
  std::mt19937_64 eng(seed);
  const int M = uniform_int(eng, 12, 64);
  const double dx = uniform(eng, dx_lo, dx_hi);
  const double dt = uniform(eng, dt_lo, dt_hi);
  Grid g(0.0, M * dx, M, dt);
  GridFunction l0(M), l1(M);
  for (double& v : l0) v = uniform(eng, -umax, umax);
  for (double& v : l1) v = uniform(eng, -umax, umax);
  return TwoLevelField(g, std::move(l0), std::move(l1));
}

const ConservationLawEval& find_law(const std::vector<ConservationLawEval>& laws,
                                    const SchemeSpec& spec, int law_index) {
  for (const ConservationLawEval& l : laws)
    if (l.law_index == law_index) return l;
  throw ConfigError(std::string(family_name(spec.family)) +
                    " does not preserve conservation law " +
                    std::to_string(law_index));
}

}  // namespace

TwoLevelField random_field(unsigned long long seed) {
  return draw_field(seed, 2.0, 0.05, 0.5, 0.01, 0.1);
}

GridFunction identity_defect(const SchemeSpec& spec,
                             const ConservationLawEval& law,
                             const TwoLevelField& F) {
  const Grid& g = F.grid;
  const GridFunction A = residual(spec, F);
  const GridFunction Q = law.characteristic(F);
  const GridFunction DmF = fwd_diff_space(law.flux(F), g.dx);
  const GridFunction G0 = law.density(TwoLevelField(g, F.level0, F.level0));
  const GridFunction G1 = law.density(TwoLevelField(g, F.level1, F.level1));
  GridFunction d(g.M);
  for (int i = 0; i < g.M; ++i)
    d[i] = Q[i] * A[i] - DmF[i] - (G1[i] - G0[i]) / g.dt;
  return d;
}

IdentityReport check_divergence_identity(const SchemeSpec& spec, int law_index,
                                         int trials, unsigned long long seed) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const auto laws = conservation_laws(spec);
  const ConservationLawEval& law = find_law(laws, spec, law_index);

  std::vector<double> defects(trials, 0.0), scales(trials, 0.0);
  parallel_for(trials, [&](int t) {
    const TwoLevelField F =
        random_field(seed + kSeedStride * static_cast<unsigned long long>(t));
    const GridFunction d = identity_defect(spec, law, F);
    const GridFunction A = residual(spec, F);
    const GridFunction Q = law.characteristic(F);
    double dmax = 0.0, smax = 0.0;
    for (int i = 0; i < F.grid.M; ++i) {
      dmax = std::max(dmax, std::abs(d[i]));
      smax = std::max(smax, std::abs(Q[i] * A[i]));
    }
    defects[t] = dmax;
    scales[t] = smax;
  });

  IdentityReport rep;
  rep.scheme = spec;
  rep.law_index = law_index;
  rep.trials = trials;
  rep.max_abs_defect = *std::max_element(defects.begin(), defects.end());
  rep.scale = *std::max_element(scales.begin(), scales.end());
  return rep;
}

double matrix_fd_deviation(const SchemeSpec& spec, const TwoLevelField& F,
                           const CyclicBandedMatrix& J) {
  const Grid& g = F.grid;
  TwoLevelField P = F;
  double worst = 0.0;
  for (int c = 0; c < g.M; ++c) {
    const double h = 1e-7 * (1.0 + std::abs(F.level1[c]));
    P.level1[c] = F.level1[c] + h;
    const GridFunction rp = residual(spec, P);
    P.level1[c] = F.level1[c] - h;
    const GridFunction rm = residual(spec, P);
    P.level1[c] = F.level1[c];
    for (int r = 0; r < g.M; ++r) {
      const double fd = (rp[r] - rm[r]) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - J.at(r, c)));
    }
  }
  return worst;
}

double check_jacobian(const SchemeSpec& spec, int trials,
                      unsigned long long seed) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  std::vector<double> devs(trials, 0.0);
  parallel_for(trials, [&](int t) {
    const TwoLevelField F = draw_field(
        seed + kSeedStride * static_cast<unsigned long long>(t), 1.0, 0.5,
        1.0, 0.1, 0.2);
    const CyclicBandedMatrix J = jacobian(spec, F);
    devs[t] = matrix_fd_deviation(spec, F, J);
  });
  return *std::max_element(devs.begin(), devs.end());
}

SmoothField sech_profile() {
  SmoothField f;
  f.value = [](double x, double t) {
    const double xi = x - 0.7 * t;
    return 1.0 / std::cosh(xi);
  };
  f.pde_value = [](double x, double t) {
    const double xi = x - 0.7 * t;
    const double sech = 1.0 / std::cosh(xi);
    const double th = std::tanh(xi);
    return (0.7 - 1.0) * sech * th + 5.0 * sech * sech * sech * th;
  };
  return f;
}

double check_truncation_order(const SchemeSpec& spec,
                              const SmoothField& field) {
  const double dxs[] = {0.4, 0.2, 0.1, 0.05};
  std::vector<double> lx, ly;
  bool any_signal = false;
  for (const double dx : dxs) {
    const double dt = 0.25 * dx;
    const int M = static_cast<int>(std::llround(16.0 / dx));
    const Grid g(-8.0, 8.0, M, dt);
    GridFunction l0(M), l1(M);
    for (int i = 0; i < M; ++i) {
      l0[i] = field.value(g.x(i), 0.0);
      l1[i] = field.value(g.x(i), dt);
    }
    const GridFunction r = residual(spec, TwoLevelField(g, l0, l1));
    const int m = static_cast<int>(std::llround((0.8 - g.a) / g.dx));
    const double xc =
        is_ten_point(spec.family) ? g.x(m) : g.x(m) - 0.5 * g.dx;
    const double exact = field.pde_value(xc, 0.5 * dt);
    const double defect = std::abs(r[m] - exact);
    if (defect > 1e-13 * (1.0 + std::abs(exact))) any_signal = true;
    lx.push_back(std::log(dx));
    ly.push_back(std::log(std::max(defect, 1e-300)));
  }
  if (!any_signal) return std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mkdv
