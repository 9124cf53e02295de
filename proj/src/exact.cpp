#include "mkdv/exact.hpp"

#include <cmath>

#include "mkdv/errors.hpp"

namespace mkdv {

namespace {
void validate(const TwoSolitonParams& p) {
  if (!(p.c1 > p.c2 && p.c2 > 0.0))
    throw ConfigError("two-soliton parameters require c1 > c2 > 0");
}
}  // namespace

double exact_two_soliton(const TwoSolitonParams& p, double x, double t) {
  validate(p);
  const double s1 = std::sqrt(p.c1);
  const double s2 = std::sqrt(p.c2);
  const double kappa = (s1 + s2) / (s1 - s2);
  const double xi1 = s1 * (x - p.c1 * t + p.d1);
  const double xi2 = s2 * (x - p.c2 * t + p.d2);
  // Far from both solitons the value underflows through the cosh ratio; skip
  // the overflowing intermediates.
  if (std::abs(xi1) + std::abs(xi2) > 600.0) return 0.0;
  const double num = s1 * std::cosh(xi2) + s2 * std::cosh(xi1);
  const double den = (kappa * kappa - 1.0) + kappa * kappa * std::cosh(xi1 - xi2) +
                     std::cosh(xi1 + xi2);
  return 2.0 * std::sqrt(6.0) * kappa * num / den;
}

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kTwoSqrt6 = 4.898979485566356;
constexpr double kPi = 3.141592653589793;
}  // namespace

double exact_breather(double x, double t) {
  const double theta = 2.0 * x - 64.0 * t - kPi / 2.0;
  const double rho = 2.0 * kSqrt3 * x;
  if (std::abs(rho) > 600.0) return 0.0;
  const double ch = std::cosh(rho);
  const double sh = std::sinh(rho);
  const double g = kSqrt3 * std::sin(theta) / ch;
  const double gx =
      kSqrt3 * (2.0 * std::cos(theta) * ch - 2.0 * kSqrt3 * std::sin(theta) * sh) /
      (ch * ch);
  return -kTwoSqrt6 * gx / (1.0 + g * g);
}

double breather_potential(double x, double t) {
  const double theta = 2.0 * x - 64.0 * t - kPi / 2.0;
  const double rho = 2.0 * kSqrt3 * x;
  const double g = kSqrt3 * std::sin(theta) / std::cosh(rho);
  return -kTwoSqrt6 * std::atan(g);
}

GridFunction sample_two_soliton(const TwoSolitonParams& p, const Grid& g,
                                double t) {
  GridFunction f(g.M);
  for (int i = 0; i < g.M; ++i) f[i] = exact_two_soliton(p, g.x(i), t);
  return f;
}

GridFunction sample_breather(const Grid& g, double t) {
  GridFunction f(g.M);
  for (int i = 0; i < g.M; ++i) f[i] = exact_breather(g.x(i), t);
  return f;
}

double max_location(const std::function<double(double)>& f, double lo,
                    double hi) {
  constexpr int kScan = 4000;
  const double step = (hi - lo) / kScan;
  double best_x = lo;
  double best_v = f(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo + i * step;
    const double v = f(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double a = std::max(lo, best_x - step);
  double b = std::min(hi, best_x + step);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace mkdv
