#pragma once

#include <functional>

#include "mkdv/grid.hpp"

namespace mkdv {

// Two solitons with speeds c1 > c2 > 0; the faster one is taller. d1, d2
// translate the initial positions (peaks near -d1 and -d2 at t = 0).
struct TwoSolitonParams {
  double c1 = 2.5;
  double c2 = 0.5;
  double d1 = 12.0;
  double d2 = 2.5;
};

// Closed-form two-soliton state. Throws ConfigError unless c1 > c2 > 0.
double exact_two_soliton(const TwoSolitonParams& p, double x, double t);

// Breather: x-derivative of -2*sqrt(6)*atan(sqrt(3) sin(2x-64t-pi/2) /
// cosh(2*sqrt(3) x)), differentiated analytically.
double exact_breather(double x, double t);

// The undifferentiated potential; finite differences of this validate the
// closed-form derivative above.
double breather_potential(double x, double t);

GridFunction sample_two_soliton(const TwoSolitonParams& p, const Grid& g,
                                double t);
GridFunction sample_breather(const Grid& g, double t);

// Abscissa of the maximum of a smooth profile on [lo, hi]: dense scan then
// golden-section refinement. Intended for closed-form reference profiles.
double max_location(const std::function<double(double)>& f, double lo,
                    double hi);

}  // namespace mkdv
