#pragma once

#include <array>
#include <cassert>

namespace mkdv {

// Forward-mode scalar for banded Jacobians of stencil formulas. Each value
// carries d(value)/d(w[s]) for the level-1 entries w at spatial offsets
// s = -R..R relative to the node where the value lives. Shifting a field by k
// nodes renumbers those offsets by -k, so one whole-grid evaluation of a
// scheme residual yields every Jacobian row at once, through the identical
// compositional code path used for plain doubles.
template <int R>
struct StencilDual {
  double v = 0.0;
  std::array<double, 2 * R + 1> d{};  // d[R + s] = derivative at offset s

  StencilDual() = default;
  explicit StencilDual(double value) : v(value) {}

  // Value whose derivative w.r.t. its own node's level-1 entry is 1.
  static StencilDual seeded(double value) {
    StencilDual x(value);
    x.d[R] = 1.0;
    return x;
  }
};

template <int R>
StencilDual<R> operator+(const StencilDual<R>& x, const StencilDual<R>& y) {
  StencilDual<R> r(x.v + y.v);
  for (int i = 0; i < 2 * R + 1; ++i) r.d[i] = x.d[i] + y.d[i];
  return r;
}

template <int R>
StencilDual<R> operator-(const StencilDual<R>& x, const StencilDual<R>& y) {
  StencilDual<R> r(x.v - y.v);
  for (int i = 0; i < 2 * R + 1; ++i) r.d[i] = x.d[i] - y.d[i];
  return r;
}

template <int R>
StencilDual<R> operator-(const StencilDual<R>& x) {
  StencilDual<R> r(-x.v);
  for (int i = 0; i < 2 * R + 1; ++i) r.d[i] = -x.d[i];
  return r;
}

template <int R>
StencilDual<R> operator*(const StencilDual<R>& x, const StencilDual<R>& y) {
  StencilDual<R> r(x.v * y.v);
  for (int i = 0; i < 2 * R + 1; ++i) r.d[i] = x.d[i] * y.v + x.v * y.d[i];
  return r;
}

template <int R>
StencilDual<R> operator*(double c, const StencilDual<R>& x) {
  StencilDual<R> r(c * x.v);
  for (int i = 0; i < 2 * R + 1; ++i) r.d[i] = c * x.d[i];
  return r;
}

template <int R>
StencilDual<R> operator*(const StencilDual<R>& x, double c) {
  return c * x;
}

template <int R>
StencilDual<R> operator/(const StencilDual<R>& x, double c) {
  return (1.0 / c) * x;
}

template <int R>
StencilDual<R> operator+(const StencilDual<R>& x, double c) {
  StencilDual<R> r = x;
  r.v += c;
  return r;
}

// Offset renumbering that accompanies a spatial shift by k: the value that
// used to depend on offset s now depends on offset s-k at its new node.
// Slots pushed outside the window must be zero (the window R is chosen wider
// than any composite stencil reach).
template <int R>
StencilDual<R> slot_shift(const StencilDual<R>& x, int k) {
  StencilDual<R> r(x.v);
  for (int s = -R; s <= R; ++s) {
    const int src = s - k;
    if (src >= -R && src <= R) r.d[R + s] = x.d[R + src];
  }
#ifndef NDEBUG
  for (int src = -R; src <= R; ++src) {
    const int dst = src + k;
    if (dst < -R || dst > R) assert(x.d[R + src] == 0.0);
  }
#endif
  return r;
}

inline double slot_shift(double x, int) { return x; }

}  // namespace mkdv
