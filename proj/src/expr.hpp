#pragma once

#include <cstddef>
#include <vector>

#include "mkdv/dual.hpp"

// Whole-grid expression values used to transcribe scheme formulas operator by
// operator. Ex<T> holds one time level of a subexpression; Ex2<T> holds both
// levels. Spatial operators act levelwise; the time operators mn (forward
// average) and dn (forward difference) collapse an Ex2 to an Ex. Products and
// sums are pointwise per level. T is double for residual/flux/density values
// and StencilDual for Jacobian assembly.
namespace mkdv::expr {

template <class T>
struct Ex {
  std::vector<T> v;
};

template <class T>
struct Ex2 {
  Ex<T> l0, l1;
};

template <class T>
Ex<T> sh(const Ex<T>& f, int k) {
  const int M = static_cast<int>(f.v.size());
  Ex<T> out;
  out.v.resize(M);
  int s = k % M;
  if (s < 0) s += M;
  for (int i = 0; i < M; ++i) {
    int j = i + s;
    if (j >= M) j -= M;
    out.v[i] = slot_shift(f.v[j], k);
  }
  return out;
}

template <class T>
Ex<T> mm(const Ex<T>& f) {  // forward spatial average
  const int M = static_cast<int>(f.v.size());
  Ex<T> out;
  out.v.resize(M);
  for (int i = 0; i < M; ++i) {
    const int j = (i + 1 == M) ? 0 : i + 1;
    out.v[i] = (slot_shift(f.v[j], 1) + f.v[i]) * 0.5;
  }
  return out;
}

template <class T>
Ex<T> dm(const Ex<T>& f, double dx) {  // forward spatial difference
  const int M = static_cast<int>(f.v.size());
  Ex<T> out;
  out.v.resize(M);
  const double inv = 1.0 / dx;
  for (int i = 0; i < M; ++i) {
    const int j = (i + 1 == M) ? 0 : i + 1;
    out.v[i] = (slot_shift(f.v[j], 1) - f.v[i]) * inv;
  }
  return out;
}

template <class T>
Ex2<T> sh(const Ex2<T>& f, int k) {
  return {sh(f.l0, k), sh(f.l1, k)};
}

template <class T>
Ex2<T> mm(const Ex2<T>& f) {
  return {mm(f.l0), mm(f.l1)};
}

template <class T>
Ex2<T> dm(const Ex2<T>& f, double dx) {
  return {dm(f.l0, dx), dm(f.l1, dx)};
}

template <class T>
Ex<T> mn(const Ex2<T>& f) {  // forward time average, collapses the pair
  const std::size_t M = f.l0.v.size();
  Ex<T> out;
  out.v.resize(M);
  for (std::size_t i = 0; i < M; ++i) out.v[i] = (f.l1.v[i] + f.l0.v[i]) * 0.5;
  return out;
}

template <class T>
Ex<T> dn(const Ex2<T>& f, double dt) {  // forward time difference
  const std::size_t M = f.l0.v.size();
  Ex<T> out;
  out.v.resize(M);
  const double inv = 1.0 / dt;
  for (std::size_t i = 0; i < M; ++i) out.v[i] = (f.l1.v[i] - f.l0.v[i]) * inv;
  return out;
}

template <class T>
Ex<T> operator+(const Ex<T>& x, const Ex<T>& y) {
  Ex<T> out;
  out.v.resize(x.v.size());
  for (std::size_t i = 0; i < x.v.size(); ++i) out.v[i] = x.v[i] + y.v[i];
  return out;
}

template <class T>
Ex<T> operator-(const Ex<T>& x, const Ex<T>& y) {
  Ex<T> out;
  out.v.resize(x.v.size());
  for (std::size_t i = 0; i < x.v.size(); ++i) out.v[i] = x.v[i] - y.v[i];
  return out;
}

template <class T>
Ex<T> operator*(const Ex<T>& x, const Ex<T>& y) {
  Ex<T> out;
  out.v.resize(x.v.size());
  for (std::size_t i = 0; i < x.v.size(); ++i) out.v[i] = x.v[i] * y.v[i];
  return out;
}

template <class T>
Ex<T> operator*(double c, const Ex<T>& x) {
  Ex<T> out;
  out.v.resize(x.v.size());
  for (std::size_t i = 0; i < x.v.size(); ++i) out.v[i] = c * x.v[i];
  return out;
}

template <class T>
Ex2<T> operator+(const Ex2<T>& x, const Ex2<T>& y) {
  return {x.l0 + y.l0, x.l1 + y.l1};
}

template <class T>
Ex2<T> operator-(const Ex2<T>& x, const Ex2<T>& y) {
  return {x.l0 - y.l0, x.l1 - y.l1};
}

template <class T>
Ex2<T> operator*(const Ex2<T>& x, const Ex2<T>& y) {
  return {x.l0 * y.l0, x.l1 * y.l1};
}

template <class T>
Ex2<T> operator*(double c, const Ex2<T>& x) {
  return {c * x.l0, c * x.l1};
}

}  // namespace mkdv::expr
