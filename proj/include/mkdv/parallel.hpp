#pragma once

#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mkdv {

// Global worker cap for parallel_for; 0 means the OpenMP runtime default.
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for i in [0,n), one call per index, in the calling thread.
// Reference implementation the parallel path must match bit for bit: results
// must be written to per-index slots, never accumulated across indices.
template <class Fn>
void serial_for(int n, Fn&& fn) {
  for (int i = 0; i < n; ++i) fn(i);
}

// OpenMP version of the same contract. Work items are independent
// (coarse-grained: sweep samples, verification trials, table rows); outputs
// go to per-index slots so scheduling order cannot change any result. The
// first exception by index is rethrown after the loop, matching what
// serial_for would have thrown.
template <class Fn>
void parallel_for(int n, Fn&& fn) {
#ifdef _OPENMP
  std::vector<std::exception_ptr> errors(n);
  const int cap = max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(cap > 0 ? cap : omp_get_max_threads())
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (int i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
#else
  serial_for(n, std::forward<Fn>(fn));
#endif
}

}  // namespace mkdv
