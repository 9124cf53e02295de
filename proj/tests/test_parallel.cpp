#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "mkdv/parallel.hpp"

using namespace mkdv;

namespace {

// Per-index workload with enough arithmetic to expose reordering bugs if
// results were ever accumulated across indices.
double work(int i) {
  double s = 0.0;
  for (int k = 1; k <= 200; ++k) s += std::sin(i * 0.01 + k) / k;
  return s;
}

}  // namespace

TEST_CASE("parallel_for matches serial_for slot for slot") {
  const int n = 64;
  std::vector<double> a(n), b(n);
  serial_for(n, [&](int i) { a[i] = work(i); });
  parallel_for(n, [&](int i) { b[i] = work(i); });
  for (int i = 0; i < n; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("every index runs exactly once") {
  const int n = 257;
  std::vector<std::atomic<int>> hits(n);
  parallel_for(n, [&](int i) { hits[i].fetch_add(1); });
  for (int i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
  parallel_for(0, [&](int) { FAIL("body must not run for n = 0"); });
}

TEST_CASE("the first exception by index is rethrown") {
  try {
    parallel_for(32, [&](int i) {
      if (i == 9 || i == 21)
        throw std::runtime_error("boom at " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "boom at 9");
  }
}

TEST_CASE("worker cap round-trips and zero restores the runtime default") {
  const int before = max_threads();
  set_max_threads(3);
  CHECK(max_threads() == 3);
  // The cap bounds concurrency but must not change any result.
  std::vector<double> a(16), b(16);
  serial_for(16, [&](int i) { a[i] = work(i); });
  parallel_for(16, [&](int i) { b[i] = work(i); });
  for (int i = 0; i < 16; ++i) CHECK(a[i] == b[i]);
  set_max_threads(0);
  CHECK(max_threads() == 0);
  set_max_threads(before);
}
