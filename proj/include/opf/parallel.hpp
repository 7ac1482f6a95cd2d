#pragma once

#include <cstdint>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace opf {

// Runs fn(0..n-1), optionally across OpenMP threads. Callers must make fn(i)
// independent of every fn(j) and write only to slot i of preallocated
// storage; reports are then assembled in index order, so the serial and
// parallel paths produce byte-identical output. fn must not throw: kernels
// record failures in their slot instead.
template <class Fn>
void for_each_index(std::int64_t n, bool parallel, Fn&& fn) {
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
#else
  (void)parallel;
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    fn(i);
  }
}

inline int worker_count(bool parallel) {
#ifdef _OPENMP
  if (parallel) return omp_get_max_threads();
#else
  (void)parallel;
#endif
  return 1;
}

}  // namespace opf
