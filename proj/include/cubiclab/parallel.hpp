#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cubiclab {

/// Execution mode for the sampling kernels. Serial is the reference
/// implementation; Parallel runs the same per-index body under OpenMP.
/// Kernels write into preallocated per-index slots and reduce serially,
/// so both modes produce bitwise-identical results at any thread count.
enum class ExecMode { Serial, Parallel };

template <typename Fn>
void for_each_index(long n, ExecMode mode, Fn&& fn) {
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) fn(i);
  } else {
    for (long i = 0; i < n; ++i) fn(i);
  }
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace cubiclab
