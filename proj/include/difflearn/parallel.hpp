#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace difflearn {

// 0 means the OpenMP default.
inline int resolve_workers(int workers) {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

/// Runs body(i) for i in [0, count) across `workers` threads. The exception
/// of the lowest failing index is rethrown, so failures are reproducible.
template <class Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace difflearn
