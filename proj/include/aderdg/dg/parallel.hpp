#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aderdg {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

/// Static-schedule loop over [0, n). The exception of the lowest failing index
/// is rethrown after the loop, so failures are reported deterministically.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  std::vector<std::exception_ptr> errors;
  std::vector<std::size_t> where;
  bool failed = false;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(aderdg_parallel_error)
      {
        errors.push_back(std::current_exception());
        where.push_back(static_cast<std::size_t>(i));
        failed = true;
      }
    }
  }
  if (failed) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < where.size(); ++j)
      if (where[j] < where[best]) best = j;
    std::rethrow_exception(errors[best]);
  }
}

}  // namespace aderdg
