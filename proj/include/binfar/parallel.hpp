#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace binfar::par {

// Global thread cap. 0 means "use the OpenMP default". Results never depend
// on the cap: every parallel loop in the library writes to per-index slots.
void set_thread_cap(int n);
int thread_cap();

// Number of threads a loop over n independent items will actually use.
int effective_threads(std::int64_t n);

// Runs fn(i) for i in [0, n). Iterations must be independent and must only
// write to locations owned by index i. The first exception thrown by any
// iteration is rethrown on the calling thread.
template <typename F>
void parallel_for(std::int64_t n, F&& fn) {
  if (n <= 0) return;
#ifdef _OPENMP
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  const int threads = effective_threads(n);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  for (std::int64_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace binfar::par
