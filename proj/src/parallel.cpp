#include "binfar/parallel.hpp"

#include <algorithm>
#include <atomic>

namespace binfar::par {

namespace {
std::atomic<int> g_thread_cap{0};
}

void set_thread_cap(int n) { g_thread_cap.store(n < 0 ? 0 : n); }

int thread_cap() { return g_thread_cap.load(); }

int effective_threads(std::int64_t n) {
#ifdef _OPENMP
  int t = omp_get_max_threads();
  const int cap = g_thread_cap.load();
  if (cap > 0) t = std::min(t, cap);
  if (n < t) t = static_cast<int>(n);
  return std::max(t, 1);
#else
  (void)n;
  return 1;
#endif
}

}  // namespace binfar::par
