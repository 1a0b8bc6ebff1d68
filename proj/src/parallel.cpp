#include "henon/parallel.hpp"

#ifdef HENON_HAVE_OPENMP
#include <omp.h>
#endif

namespace henon {

namespace {
int g_threads = 0;
constexpr std::size_t kSumChunk = 256;
}  // namespace

void set_thread_count(int threads) {
  g_threads = threads < 0 ? 0 : threads;
#ifdef HENON_HAVE_OPENMP
  if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
}

int thread_count() {
#ifdef HENON_HAVE_OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const auto count = static_cast<long long>(n);
#ifdef HENON_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

double parallel_sum(std::size_t n, const std::function<double(std::size_t)>& body) {
  const std::size_t chunks = (n + kSumChunk - 1) / kSumChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t lo = c * kSumChunk;
    const std::size_t hi = lo + kSumChunk < n ? lo + kSumChunk : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += body(i);
    partial[c] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace henon
