#pragma once

#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace torsionlab {

/// Fill out[i] = term(i) for i in [0, n), in parallel when OpenMP is enabled.
/// The output is index-addressed, so the assembly order is deterministic
/// regardless of thread count.
template <class T, class F>
void parallel_tabulate(std::vector<T>& out, std::int64_t n, F term) {
  out.resize(size_t(n));
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i) out[size_t(i)] = term(i);
}

/// Deterministic parallel sum: fixed-size blocks are summed independently
/// (in parallel) and then combined serially in block order, so the result is
/// bit-identical for any thread count, including 1.
template <class F>
double block_sum(std::int64_t lo, std::int64_t hi, F term) {
  constexpr std::int64_t kBlock = 4096;
  if (hi <= lo) return 0.0;
  const std::int64_t n = hi - lo;
  const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(size_t(nblocks), 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const std::int64_t from = lo + b * kBlock;
    const std::int64_t to = from + kBlock < hi ? from + kBlock : hi;
    double s = 0.0;
    for (std::int64_t i = from; i < to; ++i) s += term(i);
    partial[size_t(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace torsionlab
