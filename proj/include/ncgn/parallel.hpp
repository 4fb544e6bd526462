#pragma once

// Thin layer over OpenMP for the data-parallel drivers (attribution
// enumeration, kernel sampling, exhaustive graph sweeps).  Reductions are
// chunked on a fixed grid independent of the thread count, so results are
// bit-identical for any --jobs value, including the serial reference path.

#include <cstdint>
#include <functional>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ncgn {

inline int hardware_jobs() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_jobs(int n) {
#if defined(_OPENMP)
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

inline constexpr std::int64_t kReduceChunks = 256;

// Deterministic sum of fn(i) for i in [0, n): per-chunk serial accumulation
// in index order, chunks combined in order.
template <class F>
double parallel_sum(std::int64_t n, F&& fn) {
    if (n <= 0) return 0.0;
    std::int64_t chunks = std::min<std::int64_t>(kReduceChunks, n);
    std::vector<double> partial(chunks, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::int64_t c = 0; c < chunks; ++c) {
        std::int64_t lo = c * n / chunks, hi = (c + 1) * n / chunks;
        double acc = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) acc += fn(i);
        partial[c] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// Serial reference for parallel_sum, kept for the equivalence tests and
// the benchmark.  Uses the same chunk grid so the two agree bitwise.
template <class F>
double serial_sum(std::int64_t n, F&& fn) {
    if (n <= 0) return 0.0;
    std::int64_t chunks = std::min<std::int64_t>(kReduceChunks, n);
    double total = 0.0;
    for (std::int64_t c = 0; c < chunks; ++c) {
        std::int64_t lo = c * n / chunks, hi = (c + 1) * n / chunks;
        double acc = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) acc += fn(i);
        total += acc;
    }
    return total;
}

template <class F>
void parallel_for(std::int64_t n, F&& fn) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace ncgn
