#pragma once

#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stoklab::par {

inline bool openmp_enabled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) noexcept {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

/// Serial reference loop. The parallel kernel below must produce
/// bit-identical results to this one; tests compare the two.
template <class F>
void serial_for(std::int64_t n, F&& fn) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

/// OpenMP loop over independent iterations. Each iteration must touch only
/// its own slots of any output array; reductions happen afterwards in index
/// order, so results do not depend on the schedule or thread count.
/// Exceptions are captured inside the region and rethrown once it ends.
template <class F>
void parallel_for(std::int64_t n, F&& fn) {
#ifdef _OPENMP
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical(stoklab_parallel_for_err)
            {
                if (!err) err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
#else
    serial_for(n, fn);
#endif
}

template <class F>
void run_paths(std::int64_t n, bool parallel, F&& fn) {
    if (parallel) parallel_for(n, fn);
    else serial_for(n, fn);
}

} // namespace stoklab::par
