#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iwa {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Static-schedule parallel loop; the serial path is the reference used by
// the benchmark comparison. Bodies must write disjoint state per index.
template <class F>
void par_for(int64_t n, bool parallel, F&& body) {
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (int64_t i = 0; i < n; ++i) body(i);
        return;
#endif
    }
    for (int64_t i = 0; i < n; ++i) body(i);
}

} // namespace iwa
