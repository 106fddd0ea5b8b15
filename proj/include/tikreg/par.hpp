#pragma once

#include <omp.h>

#include "tikreg/types.hpp"

namespace tikreg::par {

// Data-parallel loop: every iteration writes only its own slots, so the
// result is identical for any thread count. The serial twin is kept as the
// reference the tests and the benchmark compare against.
template <class Body>
void parallel_for(Index n, const Body& body) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) body(i);
}

template <class Body>
void serial_for(Index n, const Body& body) {
    for (Index i = 0; i < n; ++i) body(i);
}

template <class Body>
void run_for(bool parallel, Index n, const Body& body) {
    if (parallel)
        parallel_for(n, body);
    else
        serial_for(n, body);
}

inline int max_threads() { return omp_get_max_threads(); }
inline void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

}  // namespace tikreg::par
