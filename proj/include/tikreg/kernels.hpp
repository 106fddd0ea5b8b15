#pragma once

#include <vector>

#include "tikreg/par.hpp"
#include "tikreg/types.hpp"

namespace tikreg::kernels {

// Map fn over xs. Every slot is written exactly once, so the OpenMP path
// returns the same bytes as the serial reference for any thread count.
template <class F>
std::vector<double> map_grid(const std::vector<double>& xs, const F& fn) {
    std::vector<double> out(xs.size());
    par::parallel_for(static_cast<Index>(xs.size()),
                      [&](Index i) { out[static_cast<std::size_t>(i)] = fn(xs[static_cast<std::size_t>(i)]); });
    return out;
}

template <class F>
std::vector<double> map_grid_serial(const std::vector<double>& xs, const F& fn) {
    std::vector<double> out(xs.size());
    par::serial_for(static_cast<Index>(xs.size()),
                    [&](Index i) { out[static_cast<std::size_t>(i)] = fn(xs[static_cast<std::size_t>(i)]); });
    return out;
}

// Fill an m x n matrix entrywise from fn(i, j), parallel over rows.
template <class F>
Matrix fill_matrix(Index m, Index n, const F& fn) {
    Matrix a(m, n);
    par::parallel_for(m, [&](Index i) {
        for (Index j = 0; j < n; ++j) a(i, j) = fn(i, j);
    });
    return a;
}

template <class F>
Matrix fill_matrix_serial(Index m, Index n, const F& fn) {
    Matrix a(m, n);
    par::serial_for(m, [&](Index i) {
        for (Index j = 0; j < n; ++j) a(i, j) = fn(i, j);
    });
    return a;
}

}  // namespace tikreg::kernels
