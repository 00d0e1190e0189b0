#pragma once

#include <cstddef>
#include <vector>

namespace elastoball::grid {

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);  // a, b > 0

/// Whether the OpenMP kernels are used by default. Compiled-out builds always
/// run the serial reference.
bool threads_enabled();
void set_threads_enabled(bool on);

struct MinResult {
    double value = 0.0;
    std::size_t i = 0;  // x index
    std::size_t j = 0;  // y index
};

/// Serial reference kernel: minimum of f over the grid, ties resolved to the
/// lexicographically smallest (i, j).
template <class F>
MinResult min_scan_serial(const std::vector<double>& xs, const std::vector<double>& ys, F&& f) {
    MinResult best{f(xs[0], ys[0]), 0, 0};
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const double v = f(xs[i], ys[j]);
            if (v < best.value) best = {v, i, j};
        }
    return best;
}

namespace detail {

template <class F>
MinResult row_min(const std::vector<double>& xs, const std::vector<double>& ys, F& f,
                  std::size_t i) {
    MinResult best{f(xs[i], ys[0]), i, 0};
    for (std::size_t j = 1; j < ys.size(); ++j) {
        const double v = f(xs[i], ys[j]);
        if (v < best.value) best = {v, i, j};
    }
    return best;
}

}  // namespace detail

/// Row-parallel kernel. Each row is reduced serially and the per-row results
/// are combined in row order, so the result is identical to the serial
/// reference bit for bit, independent of scheduling.
template <class F>
MinResult min_scan_parallel(const std::vector<double>& xs, const std::vector<double>& ys, F&& f) {
    std::vector<MinResult> rows(xs.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(xs.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)] =
            detail::row_min(xs, ys, f, static_cast<std::size_t>(i));
    MinResult best = rows[0];
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].value < best.value) best = rows[i];
    return best;
}

template <class F>
MinResult min_scan(const std::vector<double>& xs, const std::vector<double>& ys, F&& f) {
    if (threads_enabled()) return min_scan_parallel(xs, ys, f);
    return min_scan_serial(xs, ys, f);
}

/// 1-d convenience wrapper.
template <class F>
MinResult min_scan(const std::vector<double>& xs, F&& f) {
    static const std::vector<double> one{0.0};
    return min_scan(xs, one, [&](double x, double) { return f(x); });
}

}  // namespace elastoball::grid
