#include "elastoball/grid_scan.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace elastoball::grid {

namespace {
std::atomic<bool> g_threads{
#if defined(_OPENMP)
    true
#else
    false
#endif
};
}  // namespace

bool threads_enabled() { return g_threads.load(std::memory_order_relaxed); }

void set_threads_enabled(bool on) {
#if !defined(_OPENMP)
    on = false;
#endif
    g_threads.store(on, std::memory_order_relaxed);
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> v(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + h * static_cast<double>(i);
    v.back() = b;
    return v;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("logspace: bounds must be positive");
    std::vector<double> v = linspace(std::log(a), std::log(b), n);
    for (auto& x : v) x = std::exp(x);
    v.front() = a;
    v.back() = b;
    return v;
}

}  // namespace elastoball::grid
