#ifndef CURVEAVG_PARALLEL_HPP
#define CURVEAVG_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace curveavg {

/// Runs fn(i) for i in [0, n) across workers. Chunk boundaries depend only on
/// n (never on scheduling), so writers indexed by i produce identical output
/// on every run.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    size_t workers = std::min<size_t>(hw ? hw : 1, n);
    if (workers <= 1 || n < 64) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            for (size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

/// Deterministic sum reduction: per-slot values are accumulated in index
/// order by fixed-size chunks regardless of how many threads produced them.
inline double chunked_sum(const std::vector<double>& values) {
    const size_t chunk = 1024;
    double total = 0.0;
    for (size_t base = 0; base < values.size(); base += chunk) {
        double part = 0.0;
        size_t end = std::min(values.size(), base + chunk);
        for (size_t i = base; i < end; ++i) part += values[i];
        total += part;
    }
    return total;
}

}  // namespace curveavg

#endif
