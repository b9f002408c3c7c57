#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace zonefit {

// Thread cap from ZONEFIT_THREADS (0 or unset = auto).
inline unsigned thread_limit() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ZONEFIT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v) < hw ? static_cast<unsigned>(v) : hw;
    }
    return hw;
}

// Runs fn(i) for i in [0, n); each index is executed exactly once. Callers
// must write results into index-addressed slots so the merge order is
// identical to sequential execution.
inline void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned threads = thread_limit();
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace zonefit
