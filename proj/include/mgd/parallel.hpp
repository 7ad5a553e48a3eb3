#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace mgd {

// Worker count for embarrassingly parallel scans. MGD_THREADS overrides;
// 0/unset means hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("MGD_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0)
            return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

// Runs fn(i) for i in [0, n). Each index writes only its own output slot,
// so the result is identical to the serial loop regardless of thread count.
inline void parallel_chunks(size_t n, const std::function<void(size_t)>& fn) {
    const unsigned workers = worker_count();
    if (workers <= 1 || n < 64) {
        for (size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    const size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const size_t lo = static_cast<size_t>(w) * chunk;
        if (lo >= n)
            break;
        const size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&fn, lo, hi] {
            for (size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

} // namespace mgd
