#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ocproc {

// Worker count comes only from OCPROC_WORKERS (default 1). Results must be
// identical for every worker count: parallel loops hand out disjoint indices
// and each index only touches its own output.
inline unsigned worker_count() {
    if (const char* env = std::getenv("OCPROC_WORKERS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1 && n <= 256) return unsigned(n);
    }
    return 1;
}

// Runs fn(i) for i in [0, n). Work is claimed one index at a time from an
// atomic counter; fn must only write to state owned by index i.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
}

}  // namespace ocproc
