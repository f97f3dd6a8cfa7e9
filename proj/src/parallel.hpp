#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace casurf::detail {

inline thread_local bool in_worker = false;

/// Runs body(k) for k in [0, n) on a few threads. body must not throw and
/// must only write to slot k of its outputs. Nested calls run inline.
template <class Body>
void parallel_for(std::size_t n, Body body) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1 || in_worker) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            in_worker = true;
            for (std::size_t k = w; k < n; k += workers) body(k);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace casurf::detail
