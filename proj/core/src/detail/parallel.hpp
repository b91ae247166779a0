#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace hlo::detail {

// Chunked parallel map over [0, n). fn(thread_id, begin, end) must only
// touch disjoint per-index state. threads <= 1 runs inline.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    threads = std::clamp(threads, 1, n > 0 ? n : 1);
    if (threads <= 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, t, begin, end] { fn(t, begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace hlo::detail
