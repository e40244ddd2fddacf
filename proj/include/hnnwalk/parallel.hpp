#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace hnnwalk {

// Runs body(0..count-1) on a small worker pool. Replica determinism comes
// from per-index seed substreams, so the pool size never changes results.
template <typename Body>
void parallel_replicas(std::int64_t count, int threads, Body&& body) {
    if (threads <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    const auto workers = static_cast<int>(std::min<std::int64_t>(threads, count));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::int64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace hnnwalk
