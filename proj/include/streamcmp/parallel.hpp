#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace streamcmp {

// Work is split into a fixed number of blocks regardless of the thread
// count, so per-block partial results (and any reduction over them in block
// order) are identical on every machine.
inline constexpr std::size_t kParallelBlocks = 32;

/// Runs `body(block, begin, end)` over [0, n) split into kParallelBlocks
/// contiguous ranges, using up to hardware_concurrency threads.
template <typename Body>
void for_each_block(std::size_t n, Body&& body) {
    const std::size_t blocks = std::min(kParallelBlocks, std::max<std::size_t>(n, 1));
    auto range = [&](std::size_t b) {
        return std::pair{n * b / blocks, n * (b + 1) / blocks};
    };
    const std::size_t threads =
        std::min<std::size_t>(blocks, std::max(1u, std::thread::hardware_concurrency()));
    if (threads <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            auto [lo, hi] = range(b);
            body(b, lo, hi);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t b = t; b < blocks; b += threads) {
                auto [lo, hi] = range(b);
                body(b, lo, hi);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace streamcmp
