#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "loccmc/random.hpp"

namespace loccmc {

/// Runs `total` Monte Carlo trials split into chunks of `chunk_size` on
/// `workers` threads.
///
/// Chunk i gets a fresh RandomStream(seed, i) and a fresh accumulator from
/// `make()`; `fill(rng, trials, acc)` runs the chunk. Completed chunks are
/// handed to `merge(acc)` strictly in chunk order, so the merged result is
/// bit-identical for any worker count. The first exception thrown by a
/// chunk is rethrown after all workers stop.
template <class Make, class Fill, class Merge>
void run_chunked(std::uint64_t total, std::uint64_t chunk_size, std::uint64_t seed, int workers,
                 Make make, Fill fill, Merge merge) {
    using Acc = decltype(make());
    const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mutex;
    std::exception_ptr error;
    std::map<std::uint64_t, Acc> pending;
    std::uint64_t next_to_merge = 0;

    auto work = [&] {
        for (;;) {
            const std::uint64_t idx = next.fetch_add(1);
            if (idx >= chunks || failed.load()) return;
            try {
                Acc acc = make();
                RandomStream rng(seed, idx);
                const std::uint64_t begin = idx * chunk_size;
                fill(rng, std::min(chunk_size, total - begin), acc);
                std::lock_guard lock(mutex);
                pending.emplace(idx, std::move(acc));
                for (auto it = pending.find(next_to_merge); it != pending.end();
                     it = pending.find(next_to_merge)) {
                    merge(it->second);
                    pending.erase(it);
                    ++next_to_merge;
                }
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    const int threads = static_cast<int>(
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(workers, 1)), chunks)));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace loccmc
