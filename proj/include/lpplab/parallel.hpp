#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lpp {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Replicas are partitioned into fixed-size blocks and workers claim whole
// blocks. Block partials are reduced in block order afterwards, so results
// are bit-identical for every worker count.
inline constexpr std::uint64_t kReplicaBlock = 1024;

// body(block_first_replica, block_end_replica, partial&) runs on a worker
// thread; Partial must be default-constructible and mergeable via
// merge(Partial&). Replica indices are global.
template <class Partial, class Body>
Partial run_replica_blocks(std::uint64_t reps, unsigned threads, Body&& body,
                           std::uint64_t block_size = kReplicaBlock) {
    const std::uint64_t nblocks = (reps + block_size - 1) / block_size;
    std::vector<Partial> partials(static_cast<std::size_t>(nblocks));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        try {
            for (;;) {
                const std::uint64_t blk = next.fetch_add(1, std::memory_order_relaxed);
                if (blk >= nblocks) return;
                const std::uint64_t begin = blk * block_size;
                const std::uint64_t end = std::min(reps, begin + block_size);
                body(begin, end, partials[static_cast<std::size_t>(blk)]);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    const unsigned nthreads = std::min<std::uint64_t>(resolve_threads(threads), nblocks ? nblocks : 1);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    Partial total{};
    for (const Partial& p : partials) total.merge(p);
    return total;
}

}  // namespace lpp
