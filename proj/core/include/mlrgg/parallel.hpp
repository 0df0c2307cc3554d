#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace mlrgg {

inline unsigned default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Runs fn(i) for every i in [0, count). Work is split into contiguous blocks,
// one per worker. Results must be written to slots indexed by i only; under
// that discipline the outcome is identical for any worker count.
inline void parallel_for(std::uint64_t count, unsigned workers,
                         const std::function<void(std::uint64_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::uint64_t nthreads =
        std::min<std::uint64_t>(workers, count);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::uint64_t t = 0; t < nthreads; ++t) {
        const std::uint64_t lo = count * t / nthreads;
        const std::uint64_t hi = count * (t + 1) / nthreads;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::uint64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> guard(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mlrgg
