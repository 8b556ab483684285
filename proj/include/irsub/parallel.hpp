#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace irsub {

/// Default worker count: IRSUB_THREADS if set, else hardware concurrency.
unsigned default_threads();

/// Runs body(index, worker) for index in [0, count) on up to `threads`
/// workers. Work is claimed dynamically, so callers must make results depend
/// only on `index` (write into per-index slots or per-worker accumulators
/// that are merged order-independently). The first exception is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    if (threads == 0) threads = 1;
    if (threads > count) threads = static_cast<unsigned>(count == 0 ? 1 : count);
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i, 0u);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) body(i, w);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace irsub
