#pragma once
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dcergm {

// Run fn(i) for i in [0, count) on up to n_threads workers pulling from a
// shared counter. fn must derive any randomness from i, not from the worker,
// so the result is independent of the schedule.
inline void parallel_for(std::size_t count, unsigned n_threads, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (n_threads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(n_threads, count));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr eptr;
    std::mutex eptr_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(i);
                } catch (...) {
                    failed.store(true);
                    std::lock_guard<std::mutex> lk(eptr_mutex);
                    if (!eptr) eptr = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (eptr) std::rethrow_exception(eptr);
}

inline unsigned default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

} // namespace dcergm
