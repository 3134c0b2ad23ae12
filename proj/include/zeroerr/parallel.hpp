#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace zeroerr {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work is
/// claimed from a shared counter, so callers must write results by index and
/// fold them afterwards. The exception of the lowest failing index is
/// rethrown.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)> & body)
{
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_at = count;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_at) {
                    failed_at = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto & th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

/// Thread count from ZEROERR_THREADS, else `fallback`.
inline std::size_t threads_from_env(std::size_t fallback = 1)
{
    if (const char * s = std::getenv("ZEROERR_THREADS")) {
        char * end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return fallback;
}

} // namespace zeroerr
