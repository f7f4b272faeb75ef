#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace bergman {

/// Worker count: BERGMAN_NUM_THREADS when set (>= 1), otherwise the hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("BERGMAN_NUM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs task(i) for i in [0, count) on a small pool. Tasks write to their own
/// slots; callers reduce afterwards in index order so results do not depend on scheduling.
template <typename Task>
void parallel_for(std::size_t count, Task&& task) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < count; i = next++) task(i);
            } catch (...) {
                errors[w] = std::current_exception();
                next = count;
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace bergman
