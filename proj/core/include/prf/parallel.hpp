#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace prf {

/// Worker cap: hardware concurrency, clamped by the PRF_THREADS environment
/// variable when set. Always at least 1.
inline size_t worker_count() {
    size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("PRF_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && static_cast<size_t>(cap) < n) n = static_cast<size_t>(cap);
    }
    return n;
}

/// Runs fn(i) for i in [0, n) on up to worker_count() threads.
/// Work items must be independent; callers keep determinism by writing
/// result slot i from item i only. Exceptions propagate from the first
/// failing item (by index).
template <typename F>
void parallel_for(size_t n, F&& fn) {
    if (n == 0) return;
    size_t workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto body = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace prf
