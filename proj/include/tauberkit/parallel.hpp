#pragma once

#include <cstdlib>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tauberkit {

// Thread budget: explicit request wins, else TAUBERKIT_THREADS, else one
// thread per core. 0 means "auto" everywhere.
inline unsigned thread_budget(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TAUBERKIT_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static block partition of [0, n). Each index is processed by exactly one
// thread and fn(i) must not touch state shared with other indices, so the
// result is bit-identical to a sequential loop.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    unsigned t = thread_budget(threads);
    if (t <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (t > n) t = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::size_t chunk = (n + t - 1) / t;
    for (unsigned k = 0; k < t; ++k) {
        std::size_t lo = k * chunk;
        std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn, &first_error, &error_mutex] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace tauberkit
