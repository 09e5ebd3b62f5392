#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace seccalc {

// worker count: SECCALC_THREADS env var, else hardware concurrency
inline int default_thread_count() {
    if (const char* env = std::getenv("SECCALC_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? (int)hc : 1;
}

// Runs fn(i) for i in [0, n).  Items must be independent and write only to
// their own pre-sized output slots, which keeps results identical for every
// worker count.  The first exception wins and is rethrown after the join.
template <class Fn>
void parallel_for(long n, Fn&& fn, int threads = 0) {
    if (n <= 0) return;
    if (threads <= 0) threads = default_thread_count();
    threads = (int)std::min<long>(threads, n);
    if (threads <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error = nullptr;
    auto worker = [&]() {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve((size_t)threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace seccalc
