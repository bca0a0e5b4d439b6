#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace kummer {

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to `jobs` threads
/// and rethrows the first exception any chunk raised.
inline void parallel_chunks(std::uint64_t n, unsigned jobs,
                            const std::function<void(std::uint64_t, std::uint64_t, unsigned)> &body) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(n, 1024))));
    if (jobs <= 1 || n < 2) {
        body(0, n, 0);
        return;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    const std::uint64_t chunk = (n + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        const std::uint64_t lo = w * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi, w] {
            try {
                if (lo < hi)
                    body(lo, hi, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace kummer
