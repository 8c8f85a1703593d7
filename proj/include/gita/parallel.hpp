// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gita {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first exception
/// thrown by any task is rethrown on the calling thread after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        const auto n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
        workers.reserve(n);
        for (unsigned w = 0; w < n; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < count && !failed; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        failed = true;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace gita
