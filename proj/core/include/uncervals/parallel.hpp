#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace uncervals {

// Runs fn(0..n_tasks-1) on up to `threads` workers. Task seeds are derived
// from task indices upstream, so results never depend on the thread count.
inline void parallel_for(std::size_t n_tasks, int threads,
                         const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n_tasks <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n_tasks);
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    std::size_t next = 0;
    std::mutex next_mutex;
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t task;
                {
                    std::lock_guard<std::mutex> lock(next_mutex);
                    if (next >= n_tasks) return;
                    task = next++;
                }
                try {
                    fn(task);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace uncervals
