#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace rfprog {

// Global worker count used by the parallel loops below. 0 = hardware default.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs body(i) for i in [0, slices). Each slice writes only its own output
// slot, and callers combine slots in slice order afterwards, so results do
// not depend on the worker count.
template <typename Body>
void parallel_slices(std::size_t slices, Body&& body) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(thread_count(), slices));
    if (workers <= 1) {
        for (std::size_t i = 0; i < slices; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
                if (i >= slices) return;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace rfprog
