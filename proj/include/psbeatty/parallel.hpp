#ifndef PSBEATTY_PARALLEL_HPP
#define PSBEATTY_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace psb {

// Number of workers; PSBEATTY_THREADS caps it.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PSBEATTY_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(v));
        } catch (...) {
        }
    }
    return hw;
}

// Runs task(i) for i in [0, n_tasks). Tasks are pulled from a shared counter,
// so the assignment of tasks to threads is nondeterministic; callers write
// results into per-task slots and reduce in index order. The exception of the
// lowest-index failing task is rethrown.
template <class Task>
void parallel_for(std::size_t n_tasks, Task&& task) {
    if (n_tasks == 0) return;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(worker_count(), n_tasks));
    std::vector<std::exception_ptr> errors(n_tasks);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= n_tasks || failed.load()) return;
                    try {
                        task(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                        failed.store(true);
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace psb

#endif  // PSBEATTY_PARALLEL_HPP
