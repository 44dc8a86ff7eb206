#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qumeas {

// Run body(i) for i in [0, total) on `threads` workers. Work is handed out in
// chunks through an atomic cursor; callers must write results by index so the
// outcome is independent of scheduling. The first exception thrown by any
// worker is rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t total, int threads, F&& body, std::size_t chunk = 16) {
    const int n_workers = threads < 1 ? 1 : threads;
    if (n_workers == 1 || total <= chunk) {
        for (std::size_t i = 0; i < total; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        for (;;) {
            const std::size_t begin = cursor.fetch_add(chunk);
            if (begin >= total || failed.load()) break;
            const std::size_t end = begin + chunk < total ? begin + chunk : total;
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                break;
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qumeas
