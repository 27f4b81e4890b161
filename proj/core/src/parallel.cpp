#include "opss/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace opss {

namespace {
std::atomic<int> g_default_workers{0};
}

int default_workers() {
    const int configured = g_default_workers.load();
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_default_workers(int workers) { g_default_workers.store(workers); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int workers) {
    if (n == 0) return;
    int k = workers > 0 ? workers : default_workers();
    k = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 1)), n));

    if (k == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_chunk = n;

    auto run_chunk = [&](int w) {
        const std::size_t lo = n * static_cast<std::size_t>(w) / static_cast<std::size_t>(k);
        const std::size_t hi = n * static_cast<std::size_t>(w + 1) / static_cast<std::size_t>(k);
        try {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error || lo < first_error_chunk) {
                first_error = std::current_exception();
                first_error_chunk = lo;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(k) - 1);
    for (int w = 1; w < k; ++w) pool.emplace_back(run_chunk, w);
    run_chunk(0);
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

} // namespace opss
