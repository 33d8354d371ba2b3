#include "jamguard/parallel.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace jamguard {

unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("JAMGUARD_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<unsigned>(std::min<long>(v, 1024));
    }
    return hw;
}

namespace detail {

void run_blocks(std::uint64_t block_count, unsigned workers,
                const std::function<void(std::uint64_t)>& run_block) {
    if (workers <= 1 || block_count <= 1) {
        for (std::uint64_t b = 0; b < block_count; ++b) run_block(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= block_count || failed.load(std::memory_order_relaxed)) return;
            try {
                run_block(b);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(workers, block_count));
    std::vector<std::thread> pool;
    pool.reserve(n - 1);
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

double MeanAccumulator::stderr_mean() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    double var = (sum_sq - sum * sum / nn) / (nn - 1.0);
    if (var < 0.0) var = 0.0;
    return std::sqrt(var / nn);
}

}  // namespace jamguard
