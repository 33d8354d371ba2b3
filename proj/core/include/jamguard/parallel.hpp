#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace jamguard {

// Worker count for trial loops: JAMGUARD_THREADS caps it, otherwise the
// hardware concurrency is used. Always >= 1.
unsigned worker_count();

namespace detail {
void run_blocks(std::uint64_t block_count, unsigned workers,
                const std::function<void(std::uint64_t)>& run_block);
}

// Deterministic parallel trial loop. Trials are split into fixed-size blocks;
// each block accumulates its own Partial in trial order and blocks are merged
// in block order, so the result is bitwise identical for any worker count.
//
// Partial: default-constructible, with merge(const Partial&).
// TrialFn:  void(uint64_t trial_index, Partial& acc).
template <typename Partial, typename TrialFn>
Partial run_trials(std::uint64_t trials, TrialFn&& trial_fn, unsigned workers = worker_count(),
                   std::uint64_t block_size = 4096) {
    if (trials == 0) return Partial{};
    const std::uint64_t blocks = (trials + block_size - 1) / block_size;
    std::vector<Partial> partials(blocks);
    detail::run_blocks(blocks, workers, [&](std::uint64_t b) {
        const std::uint64_t begin = b * block_size;
        const std::uint64_t end = std::min(trials, begin + block_size);
        Partial& acc = partials[b];
        for (std::uint64_t t = begin; t < end; ++t) trial_fn(t, acc);
    });
    Partial result;
    for (auto& p : partials) result.merge(p);
    return result;
}

// Common accumulator: event counting with a known trial count.
struct CountAccumulator {
    std::uint64_t hits = 0;
    void merge(const CountAccumulator& o) { hits += o.hits; }
};

// Common accumulator: running sum and sum of squares for mean/stderr.
struct MeanAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t n = 0;
    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    void merge(const MeanAccumulator& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
        n += o.n;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    // Standard error of the mean.
    double stderr_mean() const;
};

}  // namespace jamguard
