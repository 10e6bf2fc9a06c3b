#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "cobra/rng.hpp"
#include "cobra/stats.hpp"

namespace cobra {

inline std::size_t default_workers() {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, count) on `workers` threads. Work is handed out in fixed-size
/// chunks; callers write results by index so output never depends on the schedule.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    constexpr std::size_t chunk = 16;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (;;) {
                    const std::size_t begin = next.fetch_add(chunk);
                    if (begin >= count) return;
                    const std::size_t end = std::min(count, begin + chunk);
                    for (std::size_t i = begin; i < end; ++i) fn(i);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count);
            }
        });
    }
    pool.clear();
    if (error) std::rethrow_exception(error);
}

struct TrialOptions {
    std::uint64_t trials = 1000;
    std::uint64_t master_seed = 1;
    std::uint64_t cap = 0;
    std::size_t workers = 1;
};

/// One sample per trial; trial i draws from the stream trial_rng(master_seed, i).
template <class TrialFn>
std::vector<std::optional<std::uint64_t>> collect_trials(const TrialOptions& opt, TrialFn&& trial) {
    std::vector<std::optional<std::uint64_t>> out(opt.trials);
    parallel_for(opt.trials, opt.workers, [&](std::size_t i) {
        Rng rng = trial_rng(opt.master_seed, i);
        out[i] = trial(rng, i);
    });
    return out;
}

template <class TrialFn>
SampleStats run_trials(const TrialOptions& opt, TrialFn&& trial) {
    require(opt.trials >= 1, ErrorKind::InvalidParams, "trials must be >= 1");
    const auto samples = collect_trials(opt, std::forward<TrialFn>(trial));
    return summarize(samples, opt.cap);
}

}  // namespace cobra
