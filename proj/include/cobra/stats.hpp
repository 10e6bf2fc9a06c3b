#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cobra/error.hpp"

namespace cobra {

/// Summary of a time-valued Monte Carlo sample. Timeouts are counted but excluded from the
/// moments and quantiles.
struct SampleStats {
    std::uint64_t trials = 0;
    std::uint64_t timeouts = 0;
    std::uint64_t cap = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double std_error = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double p99 = 0.0;
    double max = 0.0;

    std::uint64_t completed() const noexcept { return trials - timeouts; }
    double ci_low(double z = 3.0) const noexcept { return mean - z * std_error; }
    double ci_high(double z = 3.0) const noexcept { return mean + z * std_error; }

    friend bool operator==(const SampleStats&, const SampleStats&) = default;
};

/// Nearest-rank quantile of an ascending sample.
inline double nearest_rank(std::span<const double> sorted, double q) {
    if (sorted.empty()) return 0.0;
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

inline SampleStats summarize(std::span<const double> values, std::uint64_t timeouts, std::uint64_t cap) {
    SampleStats s;
    s.trials = values.size() + timeouts;
    s.timeouts = timeouts;
    s.cap = cap;
    require(!values.empty(), ErrorKind::AllTimedOut,
            "all " + std::to_string(s.trials) + " trials timed out at cap " + std::to_string(cap));
    // accumulate in index order so the result never depends on scheduling
    long double sum = 0.0L;
    for (double v : values) sum += v;
    const long double mean = sum / static_cast<long double>(values.size());
    long double ss = 0.0L;
    for (double v : values) ss += (v - mean) * (v - mean);
    s.mean = static_cast<double>(mean);
    s.stddev = values.size() > 1 ? static_cast<double>(std::sqrt(ss / static_cast<long double>(values.size() - 1))) : 0.0;
    s.std_error = s.stddev / std::sqrt(static_cast<double>(values.size()));
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    s.p50 = nearest_rank(sorted, 0.50);
    s.p90 = nearest_rank(sorted, 0.90);
    s.p99 = nearest_rank(sorted, 0.99);
    s.max = sorted.back();
    return s;
}

inline SampleStats summarize(std::span<const std::optional<std::uint64_t>> samples, std::uint64_t cap) {
    std::vector<double> values;
    values.reserve(samples.size());
    std::uint64_t timeouts = 0;
    for (const auto& r : samples) {
        if (r) values.push_back(static_cast<double>(*r));
        else ++timeouts;
    }
    return summarize(values, timeouts, cap);
}

/// Pooled standard error of a difference of two independent means.
inline double pooled_std_error(const SampleStats& a, const SampleStats& b) {
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

}  // namespace cobra
