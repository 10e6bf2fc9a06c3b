#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/graph.hpp"
#include "cobra/parallel.hpp"
#include "cobra/rng.hpp"
#include "cobra/stats.hpp"
#include "cobra/walks.hpp"

namespace cobra {

struct PairEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t timeouts = 0;
};

/// All-targets hitting estimates from a set of sources, plus cover statistics.
struct HmaxEstimate {
    double hmax = 0.0;
    Vertex u = 0, v = 0;  // argmax pair
    std::vector<Vertex> sources;
    std::vector<PairEstimate> pairs;  // sources.size() x n, row per source
    std::vector<SampleStats> cover;   // per source
    double cover_mean = 0.0;          // max over sources of the mean cover time
    Vertex cover_source = 0;

    const PairEstimate& pair(std::size_t source_index, Vertex target, std::size_t n) const {
        return pairs[source_index * n + target];
    }
};

struct HmaxOptions {
    std::size_t k = 2;
    std::uint64_t trials = 1000;  // per source
    std::uint64_t seed = 1;
    std::uint64_t cap = 0;        // 0: default_cap(n)
    std::size_t workers = 1;
    std::vector<Vertex> sources;  // empty: all vertices when n <= 64, else a seeded sample of 64
};

inline constexpr std::size_t kAllPairsLimit = 64;

/// One cobra run per trial yields first-hit rounds for every target and the cover time,
/// so every pair from a source shares the same runs.
inline HmaxEstimate estimate_hmax(const Graph& g, const HmaxOptions& opt) {
    const std::size_t n = g.num_vertices();
    require(opt.trials >= 1, ErrorKind::InvalidParams, "trials must be >= 1");
    const std::uint64_t cap = opt.cap ? opt.cap : default_cap(n);
    HmaxEstimate est;
    if (!opt.sources.empty()) {
        est.sources = opt.sources;
    } else {
        est.sources.resize(n);
        std::iota(est.sources.begin(), est.sources.end(), Vertex{0});
        if (n > kAllPairsLimit) {
            Rng rng(stream_seed(opt.seed, ~std::uint64_t{0}));
            for (std::size_t i = 0; i < kAllPairsLimit; ++i)
                std::swap(est.sources[i], est.sources[i + rng.below(n - i)]);
            est.sources.resize(kAllPairsLimit);
        }
    }
    for (Vertex s : est.sources) require(s < n, ErrorKind::InvalidParams, "source out of range");

    est.pairs.resize(est.sources.size() * n);
    std::vector<std::uint64_t> hits(opt.trials * n);
    std::vector<Rounds> covers(opt.trials);
    bool any = false;
    for (std::size_t si = 0; si < est.sources.size(); ++si) {
        const Vertex s = est.sources[si];
        parallel_for(opt.trials, opt.workers, [&](std::size_t t) {
            Rng rng = trial_rng(opt.seed, si * opt.trials + t);
            auto run = run_cobra_first_hits(g, CobraConfig{opt.k, s, 0}, cap, rng);
            std::copy(run.first_hit.begin(), run.first_hit.end(), hits.begin() + static_cast<std::ptrdiff_t>(t * n));
            covers[t] = run.cover;
        });
        for (Vertex v = 0; v < n; ++v) {
            std::vector<double> values;
            values.reserve(opt.trials);
            std::uint64_t timeouts = 0;
            for (std::size_t t = 0; t < opt.trials; ++t) {
                const auto h = hits[t * n + v];
                if (h == kNever) ++timeouts;
                else values.push_back(static_cast<double>(h));
            }
            PairEstimate& pe = est.pairs[si * n + v];
            pe.timeouts = timeouts;
            if (values.empty()) continue;
            const auto st = summarize(values, timeouts, cap);
            pe.mean = st.mean;
            pe.std_error = st.std_error;
            if (!any || pe.mean > est.hmax) {
                est.hmax = pe.mean;
                est.u = s;
                est.v = v;
                any = true;
            }
        }
        est.cover.push_back(summarize(covers, cap));
        if (si == 0 || est.cover.back().mean > est.cover_mean) {
            est.cover_mean = est.cover.back().mean;
            est.cover_source = s;
        }
    }
    return est;
}

struct MatthewsCheck {
    double cover_mean = 0.0;
    double hmax = 0.0;
    double ratio = 0.0;  // cover / (h_max ln n)
    HmaxEstimate estimate;
};

inline MatthewsCheck matthews_check(const Graph& g, const HmaxOptions& opt) {
    require(g.num_vertices() >= 2, ErrorKind::InvalidParams, "need at least two vertices");
    MatthewsCheck m;
    m.estimate = estimate_hmax(g, opt);
    m.cover_mean = m.estimate.cover_mean;
    m.hmax = m.estimate.hmax;
    m.ratio = m.cover_mean / (m.hmax * std::log(static_cast<double>(g.num_vertices())));
    return m;
}

enum class FitTransform { LogLog, ValueVsLogSquared, ValueVsNLogN };

inline std::string to_string(FitTransform t) {
    switch (t) {
        case FitTransform::LogLog: return "log-log";
        case FitTransform::ValueVsLogSquared: return "value-vs-log2";
        case FitTransform::ValueVsNLogN: return "value-vs-nlogn";
    }
    return "?";
}

struct ScalingPoint {
    double size = 0.0;
    double value = 0.0;
};

struct ScalingFit {
    std::vector<ScalingPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    FitTransform transform = FitTransform::LogLog;
};

/// Ordinary least squares of the transformed points.
inline ScalingFit fit_scaling(std::span<const ScalingPoint> points, FitTransform transform) {
    require(points.size() >= 4, ErrorKind::InsufficientPoints,
            "scaling fit needs >= 4 points, got " + std::to_string(points.size()));
    std::vector<double> xs, ys;
    for (const auto& p : points) {
        require(p.size > 0 && p.value > 0, ErrorKind::InvalidParams, "scaling fit needs positive sizes and values");
        const double ln = std::log(p.size);
        switch (transform) {
            case FitTransform::LogLog:
                xs.push_back(ln);
                ys.push_back(std::log(p.value));
                break;
            case FitTransform::ValueVsLogSquared:
                xs.push_back(ln * ln);
                ys.push_back(p.value);
                break;
            case FitTransform::ValueVsNLogN:
                xs.push_back(p.size * ln);
                ys.push_back(p.value);
                break;
        }
    }
    const double m = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    require(sxx > 0, ErrorKind::InsufficientPoints, "scaling fit needs at least two distinct sizes");
    ScalingFit f;
    f.points.assign(points.begin(), points.end());
    f.transform = transform;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (f.intercept + f.slope * xs[i]);
        ssr += r * r;
    }
    // a flat series fits a flat line perfectly
    f.r_squared = syy > 0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    return f;
}

inline ScalingFit fit_scaling(std::initializer_list<ScalingPoint> points, FitTransform transform) {
    return fit_scaling(std::span<const ScalingPoint>(points.begin(), points.size()), transform);
}

}  // namespace cobra
