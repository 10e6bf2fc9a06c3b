#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/graph.hpp"
#include "cobra/parallel.hpp"
#include "cobra/rng.hpp"
#include "cobra/stats.hpp"
#include "cobra/walks.hpp"

namespace cobra {

/// Ordered pebbles: positions[i] is the vertex of the pebble with priority i (lower first).
struct PebbleConfig {
    std::vector<Vertex> positions;
    std::uint64_t round = 0;
    bool lazy = true;
};

struct WaltConfig {
    double delta = 0.5;
    Vertex start = 0;
    std::vector<Vertex> placement;  // explicit placement; overrides delta/start when nonempty
    std::uint64_t seed = 0;
    bool lazy = true;
};

inline std::size_t pebble_count(double delta, std::size_t n) {
    require(delta > 0.0 && delta <= 0.5, ErrorKind::InvalidParams, "delta must lie in (0, 1/2]");
    // guard against 0.5 * 6 landing a hair above 3
    return static_cast<std::size_t>(std::ceil(delta * static_cast<double>(n) - 1e-9));
}

inline PebbleConfig initial_pebbles(const Graph& g, const WaltConfig& cfg) {
    PebbleConfig p;
    p.lazy = cfg.lazy;
    if (!cfg.placement.empty()) {
        for (Vertex v : cfg.placement)
            require(v < g.num_vertices(), ErrorKind::InvalidParams, "pebble placement out of range");
        p.positions = cfg.placement;
    } else {
        require(cfg.start < g.num_vertices(), ErrorKind::InvalidParams, "start vertex out of range");
        p.positions.assign(pebble_count(cfg.delta, g.num_vertices()), cfg.start);
    }
    require(!p.positions.empty(), ErrorKind::InvalidParams, "need at least one pebble");
    return p;
}

/// Message when the conductance envelope does not apply to g, empty otherwise.
inline std::optional<std::string> regularity_warning(const Graph& g) {
    if (g.is_regular()) return std::nullopt;
    return "graph " + g.name() + " is not regular; W_alt runs but the conductance bound does not apply";
}

/// Non-lazy pebble mover with reusable per-vertex scratch.
///
/// Pebbles are processed in priority order. At each vertex the first two arrivals pick
/// independent uniform neighbors and every later one copies one of those two by a fair
/// coin. Groups of size <= 2 therefore move independently and crowded groups end on at
/// most two vertices.
class WaltMover {
public:
    explicit WaltMover(std::size_t n) : seen_(n, 0), first_(n), second_(n) {}

    void move(const Graph& g, std::vector<Vertex>& positions, Rng& rng) {
        for (auto& pos : positions) {
            const Vertex v = pos;
            const auto nb = g.neighbors(v);
            switch (seen_[v]++) {
                case 0:
                    touched_.push_back(v);
                    first_[v] = nb[rng.below(nb.size())];
                    pos = first_[v];
                    break;
                case 1:
                    second_[v] = nb[rng.below(nb.size())];
                    pos = second_[v];
                    break;
                default:
                    pos = rng.coin() ? first_[v] : second_[v];
                    break;
            }
        }
        for (Vertex v : touched_) seen_[v] = 0;
        touched_.clear();
    }

private:
    std::vector<std::uint32_t> seen_;
    std::vector<Vertex> first_, second_;
    std::vector<Vertex> touched_;
};

inline PebbleConfig walt_step(const Graph& g, PebbleConfig p, Rng& rng) {
    ++p.round;
    if (p.lazy && rng.coin()) return p;
    WaltMover mover(g.num_vertices());
    mover.move(g, p.positions, rng);
    return p;
}

/// First round by which every vertex has held a pebble; the initial placement counts.
inline Rounds run_walt_cover(const Graph& g, const WaltConfig& cfg, std::uint64_t cap, Rng& rng) {
    PebbleConfig p = initial_pebbles(g, cfg);
    const std::size_t n = g.num_vertices();
    ActiveSet visited(n);
    for (Vertex v : p.positions) visited.insert(v);
    if (visited.size() == n) return 0;
    WaltMover mover(n);
    for (std::uint64_t t = 1; t <= cap; ++t) {
        if (p.lazy && rng.coin()) continue;
        mover.move(g, p.positions, rng);
        for (Vertex v : p.positions) visited.insert(v);
        if (visited.size() == n) return t;
    }
    return std::nullopt;
}

inline Rounds run_walt_cover(const Graph& g, const WaltConfig& cfg, std::uint64_t cap) {
    Rng rng(cfg.seed);
    return run_walt_cover(g, cfg, cap, rng);
}

struct DominanceResult {
    SampleStats cobra;
    SampleStats walt;
    /// mean cobra cover minus mean W_alt cover, in pooled standard errors
    double z() const {
        const double se = pooled_std_error(cobra, walt);
        return se > 0 ? (cobra.mean - walt.mean) / se : (cobra.mean - walt.mean > 0 ? 1e300 : 0.0);
    }
};

/// Cover times of the 2-cobra walk and of W_alt (delta = 1/2, every pebble stacked on
/// start), from independent stream families of the same master seed.
inline DominanceResult dominance_trial(const Graph& g, Vertex start, const TrialOptions& opt) {
    const std::uint64_t cap = opt.cap ? opt.cap : default_cap(g.num_vertices());
    TrialOptions o = opt;
    o.cap = cap;
    DominanceResult r;
    o.master_seed = stream_seed(opt.master_seed, 0);
    r.cobra = run_trials(o, [&](Rng& rng, std::size_t) {
        return run_cobra_cover(g, CobraConfig{2, start, 0}, cap, rng);
    });
    o.master_seed = stream_seed(opt.master_seed, 1);
    WaltConfig wc;
    wc.start = start;
    r.walt = run_trials(o, [&](Rng& rng, std::size_t) { return run_walt_cover(g, wc, cap, rng); });
    return r;
}

/// Two priority-ordered pebbles (i before j) under the W_alt rules with the global lazy coin.
struct PebblePair {
    Vertex i = 0;
    Vertex j = 0;
};

inline PebblePair pair_step(const Graph& g, PebblePair s, bool lazy, Rng& rng) {
    if (lazy && rng.coin()) return s;
    const auto ni = g.neighbors(s.i);
    const Vertex di = ni[rng.below(ni.size())];
    Vertex dj;
    if (s.i == s.j && rng.coin()) {
        dj = di;
    } else {
        const auto nj = g.neighbors(s.j);
        dj = nj[rng.below(nj.size())];
    }
    return {di, dj};
}

struct TensorOccupancy {
    std::size_t n = 0;
    std::uint64_t steps = 0;
    std::uint64_t trials = 0;
    double diag_mass = 0.0;
    std::vector<double> per_state;  // index i * n + j

    double at(Vertex i, Vertex j) const { return per_state[static_cast<std::size_t>(i) * n + j]; }
};

inline constexpr std::size_t kTensorStateLimit = 1u << 22;

/// Occupancy of the pebble pair after `steps` rounds, over independent trials.
inline TensorOccupancy tensor_pair_walk(const Graph& g, std::uint64_t steps, PebblePair start,
                                        const TrialOptions& opt, bool lazy = true) {
    require(g.is_regular(), ErrorKind::RegularityRequired, "tensor pair walk needs a regular graph");
    const std::size_t n = g.num_vertices();
    require(n * n <= kTensorStateLimit, ErrorKind::TooLarge, "too many pair states");
    require(start.i < n && start.j < n, ErrorKind::InvalidParams, "start pair out of range");
    require(opt.trials >= 1, ErrorKind::InvalidParams, "trials must be >= 1");
    std::vector<std::uint32_t> final_state(opt.trials);
    parallel_for(opt.trials, opt.workers, [&](std::size_t t) {
        Rng rng = trial_rng(opt.master_seed, t);
        PebblePair s = start;
        for (std::uint64_t k = 0; k < steps; ++k) s = pair_step(g, s, lazy, rng);
        final_state[t] = static_cast<std::uint32_t>(s.i * n + s.j);
    });
    TensorOccupancy occ;
    occ.n = n;
    occ.steps = steps;
    occ.trials = opt.trials;
    std::vector<std::uint64_t> counts(n * n, 0);
    for (auto s : final_state) ++counts[s];
    occ.per_state.resize(n * n);
    for (std::size_t s = 0; s < n * n; ++s)
        occ.per_state[s] = static_cast<double>(counts[s]) / static_cast<double>(opt.trials);
    for (std::size_t v = 0; v < n; ++v) occ.diag_mass += occ.per_state[v * n + v];
    return occ;
}

/// Stationary law of the pair chain on a regular graph: 2/(n²+n) on co-located states and
/// 1/(n²+n) elsewhere.
inline std::vector<double> tensor_stationary(std::size_t n) {
    const double z = static_cast<double>(n) * static_cast<double>(n + 1);
    std::vector<double> pi(n * n, 1.0 / z);
    for (std::size_t v = 0; v < n; ++v) pi[v * n + v] = 2.0 / z;
    return pi;
}

/// ⌈32 d⁴ / Φ² · (ln(n² + n) + 4 ln(n²))⌉
inline std::uint64_t epoch_length(double phi, std::size_t d, std::size_t n) {
    require(phi > 0.0 && phi <= 1.0, ErrorKind::InvalidParams, "phi must lie in (0, 1]");
    require(d >= 1, ErrorKind::InvalidParams, "degree must be >= 1");
    require(n >= 2, ErrorKind::InvalidParams, "n must be >= 2");
    const double dd = static_cast<double>(d), nn = static_cast<double>(n);
    const double s = 32.0 * dd * dd * dd * dd / (phi * phi) *
                     (std::log(nn * nn + nn) + 4.0 * std::log(nn * nn));
    require(s < 1.8e19, ErrorKind::InvalidParams, "epoch length overflows 64 bits");
    return static_cast<std::uint64_t>(std::ceil(s));
}

/// Σ_x (p̂(x) − π(x))² / π(x)
inline double chi_square_distance(std::span<const double> empirical, std::span<const double> pi) {
    require(empirical.size() == pi.size(), ErrorKind::SupportMismatch,
            "distributions have different supports");
    double s = 0.0;
    for (std::size_t x = 0; x < pi.size(); ++x) {
        require(pi[x] > 0.0, ErrorKind::SupportMismatch, "reference distribution must be positive");
        const double diff = empirical[x] - pi[x];
        s += diff * diff / pi[x];
    }
    return s;
}

inline double total_variation(std::span<const double> p, std::span<const double> q) {
    require(p.size() == q.size(), ErrorKind::SupportMismatch, "distributions have different supports");
    double s = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) s += std::abs(p[x] - q[x]);
    return s / 2.0;
}

}  // namespace cobra
