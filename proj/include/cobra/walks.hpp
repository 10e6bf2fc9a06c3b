#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/graph.hpp"
#include "cobra/rng.hpp"

namespace cobra {

/// Round count, or std::nullopt when the cap was reached first.
using Rounds = std::optional<std::uint64_t>;

inline constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

/// 64·n³ rounds, saturating.
inline std::uint64_t default_cap(std::size_t n) {
    const double c = 64.0 * static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
    return c >= 1.8e19 ? kNever - 1 : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(c));
}

/// The cobra active set S_t: a bit set for O(1) membership plus the member list for O(|S|)
/// iteration and clearing.
class ActiveSet {
public:
    ActiveSet() = default;
    explicit ActiveSet(std::size_t n) : n_(n), bits_((n + 63) / 64, 0) {}

    ActiveSet(std::size_t n, std::span<const Vertex> vertices, std::uint64_t round = 0)
        : ActiveSet(n) {
        for (Vertex v : vertices) insert(v);
        round_ = round;
    }

    std::size_t universe() const noexcept { return n_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    std::uint64_t round() const noexcept { return round_; }
    void set_round(std::uint64_t r) noexcept { round_ = r; }

    bool contains(Vertex v) const noexcept { return (bits_[v >> 6] >> (v & 63)) & 1U; }

    /// Returns true when v was not yet present.
    bool insert(Vertex v) noexcept {
        auto& word = bits_[v >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (v & 63);
        if (word & mask) return false;
        word |= mask;
        members_.push_back(v);
        return true;
    }

    void clear() noexcept {
        for (Vertex v : members_) bits_[v >> 6] = 0;
        members_.clear();
    }

    /// Members in insertion order.
    std::span<const Vertex> members() const noexcept { return members_; }

    std::vector<Vertex> sorted_members() const {
        std::vector<Vertex> out(members_.begin(), members_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Bit mask of the members; only meaningful for n <= 64.
    std::uint64_t mask() const noexcept { return bits_.empty() ? 0 : bits_[0]; }

    friend bool operator==(const ActiveSet& a, const ActiveSet& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<Vertex> members_;
    std::uint64_t round_ = 0;
};

struct CobraConfig {
    std::size_t k = 2;
    Vertex start = 0;
    std::uint64_t seed = 0;
};

inline void validate(const Graph& g, const CobraConfig& cfg) {
    require(cfg.k >= 1, ErrorKind::InvalidParams, "branching factor k must be >= 1");
    require(cfg.start < g.num_vertices(), ErrorKind::InvalidParams, "start vertex out of range");
}

/// One round: every active vertex sends k pebbles to neighbors drawn uniformly with
/// replacement; pebbles landing on the same vertex coalesce (set union).
inline void cobra_step_into(const Graph& g, const ActiveSet& s, std::size_t k, Rng& rng,
                            ActiveSet& next) {
    next.clear();
    for (Vertex v : s.members()) {
        const auto nb = g.neighbors(v);
        const auto deg = nb.size();
        for (std::size_t j = 0; j < k; ++j) next.insert(nb[rng.below(deg)]);
    }
    next.set_round(s.round() + 1);
}

inline ActiveSet cobra_step(const Graph& g, const ActiveSet& s, std::size_t k, Rng& rng) {
    require(!s.empty(), ErrorKind::InvalidParams, "active set must be nonempty");
    ActiveSet next(g.num_vertices());
    cobra_step_into(g, s, k, rng, next);
    return next;
}

/// First round at which target is active; nullopt on reaching cap.
inline Rounds run_cobra_hitting(const Graph& g, const CobraConfig& cfg, Vertex target,
                                std::uint64_t cap, Rng& rng) {
    validate(g, cfg);
    require(target < g.num_vertices(), ErrorKind::InvalidParams, "target out of range");
    require(cap > 0, ErrorKind::InvalidParams, "cap must be positive");
    if (cfg.start == target) return 0;
    ActiveSet cur(g.num_vertices()), next(g.num_vertices());
    cur.insert(cfg.start);
    for (std::uint64_t t = 1; t <= cap; ++t) {
        cobra_step_into(g, cur, cfg.k, rng, next);
        if (next.contains(target)) return t;
        std::swap(cur, next);
    }
    return std::nullopt;
}

inline Rounds run_cobra_hitting(const Graph& g, const CobraConfig& cfg, Vertex target,
                                std::uint64_t cap) {
    Rng rng(cfg.seed);
    return run_cobra_hitting(g, cfg, target, cap, rng);
}

/// Per-vertex first activation rounds from one run, stopping at cover or cap.
struct CobraRun {
    std::vector<std::uint64_t> first_hit;  // kNever when not reached before the cap
    Rounds cover;
};

inline CobraRun run_cobra_first_hits(const Graph& g, const CobraConfig& cfg, std::uint64_t cap,
                                     Rng& rng) {
    validate(g, cfg);
    const std::size_t n = g.num_vertices();
    CobraRun run;
    run.first_hit.assign(n, kNever);
    run.first_hit[cfg.start] = 0;
    std::size_t visited = 1;
    if (visited == n) {
        run.cover = 0;
        return run;
    }
    ActiveSet cur(n), next(n);
    cur.insert(cfg.start);
    for (std::uint64_t t = 1; t <= cap; ++t) {
        cobra_step_into(g, cur, cfg.k, rng, next);
        for (Vertex v : next.members()) {
            if (run.first_hit[v] == kNever) {
                run.first_hit[v] = t;
                ++visited;
            }
        }
        if (visited == n) {
            run.cover = t;
            return run;
        }
        std::swap(cur, next);
    }
    return run;
}

/// First round T with ∪_{t<=T} S_t = V (the start counts at t = 0).
inline Rounds run_cobra_cover(const Graph& g, const CobraConfig& cfg, std::uint64_t cap, Rng& rng) {
    validate(g, cfg);
    const std::size_t n = g.num_vertices();
    if (n == 1) return 0;
    ActiveSet cur(n), next(n), visited(n);
    cur.insert(cfg.start);
    visited.insert(cfg.start);
    for (std::uint64_t t = 1; t <= cap; ++t) {
        cobra_step_into(g, cur, cfg.k, rng, next);
        for (Vertex v : next.members()) visited.insert(v);
        if (visited.size() == n) return t;
        std::swap(cur, next);
    }
    return std::nullopt;
}

inline Rounds run_cobra_cover(const Graph& g, const CobraConfig& cfg, std::uint64_t cap) {
    Rng rng(cfg.seed);
    return run_cobra_cover(g, cfg, cap, rng);
}

/// Simple random walk hitting time sample; identical in law to the k = 1 cobra walk.
inline Rounds run_srw_hitting(const Graph& g, Vertex start, Vertex target, std::uint64_t cap, Rng& rng) {
    Vertex cur = start;
    for (std::uint64_t t = 0; t < cap; ++t) {
        if (cur == target) return t;
        const auto nb = g.neighbors(cur);
        cur = nb[rng.below(nb.size())];
    }
    return cur == target ? Rounds{cap} : std::nullopt;
}

}  // namespace cobra
