#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/rng.hpp"

namespace cobra {

/// Single tracked pebble of a 2-cobra walk on [0, side]^d, observed through its
/// per-dimension distances to a fixed target.
struct TrackedGridState {
    std::vector<std::int64_t> position;
    std::vector<std::int64_t> target;

    std::size_t dims() const noexcept { return position.size(); }
    std::int64_t z(std::size_t i) const noexcept { return std::llabs(position[i] - target[i]); }
    std::vector<std::int64_t> zs() const {
        std::vector<std::int64_t> out(dims());
        for (std::size_t i = 0; i < dims(); ++i) out[i] = z(i);
        return out;
    }
    std::int64_t distance() const noexcept {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < dims(); ++i) s += z(i);
        return s;
    }
};

struct GridParams {
    std::size_t d = 2;
    std::int64_t side = 0;
};

/// How to pick between the two clones when they move in different dimensions and exactly
/// one of those dimensions is already matched (z = 0).
enum class TrackPolicy {
    /// Always keep the clone moving in the unmatched dimension.
    PreferUnmatchedDimension,
    /// Keep the unmatched-dimension clone only if it gets closer; otherwise keep the clone
    /// that leaves the matched dimension.
    PreferLeavingAlignment,
};

struct GridMove {
    std::size_t dim = 0;
    int dir = 0;  // +1 or -1
};

inline void validate(const GridParams& p, const TrackedGridState& s) {
    require(p.d >= 1 && p.side >= 1, ErrorKind::InvalidParams, "grid needs d >= 1 and side >= 1");
    require(s.position.size() == p.d && s.target.size() == p.d, ErrorKind::InvalidParams,
            "tracked state dimension mismatch");
    for (std::size_t i = 0; i < p.d; ++i) {
        require(s.position[i] >= 0 && s.position[i] <= p.side && s.target[i] >= 0 &&
                    s.target[i] <= p.side,
                ErrorKind::InvalidParams, "tracked state outside the grid");
    }
}

/// Uniform neighbor move of a grid vertex; boundary vertices lack the out-of-range moves.
inline GridMove random_grid_move(const GridParams& p, const std::vector<std::int64_t>& pos, Rng& rng) {
    std::size_t options = 0;
    for (std::size_t i = 0; i < p.d; ++i) options += (pos[i] > 0) + (pos[i] < p.side);
    auto pick = rng.below(options);
    for (std::size_t i = 0; i < p.d; ++i) {
        if (pos[i] > 0) {
            if (pick == 0) return {i, -1};
            --pick;
        }
        if (pos[i] < p.side) {
            if (pick == 0) return {i, +1};
            --pick;
        }
    }
    return {0, 0};  // unreachable for side >= 1
}

/// Whether the observer keeps clone a over clone b. `coin` is called only to break ties.
template <class Coin>
bool keep_first_clone(const TrackedGridState& s, const GridMove& a, const GridMove& b, TrackPolicy policy,
                      Coin&& coin) {
    auto closer = [&](const GridMove& m) {
        const auto before = s.z(m.dim);
        const auto after = std::llabs(s.position[m.dim] + m.dir - s.target[m.dim]);
        return after < before;
    };
    const bool ca = closer(a), cb = closer(b);
    if (a.dim == b.dim) return (ca != cb) ? ca : coin();
    const bool za = s.z(a.dim) == 0, zb = s.z(b.dim) == 0;
    if (za != zb) {
        // exactly one clone moves in a matched dimension
        const bool a_unmatched = !za;
        const bool unmatched_closer = a_unmatched ? ca : cb;
        if (policy == TrackPolicy::PreferUnmatchedDimension || unmatched_closer) return a_unmatched;
        return !a_unmatched;
    }
    if (za) return coin();
    return (ca != cb) ? ca : coin();
}

/// One round of the tracked-pebble observer: the tracked pebble clones into two, each clone
/// makes a uniform neighbor move, and the selection policy keeps exactly one of them.
inline TrackedGridState tracked_grid_step(const GridParams& p, TrackedGridState s, Rng& rng,
                                          TrackPolicy policy = TrackPolicy::PreferUnmatchedDimension) {
    const GridMove a = random_grid_move(p, s.position, rng);
    const GridMove b = random_grid_move(p, s.position, rng);
    const GridMove& m = keep_first_clone(s, a, b, policy, [&] { return rng.coin(); }) ? a : b;
    s.position[m.dim] += m.dir;
    return s;
}

/// Equilibrium of the reflected single-dimension biased chain (down 1/2 + 1/(8d-4),
/// up 1/2 - 1/(8d-4), holding at 0): π_j = 2/(4d-1) · ((4d-3)/(4d-1))^j.
struct BiasedDimEquilibrium {
    std::size_t d;

    double operator()(std::size_t j) const {
        const double dd = static_cast<double>(d);
        return 2.0 / (4.0 * dd - 1.0) * std::pow((4.0 * dd - 3.0) / (4.0 * dd - 1.0), static_cast<double>(j));
    }
    double down_probability() const { return 0.5 + 1.0 / (8.0 * static_cast<double>(d) - 4.0); }
    double up_probability() const { return 0.5 - 1.0 / (8.0 * static_cast<double>(d) - 4.0); }
};

inline BiasedDimEquilibrium biased_dim_equilibrium(std::size_t d) {
    require(d >= 1, ErrorKind::InvalidParams, "dimension must be >= 1");
    return {d};
}

}  // namespace cobra
