#include <gtest/gtest.h>

#include <map>

#include "cobra/grid_tracker.hpp"

using namespace cobra;

namespace {

using Pos = std::vector<std::int64_t>;
using Law = std::map<Pos, double>;

// Exact one-step law of the tracked pebble at an interior point of the 2-d grid, by
// enumerating the 16 equally likely clone pairs and splitting fair tie-breaks.
Law exact_step(const Pos& pos, const Pos& tgt, TrackPolicy policy) {
    const GridMove moves[4] = {{0, 1}, {0, -1}, {1, 1}, {1, -1}};
    auto z = [&](const Pos& p, std::size_t i) { return std::llabs(p[i] - tgt[i]); };
    Law out;
    for (const auto& a : moves) {
        for (const auto& b : moves) {
            Pos pa = pos, pb = pos;
            pa[a.dim] += a.dir;
            pb[b.dim] += b.dir;
            const bool ca = z(pa, a.dim) < z(pos, a.dim), cb = z(pb, b.dim) < z(pos, b.dim);
            auto keep = [&](const Pos& p, double w) { out[p] += w / 16.0; };
            auto closer_or_coin = [&] {
                if (ca && !cb) keep(pa, 1);
                else if (cb && !ca) keep(pb, 1);
                else {
                    keep(pa, 0.5);
                    keep(pb, 0.5);
                }
            };
            if (a.dim == b.dim) {
                closer_or_coin();
                continue;
            }
            const bool za = z(pos, a.dim) == 0, zb = z(pos, b.dim) == 0;
            if (za && zb) {
                keep(pa, 0.5);
                keep(pb, 0.5);
            } else if (!za && !zb) {
                closer_or_coin();
            } else {
                const Pos& unmatched = za ? pb : pa;
                const Pos& matched = za ? pa : pb;
                const bool unmatched_closer = za ? cb : ca;
                keep(policy == TrackPolicy::PreferUnmatchedDimension || unmatched_closer ? unmatched : matched, 1);
            }
        }
    }
    return out;
}

std::map<std::int64_t, double> exact_two_step_change(const Pos& pos, const Pos& tgt, TrackPolicy policy) {
    auto dist = [&](const Pos& p) { return std::llabs(p[0] - tgt[0]) + std::llabs(p[1] - tgt[1]); };
    std::map<std::int64_t, double> out;
    for (const auto& [p, w] : exact_step(pos, tgt, policy))
        for (const auto& [q, w2] : exact_step(p, tgt, policy)) out[dist(q) - dist(pos)] += w * w2;
    return out;
}

std::map<std::int64_t, double> sampled_two_step_change(const Pos& pos, const Pos& tgt, TrackPolicy policy, int samples,
                                                       std::uint64_t seed) {
    const GridParams gp{2, 500};
    Rng rng(seed);
    std::map<std::int64_t, double> out;
    TrackedGridState start{pos, tgt};
    for (int i = 0; i < samples; ++i) {
        auto s = tracked_grid_step(gp, start, rng, policy);
        s = tracked_grid_step(gp, s, rng, policy);
        out[s.distance() - start.distance()] += 1.0 / samples;
    }
    return out;
}

}  // namespace

TEST(Tracker, AlignedDriftExactValues) {
    const Pos tgt{250, 250}, pos{250, 254};
    const auto leave = exact_two_step_change(pos, tgt, TrackPolicy::PreferLeavingAlignment);
    EXPECT_NEAR(leave.at(2), 41.0 / 256, 1e-15);
    EXPECT_NEAR(leave.at(-2), 49.0 / 256, 1e-15);
    const auto stay = exact_two_step_change(pos, tgt, TrackPolicy::PreferUnmatchedDimension);
    EXPECT_NEAR(stay.at(2), 61.0 / 256, 1e-15);
    EXPECT_NEAR(stay.at(-2), 49.0 / 256, 1e-15);
}

TEST(Tracker, OffAxisDriftExactValues) {
    const Pos tgt{250, 250}, pos{253, 254};
    for (auto policy : {TrackPolicy::PreferLeavingAlignment, TrackPolicy::PreferUnmatchedDimension}) {
        const auto law = exact_two_step_change(pos, tgt, policy);
        EXPECT_NEAR(law.at(2), 1.0 / 16, 1e-15);
        EXPECT_NEAR(law.at(-2), 9.0 / 16, 1e-15);
    }
}

TEST(Tracker, SamplerMatchesEnumeration) {
    const Pos tgt{250, 250};
    for (const Pos& pos : {Pos{250, 254}, Pos{253, 254}, Pos{250, 251}, Pos{251, 250}}) {
        for (auto policy : {TrackPolicy::PreferLeavingAlignment, TrackPolicy::PreferUnmatchedDimension}) {
            const auto want = exact_two_step_change(pos, tgt, policy);
            const auto got = sampled_two_step_change(pos, tgt, policy, 200000, 99);
            for (const auto& [k, p] : want) EXPECT_NEAR(got.count(k) ? got.at(k) : 0.0, p, 0.005) << k;
            for (const auto& [k, p] : got) EXPECT_TRUE(want.count(k)) << k;
        }
    }
}

TEST(Tracker, BoundaryMovesStayInside) {
    const GridParams gp{2, 3};
    Rng rng(1);
    TrackedGridState s{{0, 0}, {3, 3}};
    for (int i = 0; i < 10000; ++i) {
        s = tracked_grid_step(gp, s, rng);
        ASSERT_NO_THROW(validate(gp, s));
    }
}

TEST(Tracker, StepChangesDistanceByOne) {
    const GridParams gp{3, 10};
    Rng rng(2);
    TrackedGridState s{{5, 5, 5}, {2, 7, 5}};
    for (int i = 0; i < 10000; ++i) {
        const auto next = tracked_grid_step(gp, s, rng);
        ASSERT_EQ(std::llabs(next.distance() - s.distance()), 1);
        s = next;
    }
}

TEST(Tracker, InvalidState) {
    EXPECT_THROW(validate(GridParams{2, 3}, TrackedGridState{{0, 4}, {0, 0}}), Error);
    EXPECT_THROW(validate(GridParams{2, 3}, TrackedGridState{{0}, {0, 0}}), Error);
}

TEST(BiasedDim, EquilibriumIsStationary) {
    for (std::size_t d : {1, 2, 3, 5}) {
        const auto eq = biased_dim_equilibrium(d);
        EXPECT_NEAR(eq.down_probability() + eq.up_probability(), 1.0, 1e-15);
        double total = 0;
        for (std::size_t j = 0; j < 2000; ++j) total += eq(j);
        EXPECT_NEAR(total, 1.0, 1e-12);
        // balance at 0 (holds with the down probability) and in the bulk
        EXPECT_NEAR(eq(0), eq(0) * eq.down_probability() + eq(1) * eq.down_probability(), 1e-15);
        for (std::size_t j = 1; j < 20; ++j)
            EXPECT_NEAR(eq(j), eq(j - 1) * eq.up_probability() + eq(j + 1) * eq.down_probability(), 1e-15);
    }
}
