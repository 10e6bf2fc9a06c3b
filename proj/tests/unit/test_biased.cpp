#include <gtest/gtest.h>

#include <cmath>

#include "cobra/biased.hpp"
#include "cobra/generators.hpp"
#include "cobra/parallel.hpp"
#include "cobra/enumerate.hpp"

using namespace cobra;

TEST(Metropolis, TwoVertices) {
    const auto mc = build_metropolis_controller(gen::path(2), Vertex{1});
    EXPECT_DOUBLE_EQ(mc.p.chain(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(mc.p.chain(1, 0), 1.0);
    EXPECT_NEAR(exact_return_time(mc.p.chain, 1), 2.0, 1e-12);
}

TEST(Metropolis, PathTowardEnd) {
    // σ̂(0,{2}) = 1/2, σ̂(1,{2}) = 1: π^M ∝ (1/2, 2, 1)
    const auto mc = build_metropolis_controller(gen::path(3), Vertex{2});
    EXPECT_NEAR(mc.pi_m[0], 0.5 / 3.5, 1e-15);
    EXPECT_NEAR(mc.pi_m[1], 2.0 / 3.5, 1e-15);
    EXPECT_NEAR(mc.p.chain(1, 0), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(mc.p.chain(1, 2), 2.0 / 3.0, 1e-15);
    EXPECT_GE(mc.min_bias_slack, 0.0);
}

TEST(Metropolis, CycleOfFour) {
    const auto mc = build_metropolis_controller(gen::cycle(4), Vertex{0});
    validate(mc.m);
    validate(mc.p.chain);
    EXPECT_GE(mc.min_bias_slack, -kBoundTol);
    const auto pi = exact_stationary(mc.m);
    for (Vertex v = 0; v < 4; ++v) EXPECT_NEAR(pi[v], mc.pi_m[v], 1e-12);
    // target row is uniform
    EXPECT_NEAR(mc.p.chain(0, 1), 0.5, 1e-15);
    EXPECT_NEAR(mc.p.chain(0, 3), 0.5, 1e-15);
    // hitting times are finite and within d(x) times the return bound
    const auto h = exact_hitting(mc.p.chain, 0);
    const double r = inverse_bound(gen::cycle(4), 0).value;
    for (Vertex x = 0; x < 4; ++x) EXPECT_LE(h[x], 2 * r);
}

// Construction succeeds, M has the designed stationary law, P respects the inverse-degree
// floor, and return times of P equal 1/π and stay under the return bound: every connected
// graph with 2..6 vertices, every single target.
TEST(Metropolis, ExhaustiveProperties) {
    auto graphs = cobra::enumerate::connected_graphs_up_to(2, 6);
    graphs.push_back(gen::petersen());
    graphs.push_back(gen::lollipop(10));
    for (const auto& g : graphs) {
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            const auto mc = build_metropolis_controller(g, v);
            ASSERT_GE(mc.min_bias_slack, -kBoundTol) << g.name();
            const auto pim = exact_stationary(mc.m);
            for (Vertex x = 0; x < g.num_vertices(); ++x) EXPECT_NEAR(pim[x], mc.pi_m[x], 1e-10);
            EXPECT_LE(stationarity_residual(mc.p.chain, mc.p.stationary), 1e-10);
            const double ret = exact_return_time(mc.p.chain, v);
            EXPECT_NEAR(ret, 1.0 / mc.p.stationary[v], 1e-8 * ret);
            EXPECT_LE(ret, inverse_bound(g, v).value + 1e-9) << g.name() << " v=" << v;
        }
    }
}

TEST(Metropolis, SetTargets) {
    // π^M(S) is exactly the set bound and P keeps the inverse-degree floor. Dropping the
    // diagonal can lower the mass of S when a target row of M is lazy, so P's own mass is
    // not always above the bound for |S| > 1.
    bool lower_seen = false;
    for (const auto& g : cobra::enumerate::connected_graphs(5)) {
        const std::vector<Vertex> set{0, 3};
        const auto mc = build_metropolis_controller(g, set);
        EXPECT_GE(mc.min_bias_slack, -kBoundTol);
        EXPECT_NEAR(mc.pi_m[0] + mc.pi_m[3], inverse_set_bound(g, set).value, 1e-12);
        const bool lazy_target = mc.m(0, 0) > 0 || mc.m(3, 3) > 0;
        if (!lazy_target) {
            EXPECT_GE(mc.p.stationary_mass(set) + 1e-12, inverse_set_bound(g, set).value);
        }
        lower_seen |= mc.p.stationary_mass(set) < inverse_set_bound(g, set).value - 1e-9;
    }
    EXPECT_TRUE(lower_seen);
}

TEST(BiasedWalk, PathHittingMatchesSolve) {
    const auto mc = build_metropolis_controller(gen::path(3), Vertex{2});
    const double exact = exact_hitting(mc.p.chain, 2)[0];
    const ChainSampler sampler(mc.p.chain);
    const auto st = run_trials(TrialOptions{100000, 31, 10000, 1},
                               [&](Rng& rng, std::size_t) { return run_biased_walk(sampler, 0, 2, 10000, rng); });
    EXPECT_NEAR(st.mean, exact, 3 * st.std_error);
    Rng rng(1);
    EXPECT_EQ(run_biased_walk(sampler, 2, 2, 10, rng), Rounds{0});
}

TEST(EpsilonChain, RowsAndStationary) {
    const auto g = gen::cycle(6);
    std::vector<Vertex> choice(6);
    for (Vertex x = 0; x < 6; ++x) choice[x] = g.neighbors(x)[0];
    const auto c = epsilon_biased_chain(g, choice, 0.3);
    EXPECT_NEAR(c.chain(1, 0), 0.35 + 0.3, 1e-15);
    EXPECT_NEAR(c.chain(1, 2), 0.35, 1e-15);
    std::vector<Vertex> bad(6, 3);
    EXPECT_THROW(epsilon_biased_chain(g, bad, 0.3), Error);
}

TEST(Azar, StarCenter) {
    const std::vector<Vertex> s{0};
    for (double eps : {0.1, 0.3, 0.9}) EXPECT_NEAR(azar_bound(gen::star(32), s, eps).value, 0.5, 1e-15);
}

TEST(Azar, EpsilonNearOne) {
    // only Δ = 1 vertices keep weight as β -> 0
    const auto g = gen::path(5);
    const std::vector<Vertex> s{0};
    const double limit = 1.0 / (1.0 + 2.0);
    EXPECT_NEAR(azar_bound(g, s, 1 - 1e-12).value, limit, 1e-9);
    EXPECT_THROW(azar_bound(g, s, 1.0), Error);
    EXPECT_THROW(azar_bound(g, s, 0.0), Error);
}

TEST(Azar, BelowBestDeterministicController) {
    const std::vector<Vertex> s{0};
    const auto best = best_deterministic_controller(gen::cycle(6), s, 0.5);
    EXPECT_EQ(best.enumerated, 64u);
    EXPECT_GE(best.best_mass + 1e-9, azar_bound(gen::cycle(6), s, 0.5).value);
    // exhaustive small graphs, one- and two-vertex targets
    for (const auto& g : cobra::enumerate::connected_graphs_up_to(2, 5)) {
        for (Vertex a = 0; a < g.num_vertices(); ++a) {
            const std::vector<Vertex> one{a};
            EXPECT_GE(best_deterministic_controller(g, one, 0.4).best_mass + 1e-9, azar_bound(g, one, 0.4).value);
        }
        const std::vector<Vertex> two{0, static_cast<Vertex>(g.num_vertices() - 1)};
        if (g.num_vertices() > 2) {
            EXPECT_GE(best_deterministic_controller(g, two, 0.4).best_mass + 1e-9, azar_bound(g, two, 0.4).value);
        }
    }
}

TEST(InverseBound, TwoVertices) {
    const auto r = inverse_bound(gen::path(2), 1);
    EXPECT_DOUBLE_EQ(r.value, 2.0);
    EXPECT_DOUBLE_EQ(r.extra("relaxed"), 2.0);
}

TEST(InverseBound, RelaxationIsLarger) {
    auto graphs = cobra::enumerate::connected_graphs_up_to(2, 6);
    graphs.push_back(gen::petersen());
    for (const auto& g : graphs)
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            const auto r = inverse_bound(g, v);
            EXPECT_GE(r.extra("relaxed") + 1e-12, r.value);
            EXPECT_GT(r.value, 0.0);
        }
}

TEST(RegularBound, DeltaThreeHundred) {
    const auto b = regular_bound(100, 3);
    EXPECT_NEAR(b.L, std::log2(34.0), 1e-12);
    EXPECT_NEAR(b.beta, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(b.return_bound, 1 + std::pow(100.0, 2.0 / 3.0), 1e-9);
    EXPECT_NEAR(b.C, 3.0 / (2.0 * 2.0 / 3.0 - 1.0), 1e-12);
    EXPECT_TRUE(b.beta_claim_holds);
    EXPECT_THROW(regular_bound(100, 2), Error);
}

TEST(RegularBound, LevelCountIdentity) {
    for (std::size_t n : {10, 100, 1000, 1000000})
        for (std::size_t d = 3; d <= 10; ++d) {
            const auto b = regular_bound(n, d);
            const double dd = double(d);
            EXPECT_NEAR(dd * (std::pow(dd - 1, b.L) - 1) / (dd - 2), double(n - 1), 1e-6 * double(n));
        }
}

TEST(RegularBound, PowerClaimDependsOnSize) {
    // β^L < n^{-1/δ} holds for δ = 3 at moderate n but fails for larger δ at small n
    EXPECT_TRUE(regular_bound(1000000, 3).beta_claim_holds);
    EXPECT_FALSE(regular_bound(10, 10).beta_claim_holds);
    EXPECT_NEAR(regular_bound(10, 10).beta_pow_L, 0.904, 1e-3);
    EXPECT_NEAR(regular_bound(10, 10).n_pow, 0.794, 1e-3);
}

TEST(PathSum, SameVertexIsZero) {
    const auto r = path_sum_bound(gen::petersen(), 4, 4);
    EXPECT_DOUBLE_EQ(r.value, 0.0);
    EXPECT_DOUBLE_EQ(r.extra("rearranged"), 0.0);
}

TEST(PathSum, FormsAreOrdered) {
    for (const auto& g : cobra::enumerate::connected_graphs_up_to(2, 6))
        for (Vertex u = 0; u < g.num_vertices(); ++u)
            for (Vertex v = 0; v < g.num_vertices(); ++v) {
                if (u == v) continue;
                const auto r = path_sum_bound(g, u, v);
                EXPECT_GE(r.extra("relaxed") + 1e-9, r.value);
                EXPECT_GE(r.extra("rearranged") + 1e-9, r.extra("relaxed"));
                EXPECT_LE(r.extra("path_degree_sum"), 3.0 * double(g.num_vertices()));
            }
}

TEST(PathSum, AboveMetropolisHitting) {
    for (const auto& g : cobra::enumerate::connected_graphs_up_to(2, 7)) {
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            const auto mc = build_metropolis_controller(g, v);
            const auto h = exact_hitting(mc.p.chain, v);
            for (Vertex u = 0; u < g.num_vertices(); ++u)
                ASSERT_LE(h[u], path_sum_bound(g, u, v).value + 1e-9) << g.name() << " " << u << "->" << v;
        }
    }
}

TEST(Activation, Values) {
    EXPECT_DOUBLE_EQ(activation_probability(1).p_star, 1.0);
    EXPECT_DOUBLE_EQ(activation_probability(2).p_star, 0.75);
    for (std::size_t d = 1; d <= 1000000; d = d * 3 + 1) {
        const auto a = activation_probability(d);
        const double dd = double(d);
        EXPECT_GE(a.p_star + 1e-15, 2 / dd - 1 / (dd * dd));
    }
    EXPECT_THROW(activation_probability(0), Error);
}

TEST(BoundReport, Describe) {
    const std::vector<Vertex> s{0};
    const auto r = azar_bound(gen::star(4), s, 0.25);
    EXPECT_EQ(r.describe().substr(0, 15), "graph=star:4;n=");
}
