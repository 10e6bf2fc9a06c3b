#include <gtest/gtest.h>

#include "cobra/generators.hpp"
#include "cobra/oracle.hpp"
#include "cobra/walt.hpp"
#include "cobra/enumerate.hpp"

using namespace cobra;

namespace {
Subset bits(std::initializer_list<Vertex> vs) { return subset_of(std::vector<Vertex>(vs)); }
}  // namespace

TEST(Transition, PathMiddle) {
    const auto d = cobra_transition_distribution(gen::path(3), bits({1}), 2);
    ASSERT_EQ(d.size(), 3u);
    EXPECT_NEAR(d.at(bits({0})), 0.25, 1e-15);
    EXPECT_NEAR(d.at(bits({2})), 0.25, 1e-15);
    EXPECT_NEAR(d.at(bits({0, 2})), 0.5, 1e-15);
}

TEST(Transition, Triangle) {
    const auto d = cobra_transition_distribution(gen::complete(3), bits({0}), 2);
    EXPECT_NEAR(d.at(bits({1})), 0.25, 1e-15);
    EXPECT_NEAR(d.at(bits({2})), 0.25, 1e-15);
    EXPECT_NEAR(d.at(bits({1, 2})), 0.5, 1e-15);
}

TEST(Transition, KOneIsProductOfWalkSteps) {
    // k = 1 from {0, 2} on C4: each vertex picks 1 or 3 independently
    const auto d = cobra_transition_distribution(gen::cycle(4), bits({0, 2}), 1);
    EXPECT_NEAR(d.at(bits({1})), 0.25, 1e-15);
    EXPECT_NEAR(d.at(bits({3})), 0.25, 1e-15);
    EXPECT_NEAR(d.at(bits({1, 3})), 0.5, 1e-15);
}

TEST(Transition, ConvolutionMatchesEnumeration) {
    auto graphs = cobra::enumerate::connected_graphs_up_to(2, 5);
    graphs.push_back(gen::petersen());
    for (const auto& g : graphs) {
        const Subset full = (Subset{1} << g.num_vertices()) - 1;
        for (std::size_t k = 1; k <= 3; ++k) {
            for (Subset s = 1; s <= full; ++s) {
                double draws = 1;
                for (Vertex v = 0; v < g.num_vertices(); ++v)
                    if (s >> v & 1U) draws *= std::pow(double(g.degree(v)), double(k));
                if (draws > 1e4) continue;
                const auto a = cobra_transition_distribution(g, s, k);
                const auto b = cobra_transition_enumerate(g, s, k);
                ASSERT_EQ(a.size(), b.size());
                double total = 0;
                for (const auto& [x, p] : a) {
                    EXPECT_NEAR(p, b.at(x), 1e-12);
                    total += p;
                }
                EXPECT_NEAR(total, 1.0, 1e-12);
            }
        }
    }
}

TEST(CobraHitting, FrozenValues) {
    EXPECT_NEAR(exact_cobra_hitting(gen::path(3), 0, 2, 2), 8.0 / 3.0, 1e-12);
    EXPECT_DOUBLE_EQ(exact_cobra_hitting(gen::path(3), 1, 1, 2), 0.0);
    EXPECT_NEAR(exact_cobra_hitting(gen::path(2), 0, 1, 2), 1.0, 1e-12);
    // K3, 0 -> 1, k = 2: each round misses 1 with probability 1/4
    EXPECT_NEAR(exact_cobra_hitting(gen::complete(3), 0, 1, 2), 4.0 / 3.0, 1e-12);
}

TEST(CobraHitting, KOneEqualsWalkHitting) {
    auto graphs = cobra::enumerate::connected_graphs_up_to(2, 6);
    graphs.push_back(gen::path(8));
    graphs.push_back(gen::cycle(8));
    for (const auto& g : graphs) {
        const auto srw = srw_chain(g);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            const auto h = exact_hitting(srw, v);
            for (Vertex u = 0; u < g.num_vertices(); ++u)
                EXPECT_NEAR(exact_cobra_hitting(g, u, v, 1), h[u], 1e-8 * std::max(1.0, h[u])) << g.name();
        }
    }
}

TEST(CobraHitting, MoreBranchesNeverSlower) {
    for (const auto& g : cobra::enumerate::connected_graphs(5))
        for (Vertex v = 1; v < 5; ++v)
            EXPECT_LE(exact_cobra_hitting(g, 0, v, 2), exact_cobra_hitting(g, 0, v, 1) + 1e-9);
}

TEST(CobraHitting, TooLarge) {
    try {
        exact_cobra_hitting(gen::complete(13), 0, 1, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
    }
}

TEST(CobraCover, FrozenValues) {
    EXPECT_NEAR(exact_cobra_cover(gen::complete(3), 0, 2), 5.0 / 3.0, 1e-12);
    EXPECT_NEAR(exact_cobra_cover(gen::path(2), 0, 1), 1.0, 1e-12);
    EXPECT_NEAR(exact_cobra_cover(gen::path(2), 0, 3), 1.0, 1e-12);
    Graph k1(1, std::span<const Edge>{});
    EXPECT_DOUBLE_EQ(exact_cobra_cover(k1, 0, 2), 0.0);
    // P3 from an end covers when the far end is first hit
    EXPECT_NEAR(exact_cobra_cover(gen::path(3), 0, 2), 8.0 / 3.0, 1e-12);
    EXPECT_THROW(exact_cobra_cover(gen::cycle(9), 0, 2), Error);
}

TEST(CobraCover, KOneMatchesWalkCoverOnTriangle) {
    // SRW cover of K3: one step to a new vertex, then geometric(1/2)
    EXPECT_NEAR(exact_cobra_cover(gen::complete(3), 0, 1), 3.0, 1e-12);
}

TEST(CobraCover, AtLeastEveryHittingTime) {
    for (const auto& g : cobra::enumerate::connected_graphs(5)) {
        const double c = exact_cobra_cover(g, 0, 2);
        for (Vertex v = 0; v < 5; ++v) EXPECT_GE(c + 1e-9, exact_cobra_hitting(g, 0, v, 2));
    }
}

TEST(ExactHitting, PathWalk) {
    const auto h = exact_hitting(srw_chain(gen::path(3)), 2);
    EXPECT_NEAR(h[0], 4.0, 1e-12);
    EXPECT_NEAR(h[1], 3.0, 1e-12);
    EXPECT_EQ(h[2], 0.0);
}

TEST(ExactHitting, TwoStateGeometric) {
    FiniteChain c{DenseMatrix(2, 2)};
    c.transition(0, 0) = 0.7;
    c.transition(0, 1) = 0.3;
    c.transition(1, 1) = 1.0;
    EXPECT_NEAR(exact_hitting(c, 1)[0], 1.0 / 0.3, 1e-12);
}

TEST(ExactHitting, Unreachable) {
    FiniteChain c{DenseMatrix::identity(2)};
    try {
        exact_hitting(c, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Unreachable);
    }
}

TEST(Stationary, WalkIsDegreeProportional) {
    auto graphs = cobra::enumerate::connected_graphs_up_to(2, 6);
    graphs.push_back(gen::petersen());
    graphs.push_back(gen::lollipop(12));
    for (const auto& g : graphs) {
        const auto c = srw_chain(g);
        const auto pi = exact_stationary(c);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            EXPECT_NEAR(pi[v], double(g.degree(v)) / double(g.volume()), 1e-12);
            EXPECT_NEAR(exact_return_time(c, v), 1.0 / pi[v], 1e-8);
        }
    }
}

TEST(Stationary, UniformChain) {
    FiniteChain c{DenseMatrix(4, 4, 0.25)};
    for (double p : exact_stationary(c)) EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(Stationary, Reducible) {
    FiniteChain c{DenseMatrix::identity(3)};
    try {
        exact_stationary(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Reducible);
    }
}

namespace {

// Pair chain of two priority-ordered pebbles, built state by state.
FiniteChain pair_chain(const Graph& g, bool lazy) {
    const std::size_t n = g.num_vertices();
    FiniteChain c{DenseMatrix(n * n, n * n)};
    const double keep = lazy ? 0.5 : 0.0;
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex j = 0; j < n; ++j) {
            const std::size_t s = i * n + j;
            c.transition(s, s) += keep;
            const double di = double(g.degree(i)), dj = double(g.degree(j));
            for (Vertex a : g.neighbors(i)) {
                if (i == j) {
                    c.transition(s, a * n + a) += (1 - keep) * 0.5 / di;
                    for (Vertex b : g.neighbors(j)) c.transition(s, a * n + b) += (1 - keep) * 0.5 / (di * dj);
                } else {
                    for (Vertex b : g.neighbors(j)) c.transition(s, a * n + b) += (1 - keep) / (di * dj);
                }
            }
        }
    }
    return c;
}

}  // namespace

TEST(Stationary, PairChainOnRegularGraphs) {
    // non-bipartite regular graphs give an irreducible pair chain
    for (const auto& g : {gen::complete(4), gen::cycle(5), gen::petersen()}) {
        const auto c = pair_chain(g, true);
        validate(c);
        const auto pi = exact_stationary(c);
        const auto want = tensor_stationary(g.num_vertices());
        for (std::size_t s = 0; s < pi.size(); ++s) EXPECT_NEAR(pi[s], want[s], 1e-12);
    }
}

TEST(Stationary, PairChainOnBipartiteCycleIsReducible) {
    // on C4 (and C6) the parity of i - j never changes
    EXPECT_FALSE(is_irreducible(pair_chain(gen::cycle(4), true)));
    EXPECT_FALSE(is_irreducible(pair_chain(gen::cycle(6), true)));
    // the closed-form law is still invariant
    const auto c = pair_chain(gen::cycle(4), true);
    EXPECT_LT(stationarity_residual(c, tensor_stationary(4)), 1e-14);
}

TEST(Stationary, PairChainColocatedStep) {
    // from (u,u), one non-lazy step: (w,w) with (d+1)/(2d²), (w,x) w != x with 1/(2d²)
    const auto g = gen::petersen();
    const auto c = pair_chain(g, false);
    const std::size_t n = 10;
    const double d = 3;
    const auto nb = g.neighbors(0);
    EXPECT_NEAR(c(0, nb[0] * n + nb[0]), (d + 1) / (2 * d * d), 1e-15);
    EXPECT_NEAR(c(0, nb[0] * n + nb[1]), 1 / (2 * d * d), 1e-15);
}
