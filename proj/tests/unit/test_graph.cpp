#include <gtest/gtest.h>

#include <sstream>

#include "cobra/generators.hpp"
#include "cobra/graph.hpp"
#include "cobra/io.hpp"
#include "cobra/enumerate.hpp"

using namespace cobra;

TEST(Graph, RejectsBadInput) {
    std::vector<Edge> loop{{0, 0}};
    EXPECT_THROW(Graph(2, loop), Error);
    std::vector<Edge> par{{0, 1}, {1, 0}};
    EXPECT_THROW(Graph(2, par), Error);
    std::vector<Edge> range{{0, 5}};
    EXPECT_THROW(Graph(2, range), Error);
    std::vector<Edge> split{{0, 1}, {2, 3}};
    try {
        Graph(4, split);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Disconnected);
    }
}

TEST(Graph, SingleVertex) {
    Graph g(1, std::span<const Edge>{});
    EXPECT_EQ(g.num_vertices(), 1u);
    EXPECT_EQ(g.num_edges(), 0u);
}

TEST(Generators, Sizes) {
    EXPECT_EQ(gen::path(8).num_edges(), 7u);
    EXPECT_EQ(gen::cycle(8).num_edges(), 8u);
    EXPECT_TRUE(gen::cycle(8).is_regular());
    EXPECT_EQ(gen::star(16).degree(0), 15u);
    EXPECT_EQ(gen::complete(5).num_edges(), 10u);
    EXPECT_EQ(gen::hypercube(4).num_vertices(), 16u);
    EXPECT_TRUE(gen::hypercube(4).is_regular());
    const auto grid = gen::grid(2, 8);
    EXPECT_EQ(grid.num_vertices(), 81u);
    EXPECT_EQ(grid.num_edges(), 2u * 8u * 9u);
    const auto pet = gen::petersen();
    EXPECT_EQ(pet.num_vertices(), 10u);
    EXPECT_TRUE(pet.is_regular());
    EXPECT_EQ(pet.degree(0), 3u);
    const auto tree = gen::kary_tree(2, 3);
    EXPECT_EQ(tree.num_vertices(), 15u);
    EXPECT_EQ(tree.num_edges(), 14u);
}

TEST(Generators, Lollipop) {
    const auto g = gen::lollipop(32);
    EXPECT_EQ(g.num_vertices(), 32u);
    // clique of 22 plus a 10-vertex tail
    EXPECT_EQ(g.num_edges(), 22u * 21u / 2u + 10u);
    EXPECT_EQ(g.degree(31), 1u);
}

TEST(Generators, RandomRegularIsSeededAndRegular) {
    const auto a = gen::random_regular(64, 3, 7);
    const auto b = gen::random_regular(64, 3, 7);
    EXPECT_TRUE(a.is_regular());
    EXPECT_EQ(a.degree(0), 3u);
    EXPECT_EQ(a.edges(), b.edges());
    EXPECT_THROW(gen::random_regular(5, 3, 1), Error);  // n*d odd
}

TEST(GridIndex, RoundTrip) {
    for (Vertex v = 0; v < 27; ++v) EXPECT_EQ(grid_index(grid_coord(v, 3, 2), 2), v);
    const auto c = grid_coord(5, 2, 3);  // side 3 -> 4 per axis
    EXPECT_EQ(c.coords[0], 1);
    EXPECT_EQ(c.coords[1], 1);
}

TEST(Io, EdgeListRoundTrip) {
    const auto g = gen::petersen();
    std::stringstream ss;
    write_edge_list(ss, g);
    const auto h = read_edge_list(ss);
    EXPECT_EQ(h.edges(), g.edges());
}

TEST(Io, EdgeListErrors) {
    std::stringstream bad("3 2\n0 1\n");
    EXPECT_THROW(read_edge_list(bad), Error);
    std::stringstream junk("2 1\n0 1\nextra\n");
    EXPECT_THROW(read_edge_list(junk), Error);
}

TEST(Io, GraphSpecs) {
    EXPECT_EQ(make_graph("path:5").num_vertices(), 5u);
    EXPECT_EQ(make_graph("cycle:8").num_edges(), 8u);
    EXPECT_EQ(make_graph("star:16").num_vertices(), 16u);
    EXPECT_EQ(make_graph("complete:4").num_edges(), 6u);
    EXPECT_EQ(make_graph("hypercube:3").num_vertices(), 8u);
    EXPECT_EQ(make_graph("petersen").num_vertices(), 10u);
    EXPECT_EQ(make_graph("grid2d:8").num_vertices(), 81u);
    EXPECT_EQ(make_graph("grid:3,d=3").num_vertices(), 64u);
    EXPECT_EQ(make_graph("random-3-regular:64").edges(), gen::random_regular(64, 3, 7).edges());
    EXPECT_EQ(make_graph("regular:20,4,seed=3").degree(5), 4u);
    EXPECT_EQ(make_graph("lollipop:32").num_vertices(), 32u);
    EXPECT_EQ(make_graph("tree:2,3").num_vertices(), 15u);
    EXPECT_THROW(make_graph("nonsense:3"), Error);
    EXPECT_THROW(make_graph("path:x"), Error);
}

TEST(GraphEnumeration, KnownCounts) {
    const std::size_t expected[] = {0, 1, 1, 2, 6, 21, 112, 853};
    for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(cobra::enumerate::connected_graphs(n).size(), expected[n]) << n;
}
