#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/graph.hpp"
#include "cobra/rng.hpp"

namespace cobra::gen {

inline Graph path(std::size_t n) {
    require(n >= 1, ErrorKind::InvalidParams, "path needs n >= 1");
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph(n, e, "path:" + std::to_string(n));
}

inline Graph cycle(std::size_t n) {
    require(n >= 3, ErrorKind::InvalidParams, "cycle needs n >= 3");
    std::vector<Edge> e;
    for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>((v + 1) % n));
    return Graph(n, e, "cycle:" + std::to_string(n));
}

/// Center 0, leaves 1..n-1.
inline Graph star(std::size_t n) {
    require(n >= 2, ErrorKind::InvalidParams, "star needs n >= 2");
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) e.emplace_back(0, v);
    return Graph(n, e, "star:" + std::to_string(n));
}

inline Graph complete(std::size_t n) {
    require(n >= 1, ErrorKind::InvalidParams, "complete graph needs n >= 1");
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, e, "complete:" + std::to_string(n));
}

/// The grid [0, side]^d: (side+1)^d vertices, coordinate 0 varies fastest.
inline Graph grid(std::size_t d, std::int64_t side) {
    require(d >= 1, ErrorKind::InvalidParams, "grid needs d >= 1");
    require(side >= 1, ErrorKind::InvalidParams, "grid needs side >= 1");
    const double count = std::pow(static_cast<double>(side + 1), static_cast<double>(d));
    require(count < 5e7, ErrorKind::InvalidParams, "grid too large");
    const auto n = static_cast<std::size_t>(std::llround(count));
    std::vector<Edge> e;
    e.reserve(n * d);
    std::uint64_t stride = 1;
    for (std::size_t dim = 0; dim < d; ++dim) {
        for (Vertex v = 0; v < n; ++v) {
            const auto c = (v / stride) % static_cast<std::uint64_t>(side + 1);
            if (c < static_cast<std::uint64_t>(side)) e.emplace_back(v, static_cast<Vertex>(v + stride));
        }
        stride *= static_cast<std::uint64_t>(side + 1);
    }
    return Graph(n, e, "grid:" + std::to_string(side) + ",d=" + std::to_string(d));
}

inline Graph hypercube(std::size_t dim) {
    require(dim >= 1 && dim <= 24, ErrorKind::InvalidParams, "hypercube dimension must be in [1, 24]");
    const std::size_t n = std::size_t{1} << dim;
    std::vector<Edge> e;
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t b = 0; b < dim; ++b) {
            Vertex w = v ^ (Vertex{1} << b);
            if (v < w) e.emplace_back(v, w);
        }
    return Graph(n, e, "hypercube:" + std::to_string(dim));
}

/// Complete k-ary tree of the given depth; children of v are k*v+1 .. k*v+k.
inline Graph kary_tree(std::size_t k, std::size_t depth) {
    require(k >= 1, ErrorKind::InvalidParams, "tree arity must be >= 1");
    std::size_t n = 1;
    std::size_t level = 1;
    for (std::size_t i = 0; i < depth; ++i) {
        level *= k;
        n += level;
        require(n < 50'000'000, ErrorKind::InvalidParams, "tree too large");
    }
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) e.emplace_back(static_cast<Vertex>((v - 1) / k), v);
    return Graph(n, e, "tree:" + std::to_string(k) + "," + std::to_string(depth));
}

/// Clique on ceil(2n/3) vertices with a path of floor(n/3) vertices hanging off clique vertex c-1.
inline Graph lollipop(std::size_t n) {
    require(n >= 3, ErrorKind::InvalidParams, "lollipop needs n >= 3");
    const std::size_t clique = (2 * n + 2) / 3;
    std::vector<Edge> e;
    for (Vertex u = 0; u < clique; ++u)
        for (Vertex v = u + 1; v < clique; ++v) e.emplace_back(u, v);
    for (Vertex v = static_cast<Vertex>(clique); v < n; ++v) e.emplace_back(v - 1, v);
    return Graph(n, e, "lollipop:" + std::to_string(n));
}

inline Graph petersen() {
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return Graph(10, e, "petersen");
}

inline constexpr int kRegularRetryBudget = 1000;

/// Uniform simple d-regular graph via the pairing model, restarting on loops,
/// multi-edges or a disconnected result.
inline Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
    require(d >= 1 && d < n, ErrorKind::InvalidParams, "random regular needs 1 <= d < n");
    require((n * d) % 2 == 0, ErrorKind::InvalidParams, "d*n must be even");
    Rng rng(seed);
    std::vector<Vertex> points(n * d);
    std::vector<Edge> e;
    std::vector<std::vector<Vertex>> adj(n);
    for (int attempt = 0; attempt < kRegularRetryBudget; ++attempt) {
        for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<Vertex>(i / d);
        for (std::size_t i = points.size(); i > 1; --i) std::swap(points[i - 1], points[rng.below(i)]);
        e.clear();
        for (auto& a : adj) a.clear();
        bool simple = true;
        for (std::size_t i = 0; i < points.size() && simple; i += 2) {
            Vertex u = points[i], v = points[i + 1];
            if (u == v) { simple = false; break; }
            for (Vertex w : adj[u])
                if (w == v) { simple = false; break; }
            adj[u].push_back(v);
            adj[v].push_back(u);
            e.emplace_back(u, v);
        }
        if (!simple) continue;
        try {
            return Graph(n, e,
                         "regular:" + std::to_string(n) + "," + std::to_string(d) + ",seed=" +
                             std::to_string(seed));
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::Disconnected) throw;
        }
    }
    fail(ErrorKind::GenerationFailed, "pairing model exceeded retry budget");
}

}  // namespace cobra::gen
