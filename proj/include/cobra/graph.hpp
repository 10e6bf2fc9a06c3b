#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cobra/error.hpp"

namespace cobra {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected connected graph in compressed adjacency form.
/// Neighbor lists are sorted and duplicate free.
class Graph {
public:
    Graph() = default;

    /// Builds from an undirected edge list. Rejects self-loops, parallel edges,
    /// out-of-range ids and disconnected input.
    Graph(std::size_t n, std::span<const Edge> edges, std::string name = {})
        : name_(std::move(name)) {
        require(n >= 1, ErrorKind::InvalidParams, "graph needs at least one vertex");
        require(n <= 0xFFFFFFFEULL, ErrorKind::InvalidParams, "too many vertices");
        std::vector<std::size_t> deg(n, 0);
        for (const auto& [u, v] : edges) {
            require(u < n && v < n, ErrorKind::InvalidParams,
                    "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
            require(u != v, ErrorKind::InvalidParams, "self-loop at " + std::to_string(u));
            ++deg[u];
            ++deg[v];
        }
        offsets_.assign(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
        adjacency_.resize(offsets_[n]);
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            adjacency_[fill[u]++] = v;
            adjacency_[fill[v]++] = u;
        }
        for (std::size_t v = 0; v < n; ++v) {
            auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
            auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
            std::sort(first, last);
            require(std::adjacent_find(first, last) == last, ErrorKind::InvalidParams,
                    "parallel edge at vertex " + std::to_string(v));
        }
        require(is_connected(), ErrorKind::Disconnected, "graph is not connected");
    }

    std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }
    /// Sum of degrees, i.e. vol(V).
    std::size_t volume() const noexcept { return adjacency_.size(); }

    std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {adjacency_.data() + offsets_[v], degree(v)};
    }

    bool has_edge(Vertex u, Vertex v) const noexcept {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    std::size_t max_degree() const noexcept {
        std::size_t best = 0;
        for (Vertex v = 0; v < num_vertices(); ++v) best = std::max(best, degree(v));
        return best;
    }

    std::size_t min_degree() const noexcept {
        std::size_t best = num_vertices() > 1 ? ~std::size_t{0} : 0;
        for (Vertex v = 0; v < num_vertices(); ++v) best = std::min(best, degree(v));
        return best;
    }

    /// True when every vertex has the same degree.
    bool is_regular() const noexcept { return min_degree() == max_degree(); }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(num_edges());
        for (Vertex u = 0; u < num_vertices(); ++u)
            for (Vertex v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

private:
    bool is_connected() const {
        const std::size_t n = num_vertices();
        std::vector<char> seen(n, 0);
        std::vector<Vertex> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n;
    }

    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
    std::string name_;
};

/// Point of the grid [0, side]^d.
struct GridCoord {
    std::vector<std::int64_t> coords;

    bool valid(std::size_t d, std::int64_t side) const noexcept {
        if (coords.size() != d) return false;
        return std::all_of(coords.begin(), coords.end(),
                           [side](std::int64_t c) { return c >= 0 && c <= side; });
    }
};

/// Row-major-in-reverse index: coordinate 0 varies fastest.
inline Vertex grid_index(const GridCoord& c, std::int64_t side) {
    std::uint64_t idx = 0;
    std::uint64_t stride = 1;
    for (auto x : c.coords) {
        idx += static_cast<std::uint64_t>(x) * stride;
        stride *= static_cast<std::uint64_t>(side + 1);
    }
    return static_cast<Vertex>(idx);
}

inline GridCoord grid_coord(Vertex v, std::size_t d, std::int64_t side) {
    GridCoord c;
    c.coords.resize(d);
    std::uint64_t rest = v;
    for (std::size_t i = 0; i < d; ++i) {
        c.coords[i] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(side + 1));
        rest /= static_cast<std::uint64_t>(side + 1);
    }
    return c;
}

}  // namespace cobra
