#pragma once

// Connected graphs up to isomorphism, grown one vertex at a time. Every connected graph has
// a vertex whose removal keeps it connected, so extending each (n-1)-vertex representative
// by a vertex with every nonempty neighborhood reaches every class.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cobra/error.hpp"
#include "cobra/graph.hpp"

namespace cobra::enumerate {

using AdjBits = std::vector<std::uint32_t>;  // row masks

inline std::uint64_t encode(const AdjBits& adj, const std::vector<int>& perm) {
    // perm[new] = old; upper triangle in row-major order
    const int n = static_cast<int>(adj.size());
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            code = (code << 1) | ((adj[perm[i]] >> perm[j]) & 1U);
    return code;
}

/// Max encoding over orderings that list vertices by nondecreasing degree.
inline std::uint64_t canonical(const AdjBits& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = __builtin_popcount(adj[v]);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return deg[a] < deg[b] || (deg[a] == deg[b] && a < b); });
    // permute within runs of equal degree
    std::vector<std::pair<int, int>> runs;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && deg[perm[j]] == deg[perm[i]]) ++j;
        runs.emplace_back(i, j);
        i = j;
    }
    std::uint64_t best = 0;
    bool first = true;
    auto rec = [&](auto&& self, std::size_t r) -> void {
        if (r == runs.size()) {
            const auto c = encode(adj, perm);
            if (first || c > best) best = c;
            first = false;
            return;
        }
        auto b = perm.begin() + runs[r].first, e = perm.begin() + runs[r].second;
        std::sort(b, e);
        do {
            self(self, r + 1);
        } while (std::next_permutation(b, e));
    };
    rec(rec, 0);
    return best;
}

inline bool connected(const AdjBits& adj) {
    const std::uint32_t full = (1U << adj.size()) - 1;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[__builtin_ctz(f)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == full;
}

inline cobra::Graph to_graph(const AdjBits& adj, const std::string& name) {
    std::vector<cobra::Edge> edges;
    for (std::uint32_t i = 0; i < adj.size(); ++i)
        for (std::uint32_t j = i + 1; j < adj.size(); ++j)
            if (adj[i] >> j & 1U) edges.emplace_back(i, j);
    return cobra::Graph(adj.size(), edges, name);
}

inline constexpr std::size_t kEnumerationLimit = 8;

inline std::vector<AdjBits> connected_adjacency(std::size_t n) {
    cobra::require(n <= kEnumerationLimit, cobra::ErrorKind::TooLarge, "graph enumeration supports n <= 8");
    std::vector<AdjBits> level{AdjBits{0}};
    for (std::size_t m = 2; m <= n; ++m) {
        std::set<std::uint64_t> seen;
        std::vector<AdjBits> next;
        for (const auto& base : level) {
            for (std::uint32_t nb = 1; nb < (1U << (m - 1)); ++nb) {
                AdjBits adj = base;
                adj.push_back(nb);
                for (std::uint32_t v = 0; v + 1 < m; ++v)
                    if (nb >> v & 1U) adj[v] |= 1U << (m - 1);
                if (seen.insert(canonical(adj)).second) next.push_back(adj);
            }
        }
        level.swap(next);
    }
    return n >= 1 ? level : std::vector<AdjBits>{};
}

/// All connected graphs on n vertices, one per isomorphism class, named "conn{n}_{i}".
inline std::vector<cobra::Graph> connected_graphs(std::size_t n) {
    std::vector<cobra::Graph> out;
    const auto reps = connected_adjacency(n);
    for (std::size_t i = 0; i < reps.size(); ++i)
        out.push_back(to_graph(reps[i], "conn" + std::to_string(n) + "_" + std::to_string(i)));
    return out;
}

inline std::vector<cobra::Graph> connected_graphs_up_to(std::size_t lo, std::size_t hi) {
    std::vector<cobra::Graph> out;
    for (std::size_t n = lo; n <= hi; ++n) {
        auto gs = connected_graphs(n);
        out.insert(out.end(), gs.begin(), gs.end());
    }
    return out;
}

}  // namespace cobra::enumerate
